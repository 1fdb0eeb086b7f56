//! Deutsch and Deutsch–Jozsa next to the randomized classical test.

use qalgo::algorithms::{deutsch, deutsch_jozsa, dj_classical_randomized};
use qalgo::oracles::{synth_bit_oracle, TruthTable};

fn main() -> qalgo::Result<()> {
    for table in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        let f = TruthTable::new(1, 1, table.to_vec())?;
        println!("Deutsch f = {table:?}: {}", deutsch(&f, false)?.answer);
    }

    let ones = [0b001, 0b011, 0b110, 0b111];
    let f = TruthTable::from_fn(3, 1, |x| ones.contains(&x) as u64)?;
    let r = deutsch_jozsa(&synth_bit_oracle(&f)?, 3)?;
    println!("DJ on ones at {ones:?}: {} (p(000) = {:.3})", r.answer, r.distribution().probability(0));

    let v = dj_classical_randomized(|x| f.eval(x), 3, 4, 7)?;
    println!("classical, {} queries: {} with confidence {:.3}", v.queries, v.kind, v.confidence);
    Ok(())
}
