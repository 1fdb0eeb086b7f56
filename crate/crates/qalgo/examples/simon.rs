//! Simon's algorithm on the two-to-one function hiding s = 110.

use qalgo::algorithms::simon;
use qalgo::algorithms::simon::simon_round_distribution;
use qalgo::oracles::{synth_multi_oracle, TruthTable};

fn main() -> qalgo::Result<()> {
    let table = [0b000, 0b001, 0b010, 0b100, 0b010, 0b100, 0b000, 0b001];
    let f = TruthTable::new(3, 3, table.to_vec())?;
    let oracle = synth_multi_oracle(&f)?;
    println!("oracle: {} multi-controlled X gates on {} qubits", oracle.len(), oracle.num_qubits());

    let round = simon_round_distribution(&oracle, 3)?;
    for (x, p) in round.sorted_entries() {
        println!("  round reads {x:03b} with p = {p:.3}");
    }
    let r = simon(&oracle, 3, |x| f.eval(x), 10, 3)?;
    match r.answer {
        Some(s) => println!("s = {s:03b} after {} quantum rounds", r.rounds_used),
        None => println!("no answer after {} rounds", r.rounds_used),
    }
    Ok(())
}
