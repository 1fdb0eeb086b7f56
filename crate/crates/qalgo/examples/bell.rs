//! Bell pair: amplitudes, entanglement across the cut, and seeded sampling.

use qalgo::qstate::schmidt_rank;
use qalgo::{basis_state, measure, simulate, Circuit};
use rand::SeedableRng;

fn main() -> qalgo::Result<()> {
    let mut c = Circuit::new(2);
    c.h(0)?.cx(0, 1)?;
    let s = simulate(&c, &basis_state(2, 0)?)?;
    for (x, a) in s.amplitudes().iter().enumerate() {
        println!("|{x:02b}⟩  {a:.4}");
    }
    println!("schmidt rank across the cut: {}", schmidt_rank(&s, &[0], 1e-8)?);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let first = measure(&s, &[0], &mut rng)?;
    let second = measure(&first.post_state, &[1], &mut rng)?;
    println!("qubit 0 reads {}, then qubit 1 reads {}", first.outcome, second.outcome);

    c.measure(&[0, 1])?;
    let counts = qalgo::run(&c, 1000, 42)?;
    for (x, n) in counts.sorted_entries() {
        println!("{x:02b}: {n}");
    }
    Ok(())
}
