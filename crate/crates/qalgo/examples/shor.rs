//! Shor's algorithm for N = 21: one quantum round in detail, then the full driver.

use qalgo::algorithms::shor::{shor_factor, shor_factor_with_base, shor_quantum_part, ShorMode};
use qalgo::numtheory::best_order_candidate;

fn main() -> qalgo::Result<()> {
    let round = shor_quantum_part(2, 21, 5)?;
    let o = &round.answer;
    println!("q = {}, second register read {}, first register read {}", o.registers.q, o.z, o.ell);
    println!("largest peaks of p(ℓ):");
    for (ell, p) in o.conditional.sorted_entries().into_iter().take(6) {
        let r = best_order_candidate(ell, o.registers.q, 21u64)?;
        println!("  ℓ = {ell:3}  p = {p:.4}  order candidate {r:?}");
    }

    // a random base often shares a factor with 21; base 2 always needs the quantum part
    for seed in 0..4 {
        let r = shor_factor_with_base(21, 2, ShorMode::LasVegas, seed, 32)?;
        println!(
            "base 2, seed {seed}: factor {:?}, bases {:?}, {} quantum rounds",
            r.answer.factor, r.answer.bases, r.rounds_used
        );
    }
    for seed in 0..2 {
        let r = shor_factor(21, ShorMode::MonteCarlo, seed, 1)?;
        println!(
            "seed {seed}: factor {:?}, bases {:?}, {} quantum rounds",
            r.answer.factor, r.answer.bases, r.rounds_used
        );
    }
    Ok(())
}
