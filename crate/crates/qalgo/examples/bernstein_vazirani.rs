//! Bernstein–Vazirani recovers a hidden string with one query, in both oracle forms.

use qalgo::algorithms::bernstein_vazirani;
use qalgo::oracles::{synth_bv_oracle, synth_bv_phase_oracle};

fn main() -> qalgo::Result<()> {
    let (s, n) = (0b1011, 4);
    let standard = bernstein_vazirani(&synth_bv_oracle(s, n)?, n, false)?;
    let economical = bernstein_vazirani(&synth_bv_phase_oracle(s, n)?, n, true)?;
    println!("hidden {s:04b}");
    println!("standard   → {:04b}  p = {:.6}", standard.answer, standard.distribution().probability(s));
    println!("economical → {:04b}  p = {:.6}", economical.answer, economical.distribution().probability(s));
    Ok(())
}
