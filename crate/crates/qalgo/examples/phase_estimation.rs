//! Phase estimation of a T gate, then order finding for 7 modulo 15.

use qalgo::algorithms::{qpe, qpe_order_finding, QpeUnitary};
use qalgo::basis_state;
use qalgo::gates::rk_phase;
use qalgo::numtheory::best_order_candidate;

fn main() -> qalgo::Result<()> {
    let r = qpe(&QpeUnitary::Gate(rk_phase(3)), &basis_state(1, 1)?, 3, 0)?;
    println!("T gate: φ̃ = {} of 8", r.answer);

    let r = qpe_order_finding(7, 15, 2)?;
    println!("order finding for 7 mod 15, 8 counting qubits:");
    for (phi, p) in r.distribution().sorted_entries() {
        println!("  φ̃ = {phi:3}  p = {p:.3}  order candidate {:?}", best_order_candidate(phi, 256u64, 15u64)?);
    }
    Ok(())
}
