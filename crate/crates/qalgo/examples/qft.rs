//! The QFT circuit against the DFT matrix, and the two-CNOT controlled-R_k.

use num_complex::Complex64;
use qalgo::algorithms::{crk_decomposition, qft_circuit};
use qalgo::gates::{rk_phase, Matrix};
use qalgo::{unitary_of, Circuit, Control};

fn main() -> qalgo::Result<()> {
    for n in 1..=6 {
        let c = qft_circuit(n)?;
        let q = 1usize << n;
        let dft = Matrix::from_fn(q, q, |k, l| {
            Complex64::from_polar(1.0 / (q as f64).sqrt(), 2.0 * std::f64::consts::PI * (k * l) as f64 / q as f64)
        });
        let err = (unitary_of(&c)? - dft).iter().map(|z| z.norm()).fold(0.0, f64::max);
        println!("n = {n}: {:2} gates, {} swaps, max error {err:.1e}", c.len(), c.count_named("SWAP"));
    }

    let k = 3;
    let mut direct = Circuit::new(2);
    direct.controlled(rk_phase(k), &[1], &[Control::pos(0)])?;
    let diff = unitary_of(&crk_decomposition(k)?)? - unitary_of(&direct)?;
    println!("C(R_{k}) from CNOTs: error {:.1e}", diff.iter().map(|z| z.norm()).fold(0.0, f64::max));
    Ok(())
}
