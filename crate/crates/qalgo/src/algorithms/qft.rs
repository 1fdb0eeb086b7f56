//! Quantum Fourier transform circuits.

use crate::circuit::Circuit;
use crate::error::{domain, Result};
use crate::gates::{rk_phase, standard_gate, Control};

/// `F_{2^n}|ℓ⟩ = 2^{−n/2} Σ_k ω^{ℓk}|k⟩` built from `H`, controlled `R_k` and
/// a final layer of swaps: `n(n+1)/2 + ⌊n/2⌋` gates.
pub fn qft_circuit(n: usize) -> Result<Circuit> {
    if n == 0 {
        return domain("QFT needs at least one qubit");
    }
    let mut c = Circuit::new(n);
    for j in 0..n {
        c.h(j)?;
        for k in 2..=(n - j) {
            c.controlled(rk_phase(k as u32), &[j], &[Control::pos(j + k - 1)])?;
        }
    }
    let swap = standard_gate("SWAP")?;
    for j in 0..n / 2 {
        c.gate(swap.clone(), &[j, n - 1 - j])?;
    }
    Ok(c)
}

/// Reversed gate order with every phase conjugated.
pub fn inverse_qft_circuit(n: usize) -> Result<Circuit> {
    Ok(qft_circuit(n)?.inverse())
}

/// Controlled-`R_k` (control 0, target 1) from two CNOTs and three `R_{k+1}` phases.
pub fn crk_decomposition(k: u32) -> Result<Circuit> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    let half = rk_phase(k + 1);
    let mut c = Circuit::new(2);
    c.gate(half.clone(), &[0])?;
    c.gate(half.clone(), &[1])?;
    c.cx(0, 1)?;
    c.gate(half.dagger(), &[1])?;
    c.cx(0, 1)?;
    Ok(c)
}
