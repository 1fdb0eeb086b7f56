//! Deutsch, Deutsch–Jozsa and Bernstein–Vazirani.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AlgorithmResult;
use crate::circuit::{simulate, Circuit};
use crate::error::{domain, Result};
use crate::oracles::{synth_bit_oracle, synth_phase_oracle, TruthTable};
use crate::qstate::{basis_state, marginal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionKind {
    Constant,
    Balanced,
}

impl std::fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FunctionKind::Constant => "constant",
            FunctionKind::Balanced => "balanced",
        })
    }
}

/// Runs `H^{⊗n}`, the oracle and `H^{⊗n}` on `|0…0⟩|1⟩` (or on `|0…0⟩` when
/// the oracle is an `n`-qubit phase oracle) and returns the first-register
/// distribution.
fn hadamard_sandwich(oracle: &Circuit, n: usize, phase_form: bool) -> Result<crate::qstate::Distribution> {
    let width = if phase_form { n } else { n + 1 };
    if oracle.num_qubits() != width {
        return domain(format!("oracle has {} qubits, expected {width}", oracle.num_qubits()));
    }
    let mut c = Circuit::new(width);
    if !phase_form {
        c.x(n)?.h(n)?;
    }
    c.h_layer(0..n)?;
    c.append_at(oracle, 0)?;
    c.h_layer(0..n)?;
    let out = simulate(&c, &basis_state(width, 0)?)?;
    marginal(&out, &(0..n).collect::<Vec<_>>())
}

/// Classifies a one-bit function with a single oracle call.
///
/// The economical form uses the one-qubit phase oracle `diag((−1)^{f(0)}, (−1)^{f(1)})`.
pub fn deutsch(f: &TruthTable, economical: bool) -> Result<AlgorithmResult<FunctionKind>> {
    if f.n_in() != 1 || f.n_out() != 1 {
        return domain("Deutsch needs f: {0,1} → {0,1}");
    }
    let oracle = if economical {
        let ones: Vec<u64> = (0..2).filter(|&x| f.eval(x) == 1).collect();
        synth_phase_oracle(1, &ones)?
    } else {
        synth_bit_oracle(f)?
    };
    let dist = hadamard_sandwich(&oracle, 1, economical)?;
    let kind = if dist.probability(1) > 0.5 { FunctionKind::Balanced } else { FunctionKind::Constant };
    Ok(AlgorithmResult::exact(kind, dist))
}

/// Constant iff the first register reads `0…0`. Promise violations are not detected.
pub fn deutsch_jozsa(oracle: &Circuit, n: usize) -> Result<AlgorithmResult<FunctionKind>> {
    let dist = hadamard_sandwich(oracle, n, false)?;
    let kind = if dist.probability(0) > 0.5 { FunctionKind::Constant } else { FunctionKind::Balanced };
    Ok(AlgorithmResult::exact(kind, dist))
}

/// Verdict of the randomized classical test and its guaranteed accuracy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalVerdict {
    pub kind: FunctionKind,
    pub queries: u32,
    /// `1 − 1/2^{k−1}`.
    pub confidence: f64,
}

/// Queries `f` at `k` uniformly random points; balanced on any disagreement.
pub fn dj_classical_randomized(f_probe: impl Fn(u64) -> u64, n: usize, k: u32, seed: u64) -> Result<ClassicalVerdict> {
    if k < 2 {
        return domain("need at least two queries");
    }
    if n == 0 || n > 63 {
        return domain("input width out of range");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = f_probe(rng.gen_range(0..1u64 << n));
    let mut kind = FunctionKind::Constant;
    for _ in 1..k {
        if f_probe(rng.gen_range(0..1u64 << n)) != first {
            kind = FunctionKind::Balanced;
            break;
        }
    }
    Ok(ClassicalVerdict { kind, queries: k, confidence: 1.0 - 0.5f64.powi(k as i32 - 1) })
}

/// Reads the hidden string of `f(x) = s·x` with one oracle call.
///
/// The standard oracle has `n+1` qubits; the economical one is an `n`-qubit
/// phase oracle such as [`crate::oracles::synth_bv_phase_oracle`].
pub fn bernstein_vazirani(oracle: &Circuit, n: usize, economical: bool) -> Result<AlgorithmResult<u64>> {
    let dist = hadamard_sandwich(oracle, n, economical)?;
    Ok(AlgorithmResult::exact(dist.most_likely(), dist))
}
