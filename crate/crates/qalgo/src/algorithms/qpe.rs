//! Quantum phase estimation and its applications.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::qft::inverse_qft_circuit;
use super::shor::{dlog_recover, ShorRegisters};
use super::AlgorithmResult;
use crate::circuit::{apply_ops, check_width, Circuit};
use crate::error::{domain, Result};
use crate::gates::{apply_in_place, Control, Gate, GateApplication, Matrix};
use crate::numtheory::{ceil_log2, mult_order, small};
use crate::oracles::{modmul_oracle, PermutationOracle};
use crate::qstate::{self, kron, marginal, Distribution, StateVector};

/// The operator whose eigenphase is estimated.
#[derive(Clone, Debug, PartialEq)]
pub enum QpeUnitary {
    Gate(Gate),
    Permutation(PermutationOracle),
}

impl QpeUnitary {
    pub fn num_qubits(&self) -> usize {
        match self {
            QpeUnitary::Gate(g) => g.arity(),
            QpeUnitary::Permutation(p) => p.total_qubits(),
        }
    }

    fn squared(&self) -> Self {
        match self {
            QpeUnitary::Gate(g) => QpeUnitary::Gate(g.pow2(1)),
            QpeUnitary::Permutation(p) => QpeUnitary::Permutation(p.pow2(1)),
        }
    }

    fn apply_controlled(&self, s: &mut StateVector, targets: &[usize], control: usize) -> Result<()> {
        match self {
            QpeUnitary::Gate(g) => {
                let app = GateApplication::new(g.clone(), targets.to_vec(), vec![Control::pos(control)])?;
                apply_in_place(s, &app)
            }
            QpeUnitary::Permutation(p) => {
                *s = p.apply_on(s, targets, &[Control::pos(control)])?;
                Ok(())
            }
        }
    }
}

/// Phase kickback from each `(U, first control)` pair, then `F†` on every
/// `m`-qubit counting register. Register `k` occupies qubits `k·m..(k+1)·m`
/// and its qubit `m−1−j` controls `U^{2^j}`.
fn qpe_state(units: &[&QpeUnitary], eigenstate: &StateVector, m: usize) -> Result<StateVector> {
    let regs = units.len();
    let n = eigenstate.num_qubits();
    if m == 0 {
        return domain("need at least one counting qubit");
    }
    if units.iter().any(|u| u.num_qubits() != n) {
        return domain("eigenstate width does not match the unitary");
    }
    let width = regs * m + n;
    check_width(width)?;
    let mut s = kron(&qstate::basis_state(regs * m, 0)?, eigenstate);
    let mut prep = Circuit::new(width);
    prep.h_layer(0..regs * m)?;
    apply_ops(&mut s, &prep)?;
    let targets: Vec<usize> = (regs * m..width).collect();
    for (k, u) in units.iter().enumerate() {
        let mut power = (*u).clone();
        for j in 0..m {
            if j > 0 {
                power = power.squared();
            }
            power.apply_controlled(&mut s, &targets, k * m + m - 1 - j)?;
        }
    }
    let mut post = Circuit::new(width);
    for k in 0..regs {
        post.append_at(&inverse_qft_circuit(m)?, k * m)?;
    }
    apply_ops(&mut s, &post)?;
    Ok(s)
}

/// Estimates `φ` in `U|ψ⟩ = e^{2πiφ}|ψ⟩` as an `m`-bit integer `φ̃ ≈ 2^m φ`.
pub fn qpe(u: &QpeUnitary, eigenstate: &StateVector, m: usize, seed: u64) -> Result<AlgorithmResult<u64>> {
    let s = qpe_state(&[u], eigenstate, m)?;
    let first: Vec<usize> = (0..m).collect();
    let dist = marginal(&s, &first)?;
    let phi = qstate::measure(&s, &first, &mut ChaCha8Rng::seed_from_u64(seed))?.outcome;
    Ok(AlgorithmResult::exact(phi, dist))
}

/// Order finding with `U|y⟩ = |ay mod N⟩` on input `|1⟩`, with the same
/// `m = log₂q` as the quantum part of Shor's algorithm.
pub fn qpe_order_finding(a: u64, n_mod: u64, seed: u64) -> Result<AlgorithmResult<u64>> {
    let regs = ShorRegisters::for_modulus(n_mod);
    let u = QpeUnitary::Permutation(modmul_oracle(a, n_mod)?);
    let one = qstate::basis_state(u.num_qubits(), 1)?;
    qpe(&u, &one, regs.m, seed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QpeDlogOutcome {
    pub phi1: u64,
    pub phi2: u64,
    pub first: Distribution,
    pub second: Distribution,
    /// Recovered only when the order of `a` is exactly `2^m`.
    pub s: Option<u64>,
}

/// Two-register phase estimation with `U_a` and `U_b` on a shared `|1⟩`.
///
/// The exact distribution is the joint `2m`-bit readout `(φ̃, φ̃′)`.
pub fn qpe_dlog(n_mod: u64, a: u64, b: u64, m: usize, seed: u64) -> Result<AlgorithmResult<QpeDlogOutcome>> {
    let ua = QpeUnitary::Permutation(modmul_oracle(a, n_mod)?);
    let ub = QpeUnitary::Permutation(modmul_oracle(b, n_mod)?);
    let r = small(&mult_order(a, n_mod)?);
    let n = ceil_log2(n_mod) as usize;
    let s = qpe_state(&[&ua, &ub], &qstate::basis_state(n, 1)?, m)?;
    let regs: Vec<usize> = (0..2 * m).collect();
    let joint = marginal(&s, &regs)?;
    let first = marginal(&s, &regs[..m])?;
    let second = marginal(&s, &regs[m..])?;
    let pair = qstate::measure(&s, &regs, &mut ChaCha8Rng::seed_from_u64(seed))?.outcome;
    let (phi1, phi2) = (pair >> m, pair & ((1 << m) - 1));
    let recovered = if r == 1 << m { dlog_recover(phi1, phi2, r, a, b, n_mod) } else { None };
    Ok(AlgorithmResult {
        answer: QpeDlogOutcome { phi1, phi2, first, second, s: recovered },
        exact_distribution: Some(joint),
        rounds_used: 1,
        success: recovered.is_some(),
    })
}

/// `G·U_f` with `G = 2|d⟩⟨d| − I` and `U_f = Σ (−1)^{f(x)}|x⟩⟨x|`.
pub fn grover_operator(marked: &[u64], n: usize) -> Result<Gate> {
    if n == 0 || n > crate::circuit::MAX_UNITARY_QUBITS {
        return domain("operator width out of range");
    }
    let dim = 1usize << n;
    if marked.iter().any(|&x| x as usize >= dim) {
        return domain("marked element out of range");
    }
    let mut sign = vec![1.0; dim];
    for &x in marked {
        sign[x as usize] = -1.0;
    }
    let g = Matrix::from_fn(dim, dim, |i, j| {
        let d = 2.0 / dim as f64 - if i == j { 1.0 } else { 0.0 };
        Complex64::new(d * sign[j], 0.0)
    });
    Gate::new("GU_f", g)
}

/// `N·sin²(π φ̃ / 2^m)`.
pub fn counting_estimate(phi: u64, n: usize, m: usize) -> f64 {
    let big_n = (1u64 << n) as f64;
    big_n * (std::f64::consts::PI * phi as f64 / (1u64 << m) as f64).sin().powi(2)
}

/// Default counting register size `⌈n/2⌉ + 1`.
pub fn default_counting_bits(n: usize) -> usize {
    n.div_ceil(2) + 1
}

/// Estimates `|M|` by phase estimation of `G·U_f` on `|d⟩`.
pub fn quantum_counting(marked: &[u64], n: usize, m: Option<usize>, seed: u64) -> Result<AlgorithmResult<f64>> {
    let m = m.unwrap_or_else(|| default_counting_bits(n));
    let mut set = marked.to_vec();
    set.sort_unstable();
    set.dedup();
    let u = QpeUnitary::Gate(grover_operator(&set, n)?);
    let run = qpe(&u, &StateVector::uniform(n)?, m, seed)?;
    Ok(AlgorithmResult {
        answer: counting_estimate(run.answer, n, m),
        exact_distribution: run.exact_distribution,
        rounds_used: 1,
        success: true,
    })
}
