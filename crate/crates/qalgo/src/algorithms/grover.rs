//! Grover search, the doubling search for unknown `m`, and SAT via the
//! expression compiler.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::AlgorithmResult;
use crate::circuit::{simulate, Circuit};
use crate::error::{domain, Result};
use crate::gates::Control;
use crate::oracles::{expr_to_circuit, synth_bit_oracle, synth_phase_oracle, BooleanExpr, TruthTable};
use crate::qstate::{self, marginal, Distribution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Bit oracle with a `|−⟩` ancilla.
    Standard,
    /// `n`-qubit phase oracle.
    Economical,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroverGeometry {
    /// Rotation per iteration, `sin(θ/2) = √(m/N)`.
    pub theta: f64,
    pub iterations: u64,
    /// `sin²((2t+1)θ/2)`.
    pub predicted_success: f64,
}

impl GroverGeometry {
    /// `t = ⌊(π/4)√(N/m)⌋` unless `iterations` is given; `t = 0` when `m = 0`.
    pub fn new(n: usize, m: u64, iterations: Option<u64>) -> Self {
        let big_n = (1u64 << n) as f64;
        let theta = 2.0 * (m as f64 / big_n).sqrt().asin();
        let t = iterations.unwrap_or_else(|| if m == 0 { 0 } else { optimal_iterations(n, m) });
        let predicted_success = (((2 * t + 1) as f64) * theta / 2.0).sin().powi(2);
        Self { theta, iterations: t, predicted_success }
    }
}

/// `⌊(π/4)√(N/m)⌋`.
pub fn optimal_iterations(n: usize, m: u64) -> u64 {
    (PI / 4.0 * ((1u64 << n) as f64 / m as f64).sqrt()).floor() as u64
}

/// `2|0⟩⟨0| − I` up to a global sign, conjugated by Hadamards, on `qubits`.
pub fn diffusion(width: usize, qubits: &[usize]) -> Result<Circuit> {
    let mut c = Circuit::new(width);
    let (&last, rest) = qubits.split_last().expect("at least one qubit");
    let controls: Vec<Control> = rest.iter().map(|&q| Control::pos(q)).collect();
    c.h_layer(qubits.iter().copied())?;
    for &q in qubits {
        c.x(q)?;
    }
    c.h(last)?.mcx(&controls, last)?.h(last)?;
    for &q in qubits {
        c.x(q)?;
    }
    c.h_layer(qubits.iter().copied())?;
    Ok(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroverOutcome {
    pub x: u64,
    pub geometry: GroverGeometry,
    /// Exact probability of reading a marked element.
    pub success_probability: f64,
    /// Set when `|M| > N/2`: no iterations were run and `x` is a uniform sample.
    pub degenerate: bool,
}

fn search_circuit(marked: &BTreeSet<u64>, n: usize, variant: Variant, t: u64) -> Result<Circuit> {
    let marked: Vec<u64> = marked.iter().copied().collect();
    let inputs: Vec<usize> = (0..n).collect();
    let (width, oracle) = match variant {
        Variant::Economical => (n, synth_phase_oracle(n, &marked)?),
        Variant::Standard => {
            let tt = TruthTable::from_fn(n, 1, |x| marked.binary_search(&x).is_ok() as u64)?;
            (n + 1, synth_bit_oracle(&tt)?)
        }
    };
    let mut c = Circuit::new(width);
    if variant == Variant::Standard {
        c.x(n)?.h(n)?;
    }
    c.h_layer(0..n)?;
    let g = diffusion(width, &inputs)?;
    for _ in 0..t {
        c.append_at(&oracle, 0)?;
        c.append_at(&g, 0)?;
    }
    Ok(c)
}

fn search_distribution(marked: &BTreeSet<u64>, n: usize, variant: Variant, t: u64) -> Result<Distribution> {
    let c = search_circuit(marked, n, variant, t)?;
    let out = simulate(&c, &qstate::basis_state(c.num_qubits(), 0)?)?;
    marginal(&out, &(0..n).collect::<Vec<_>>())
}

/// Grover search for any element of `marked` among `N = 2^n`.
pub fn grover(
    marked: &[u64],
    n: usize,
    variant: Variant,
    t_override: Option<u64>,
    seed: u64,
) -> Result<AlgorithmResult<GroverOutcome>> {
    if n == 0 || n > 30 {
        return domain("search width out of range");
    }
    let set: BTreeSet<u64> = marked.iter().copied().collect();
    if set.iter().any(|&x| x >> n != 0) {
        return domain("marked element out of range");
    }
    if set.is_empty() && t_override.is_none() {
        return domain("no marked elements; give an iteration count explicitly");
    }
    let m = set.len() as u64;
    let degenerate = t_override.is_none() && 2 * m > 1 << n;
    let t = if degenerate { Some(0) } else { t_override };
    let geometry = GroverGeometry::new(n, m, t);
    let dist = search_distribution(&set, n, variant, geometry.iterations)?;
    let success_probability = set.iter().map(|&x| dist.probability(x)).sum();
    let x = draw(&dist, seed)?;
    Ok(AlgorithmResult {
        answer: GroverOutcome { x, geometry, success_probability, degenerate },
        success: set.contains(&x),
        exact_distribution: Some(dist),
        rounds_used: 1,
    })
}

fn draw(dist: &Distribution, seed: u64) -> Result<u64> {
    Ok(dist.sample(1, &mut ChaCha8Rng::seed_from_u64(seed))?.most_likely())
}

/// Guesses `m = 1, 2, 4, …, N/2` in turn, checking each sample with `probe`.
pub fn grover_unknown_m(probe: impl Fn(u64) -> bool, n: usize, seed: u64) -> Result<AlgorithmResult<Option<u64>>> {
    if n == 0 || n > 20 {
        return domain("search width out of range");
    }
    let marked: BTreeSet<u64> = (0..1u64 << n).filter(|&x| probe(x)).collect();
    let mut guesses = 0;
    let mut last = None;
    let mut guess = 1u64;
    while guess <= (1u64 << n) / 2 {
        let dist = search_distribution(&marked, n, Variant::Economical, optimal_iterations(n, guess))?;
        let x = draw(&dist, seed.wrapping_add(guesses))?;
        guesses += 1;
        last = Some(dist);
        if probe(x) {
            return Ok(AlgorithmResult { answer: Some(x), exact_distribution: last, rounds_used: guesses, success: true });
        }
        guess *= 2;
    }
    Ok(AlgorithmResult { answer: None, exact_distribution: last, rounds_used: guesses, success: false })
}

/// Grover oracle for `e`: the compiled expression writes its result into a
/// qubit held in `|−⟩`, and the ancilla mirror cleans up the rest.
pub fn sat_oracle(e: &BooleanExpr, n_vars: usize) -> Result<SatOracle> {
    let ec = expr_to_circuit(e, n_vars, true)?;
    let mut width = ec.circuit.num_qubits();
    let mut body = ec.circuit.clone();
    let phase_qubit = if ec.result_qubit < n_vars {
        width += 1;
        body = body.widened(width)?;
        body.cx(ec.result_qubit, width - 1)?;
        width - 1
    } else {
        ec.result_qubit
    };
    let mut prepare = Circuit::new(width);
    for (k, &init) in ec.ancilla_init.iter().enumerate() {
        if init && n_vars + k != phase_qubit {
            prepare.x(n_vars + k)?;
        }
    }
    prepare.x(phase_qubit)?.h(phase_qubit)?;
    Ok(SatOracle { prepare, body, n_vars })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SatOracle {
    /// Sets ancillas to their initial values and the phase qubit to `|−⟩`.
    pub prepare: Circuit,
    /// Flips the sign of satisfying assignments.
    pub body: Circuit,
    pub n_vars: usize,
}

impl SatOracle {
    /// The full search circuit with `t` iterations.
    pub fn search_circuit(&self, t: u64) -> Result<Circuit> {
        let width = self.body.num_qubits();
        let inputs: Vec<usize> = (0..self.n_vars).collect();
        let mut c = self.prepare.clone();
        c.h_layer(inputs.iter().copied())?;
        let g = diffusion(width, &inputs)?;
        for _ in 0..t {
            c.append_at(&self.body, 0)?;
            c.append_at(&g, 0)?;
        }
        Ok(c)
    }

    pub fn distribution(&self, t: u64) -> Result<Distribution> {
        let c = self.search_circuit(t)?;
        let out = simulate(&c, &qstate::basis_state(c.num_qubits(), 0)?)?;
        marginal(&out, &(0..self.n_vars).collect::<Vec<_>>())
    }
}

/// Finds a satisfying assignment of `e`, checked classically.
///
/// With `m_known` one search runs with `t = ⌊(π/4)√(N/m)⌋`; otherwise the
/// doubling guesses of [`grover_unknown_m`] are used.
pub fn sat_solve(e: &BooleanExpr, n_vars: usize, m_known: Option<u64>, seed: u64) -> Result<AlgorithmResult<Option<u64>>> {
    if n_vars == 0 || n_vars > 12 {
        return domain("SAT supports 1 to 12 variables");
    }
    let oracle = sat_oracle(e, n_vars)?;
    let guesses: Vec<u64> = match m_known {
        Some(0) => vec![0],
        Some(m) => vec![m],
        None => std::iter::successors(Some(1u64), |g| Some(g * 2)).take_while(|g| *g <= (1 << n_vars) / 2).collect(),
    };
    let mut last = None;
    for (k, &m) in guesses.iter().enumerate() {
        let t = if m == 0 { 0 } else { optimal_iterations(n_vars, m) };
        let dist = oracle.distribution(t)?;
        let x = draw(&dist, seed.wrapping_add(k as u64))?;
        last = Some(dist);
        if e.eval(x, n_vars) {
            return Ok(AlgorithmResult { answer: Some(x), exact_distribution: last, rounds_used: k as u64 + 1, success: true });
        }
    }
    Ok(AlgorithmResult { answer: None, exact_distribution: last, rounds_used: guesses.len() as u64, success: false })
}
