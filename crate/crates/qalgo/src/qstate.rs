//! State vectors, distributions and measurement.
//!
//! Qubit 0 is the most significant bit of a basis index, so `|q0 q1 … q(n-1)⟩`
//! reads left to right exactly like the bitstring of the index.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::distributions::WeightedIndex;
use rand::prelude::Distribution as _;
use rand::Rng;

use crate::error::{domain, Error, Result};

pub type Amplitude = Complex64;

/// Allowed drift of `Σ|a|²` away from 1.
pub const NORM_TOL: f64 = 1e-10;
/// Largest shot count accepted by samplers.
pub const MAX_SHOTS: u64 = 10_000_000;
/// Default singular-value cutoff for [`schmidt_rank`].
pub const SCHMIDT_TOL: f64 = 1e-8;

/// Renders the low `width` bits of `x`, most significant first.
pub fn bitstring(x: u64, width: usize) -> String {
    (0..width)
        .map(|j| if (x >> (width - 1 - j)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a string of `0`/`1` into `(value, width)`.
pub fn parse_bits(s: &str) -> Result<(u64, usize)> {
    let s = s.trim();
    if s.is_empty() || s.len() > 63 {
        return domain(format!("bad bitstring {s:?}"));
    }
    let mut x = 0u64;
    for c in s.chars() {
        x = (x << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => return domain(format!("bad bitstring {s:?}")),
            };
    }
    Ok((x, s.len()))
}

/// Reads the bits of `index` at `qubits` (in the given order) into a
/// fresh integer whose most significant bit is `qubits[0]`.
pub fn sub_index(index: usize, n: usize, qubits: &[usize]) -> u64 {
    qubits
        .iter()
        .fold(0u64, |acc, &q| (acc << 1) | ((index >> (n - 1 - q)) & 1) as u64)
}

pub(crate) fn check_qubits(n: usize, qubits: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    for &q in qubits {
        if q >= n {
            return domain(format!("qubit {q} out of range for {n} qubits"));
        }
        if seen[q] {
            return domain(format!("qubit {q} listed twice"));
        }
        seen[q] = true;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Amplitude>,
}

impl StateVector {
    pub fn basis(n: usize, x: u64) -> Result<Self> {
        basis_state(n, x)
    }

    pub fn zero(n: usize) -> Result<Self> {
        basis_state(n, 0)
    }

    /// The uniform superposition `|d⟩ = H^{⊗n}|0⟩`.
    pub fn uniform(n: usize) -> Result<Self> {
        check_width(n)?;
        let dim = 1usize << n;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self { num_qubits: n, amps: vec![a; dim] })
    }

    /// Builds a state from raw amplitudes, renormalizing them.
    pub fn from_amplitudes(amps: Vec<Amplitude>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return domain(format!("amplitude count {dim} is not a power of two ≥ 2"));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return domain("non-finite amplitude");
        }
        let mut s = Self { num_qubits: dim.trailing_zeros() as usize, amps };
        let norm = s.norm_sqr();
        if norm < 1e-300 {
            return domain("zero vector is not a state");
        }
        s.scale(1.0 / norm.sqrt());
        Ok(s)
    }

    pub(crate) fn from_raw(num_qubits: usize, amps: Vec<Amplitude>) -> Self {
        debug_assert_eq!(amps.len(), 1 << num_qubits);
        Self { num_qubits, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amplitude(&self, x: u64) -> Amplitude {
        self.amps[x as usize]
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Amplitude] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn scale(&mut self, k: f64) {
        for a in &mut self.amps {
            *a *= k;
        }
    }

    pub(crate) fn renormalize(&mut self) {
        let norm = self.norm_sqr();
        if norm > 0.0 {
            self.scale(1.0 / norm.sqrt());
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Amplitude {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Element-wise max-norm distance.
    pub fn max_diff(&self, other: &Self) -> f64 {
        if self.num_qubits != other.num_qubits {
            return f64::INFINITY;
        }
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Equality up to a global phase, `|⟨a|b⟩| ≈ 1`.
    pub fn same_ray(&self, other: &Self, tol: f64) -> bool {
        self.num_qubits == other.num_qubits && (1.0 - self.inner(other).norm()).abs() <= tol
    }
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 {
        return domain("a state needs at least one qubit");
    }
    if n > 30 {
        return Err(Error::Resource(format!("{n} qubits is beyond a dense vector")));
    }
    Ok(())
}

/// `|x⟩` on `n` qubits.
pub fn basis_state(n: usize, x: u64) -> Result<StateVector> {
    check_width(n)?;
    let dim = 1usize << n;
    if x as u128 >= dim as u128 {
        return domain(format!("basis index {x} out of range for {n} qubits"));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[x as usize] = Complex64::new(1.0, 0.0);
    Ok(StateVector { num_qubits: n, amps })
}

/// Tensor product `a ⊗ b`; `a` occupies the leading qubits.
pub fn kron(a: &StateVector, b: &StateVector) -> StateVector {
    let mut amps = Vec::with_capacity(a.dim() * b.dim());
    for x in &a.amps {
        for y in &b.amps {
            amps.push(x * y);
        }
    }
    StateVector { num_qubits: a.num_qubits + b.num_qubits, amps }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistKind {
    Exact,
    Sampled,
}

/// Outcome statistics over bitstrings of a fixed width.
#[derive(Clone, Debug, PartialEq)]
pub enum Distribution {
    /// Dense probabilities indexed by outcome.
    Exact { width: usize, probs: Vec<f64> },
    /// Shot counts; only observed outcomes are stored.
    Sampled { width: usize, counts: BTreeMap<u64, u64>, shots: u64 },
}

impl Distribution {
    pub fn from_probabilities(width: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1usize << width {
            return domain("probability vector length does not match width");
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 || probs.iter().any(|p| *p < 0.0 || !p.is_finite()) {
            return domain(format!("probabilities sum to {total}"));
        }
        Ok(Distribution::Exact { width, probs })
    }

    pub fn kind(&self) -> DistKind {
        match self {
            Distribution::Exact { .. } => DistKind::Exact,
            Distribution::Sampled { .. } => DistKind::Sampled,
        }
    }

    pub fn width(&self) -> usize {
        match self {
            Distribution::Exact { width, .. } | Distribution::Sampled { width, .. } => *width,
        }
    }

    pub fn shots(&self) -> Option<u64> {
        match self {
            Distribution::Exact { .. } => None,
            Distribution::Sampled { shots, .. } => Some(*shots),
        }
    }

    /// Probability for exact distributions, count for sampled ones.
    pub fn value(&self, x: u64) -> f64 {
        match self {
            Distribution::Exact { probs, .. } => probs.get(x as usize).copied().unwrap_or(0.0),
            Distribution::Sampled { counts, .. } => counts.get(&x).copied().unwrap_or(0) as f64,
        }
    }

    /// Probability, or relative frequency for sampled data.
    pub fn probability(&self, x: u64) -> f64 {
        match self {
            Distribution::Exact { .. } => self.value(x),
            Distribution::Sampled { shots, .. } => self.value(x) / *shots as f64,
        }
    }

    pub fn probability_of(&self, bits: &str) -> f64 {
        match parse_bits(bits) {
            Ok((x, w)) if w == self.width() => self.probability(x),
            _ => 0.0,
        }
    }

    /// Outcomes with probability above `tol`, ascending.
    pub fn support(&self, tol: f64) -> Vec<u64> {
        match self {
            Distribution::Exact { probs, .. } => {
                (0..probs.len() as u64).filter(|&x| probs[x as usize] > tol).collect()
            }
            Distribution::Sampled { counts, .. } => {
                counts.iter().filter(|(_, &c)| c > 0).map(|(&x, _)| x).collect()
            }
        }
    }

    /// Entries sorted by descending value, ties by ascending bitstring.
    /// Exact values within `1e-12` of each other count as tied. Exact
    /// distributions drop zero entries.
    pub fn sorted_entries(&self) -> Vec<(u64, f64)> {
        let mut v: Vec<(u64, f64)> = match self {
            Distribution::Exact { probs, .. } => probs
                .iter()
                .enumerate()
                .filter(|(_, p)| **p > 0.0)
                .map(|(x, p)| (x as u64, *p))
                .collect(),
            Distribution::Sampled { counts, .. } => {
                counts.iter().map(|(&x, &c)| (x, c as f64)).collect()
            }
        };
        let key = |p: f64| (p * 1e12).round();
        v.sort_by(|a, b| key(b.1).total_cmp(&key(a.1)).then(a.0.cmp(&b.0)));
        v
    }

    /// Every stored entry keyed by bitstring.
    pub fn entries(&self) -> BTreeMap<String, f64> {
        let w = self.width();
        match self {
            Distribution::Exact { probs, .. } => {
                probs.iter().enumerate().map(|(x, p)| (bitstring(x as u64, w), *p)).collect()
            }
            Distribution::Sampled { counts, .. } => {
                counts.iter().map(|(&x, &c)| (bitstring(x, w), c as f64)).collect()
            }
        }
    }

    /// The most probable outcome; ties go to the smaller index.
    pub fn most_likely(&self) -> u64 {
        self.sorted_entries().first().map(|e| e.0).unwrap_or(0)
    }

    /// Total-variation distance between the normalized views.
    pub fn total_variation(&self, other: &Self) -> f64 {
        let dim = 1u64 << self.width().max(other.width());
        0.5 * (0..dim).map(|x| (self.probability(x) - other.probability(x)).abs()).sum::<f64>()
    }

    /// Max-norm distance between the normalized views.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let dim = 1u64 << self.width().max(other.width());
        (0..dim).map(|x| (self.probability(x) - other.probability(x)).abs()).fold(0.0, f64::max)
    }

    /// Draws `shots` independent outcomes from an exact distribution.
    pub fn sample<R: Rng + ?Sized>(&self, shots: u64, rng: &mut R) -> Result<Self> {
        if shots == 0 {
            return domain("shots must be at least 1");
        }
        if shots > MAX_SHOTS {
            return Err(Error::Resource(format!("{shots} shots exceeds the cap of {MAX_SHOTS}")));
        }
        let probs = match self {
            Distribution::Exact { probs, .. } => probs,
            Distribution::Sampled { .. } => return domain("can only sample an exact distribution"),
        };
        let picker = WeightedIndex::new(probs)
            .map_err(|e| Error::Internal(format!("unsamplable distribution: {e}")))?;
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            *counts.entry(picker.sample(rng) as u64).or_insert(0) += 1;
        }
        Ok(Distribution::Sampled { width: self.width(), counts, shots })
    }
}

/// Exact `|a_x|²` for every basis string.
pub fn probabilities(s: &StateVector) -> Distribution {
    Distribution::Exact { width: s.num_qubits, probs: s.amps.iter().map(|a| a.norm_sqr()).collect() }
}

/// Exact marginal over `qubits`, read in the given order.
pub fn marginal(s: &StateVector, qubits: &[usize]) -> Result<Distribution> {
    check_qubits(s.num_qubits, qubits)?;
    let mut probs = vec![0.0; 1usize << qubits.len()];
    for (x, a) in s.amps.iter().enumerate() {
        probs[sub_index(x, s.num_qubits, qubits) as usize] += a.norm_sqr();
    }
    Ok(Distribution::Exact { width: qubits.len(), probs })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    pub measured_qubits: Vec<usize>,
    /// Bits of the measured qubits, the lowest-numbered qubit first.
    pub outcome: u64,
    pub probability: f64,
    pub post_state: StateVector,
}

impl MeasurementRecord {
    pub fn outcome_bits(&self) -> String {
        bitstring(self.outcome, self.measured_qubits.len())
    }
}

/// Projective measurement of `qubits` in the computational basis.
pub fn measure<R: Rng + ?Sized>(
    s: &StateVector,
    qubits: &[usize],
    rng: &mut R,
) -> Result<MeasurementRecord> {
    let mut sorted = qubits.to_vec();
    sorted.sort_unstable();
    let marg = marginal(s, &sorted)?;
    let Distribution::Exact { probs, .. } = &marg else { unreachable!() };
    let picker = WeightedIndex::new(probs)
        .map_err(|_| Error::Internal("every outcome has zero probability".into()))?;
    let outcome = picker.sample(rng) as u64;
    let probability = probs[outcome as usize];
    let n = s.num_qubits;
    let amps = s
        .amps
        .iter()
        .enumerate()
        .map(|(x, a)| if sub_index(x, n, &sorted) == outcome { *a } else { Complex64::new(0.0, 0.0) })
        .collect();
    let mut post_state = StateVector { num_qubits: n, amps };
    post_state.renormalize();
    Ok(MeasurementRecord { measured_qubits: sorted, outcome, probability, post_state })
}

/// Rank of the coefficient matrix for the cut `left_qubits | rest`.
pub fn schmidt_rank(s: &StateVector, left_qubits: &[usize], tol: f64) -> Result<usize> {
    let n = s.num_qubits;
    check_qubits(n, left_qubits)?;
    if left_qubits.is_empty() || left_qubits.len() == n {
        return domain("the cut must be a proper nonempty subset");
    }
    let right: Vec<usize> = (0..n).filter(|q| !left_qubits.contains(q)).collect();
    let mut m = DMatrix::<Complex64>::zeros(1 << left_qubits.len(), 1 << right.len());
    for (x, a) in s.amps.iter().enumerate() {
        m[(sub_index(x, n, left_qubits) as usize, sub_index(x, n, &right) as usize)] = *a;
    }
    let sv = m.singular_values();
    Ok(sv.iter().filter(|v| **v > tol).count())
}

/// Bloch-sphere angles `(θ, φ)` of a one-qubit state with its global phase removed.
pub fn bloch_angles(s: &StateVector) -> Result<(f64, f64)> {
    const TOL: f64 = 1e-12;
    if s.num_qubits != 1 {
        return domain("bloch_angles needs a single qubit");
    }
    let (a, b) = (s.amps[0], s.amps[1]);
    let theta = 2.0 * b.norm().atan2(a.norm());
    if b.norm() < TOL || a.norm() < TOL {
        return Ok((theta, 0.0));
    }
    let phi = (b.arg() - a.arg()).rem_euclid(2.0 * PI);
    // rem_euclid can return 2π itself for tiny negative inputs
    Ok((theta, if phi >= 2.0 * PI { 0.0 } else { phi }))
}
