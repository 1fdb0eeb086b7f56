//! Shor's factoring algorithm and the power-of-two discrete logarithm.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::qft::inverse_qft_circuit;
use super::AlgorithmResult;
use crate::circuit::{check_width, simulate, Circuit};
use crate::error::{domain, Result};
use crate::numtheory::{
    best_order_candidate, ceil_log2, is_perfect_power, is_prime, log2_pow2_above, mod_inverse, mod_pow_u64,
    mult_order, small,
};
use crate::oracles::{modexp_oracle, PermutationOracle};
use crate::qstate::{self, marginal, Distribution, StateVector};

pub use crate::numtheory::fact3_screen;

/// Register sizes of the quantum part: `q = 2^m > N²` and `n = ⌈log₂N⌉`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShorRegisters {
    pub q: u64,
    pub m: usize,
    pub n: usize,
}

impl ShorRegisters {
    pub fn for_modulus(n_mod: u64) -> Self {
        let m = log2_pow2_above(n_mod * n_mod) as usize;
        Self { q: 1 << m, m, n: ceil_log2(n_mod) as usize }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShorQuantumOutcome {
    /// Reading of the first register.
    pub ell: u64,
    /// Reading of the second register, taken before the inverse transform.
    pub z: u64,
    pub registers: ShorRegisters,
    /// First-register distribution given `z`.
    pub conditional: Distribution,
}

fn check_shor_inputs(a: u64, n_mod: u64) -> Result<()> {
    if n_mod < 3 || n_mod.is_multiple_of(2) || is_prime(n_mod) {
        return domain(format!("{n_mod} is not an odd composite"));
    }
    if a < 2 || a >= n_mod || a.gcd(&n_mod) != 1 {
        return domain(format!("need 1 < a < N with gcd(a, N) = 1, got a = {a}"));
    }
    Ok(())
}

fn iqft_on(width: usize, offset: usize, m: usize) -> Result<Circuit> {
    let mut c = Circuit::new(width);
    c.append_at(&inverse_qft_circuit(m)?, offset)?;
    Ok(c)
}

/// State after `H^{⊗m}` and `U_N^{(a)}`, before any measurement.
fn shor_pre_measurement(a: u64, n_mod: u64) -> Result<(StateVector, ShorRegisters)> {
    let regs = ShorRegisters::for_modulus(n_mod);
    check_width(regs.m + regs.n)?;
    let mut c = Circuit::new(regs.m + regs.n);
    c.h_layer(0..regs.m)?;
    let s = simulate(&c, &qstate::basis_state(regs.m + regs.n, 0)?)?;
    Ok((modexp_oracle(a, n_mod, regs.q)?.apply(&s)?, regs))
}

/// Exact first-register distribution after seeing `z` in the second register.
pub fn shor_distribution_given(a: u64, n_mod: u64, z: u64) -> Result<Distribution> {
    check_shor_inputs(a, n_mod)?;
    let (s, regs) = shor_pre_measurement(a, n_mod)?;
    let mask = (1u64 << regs.n) - 1;
    let amps: Vec<_> = s
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, v)| if (i as u64) & mask == z { *v } else { num_complex::Complex64::new(0.0, 0.0) })
        .collect();
    let projected = StateVector::from_amplitudes(amps).map_err(|_| {
        crate::error::Error::Domain(format!("{z} is not a power of {a} modulo {n_mod}"))
    })?;
    let out = simulate(&iqft_on(regs.m + regs.n, 0, regs.m)?, &projected)?;
    marginal(&out, &(0..regs.m).collect::<Vec<_>>())
}

fn quantum_round<R: Rng + ?Sized>(a: u64, n_mod: u64, rng: &mut R) -> Result<AlgorithmResult<ShorQuantumOutcome>> {
    check_shor_inputs(a, n_mod)?;
    let (s, regs) = shor_pre_measurement(a, n_mod)?;
    let width = regs.m + regs.n;
    let first: Vec<usize> = (0..regs.m).collect();
    let second: Vec<usize> = (regs.m..width).collect();
    let iqft = iqft_on(width, 0, regs.m)?;

    let unconditional = marginal(&simulate(&iqft, &s)?, &first)?;
    let z_rec = qstate::measure(&s, &second, rng)?;
    let after = simulate(&iqft, &z_rec.post_state)?;
    let conditional = marginal(&after, &first)?;
    let ell = qstate::measure(&after, &first, rng)?.outcome;
    Ok(AlgorithmResult::exact(
        ShorQuantumOutcome { ell, z: z_rec.outcome, registers: regs, conditional },
        unconditional,
    ))
}

/// One run of the quantum part. The exact distribution is the unconditional
/// first-register marginal; [`ShorQuantumOutcome::conditional`] fixes `z`.
pub fn shor_quantum_part(a: u64, n_mod: u64, seed: u64) -> Result<AlgorithmResult<ShorQuantumOutcome>> {
    quantum_round(a, n_mod, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShorMode {
    LasVegas,
    MonteCarlo,
}

/// Factor found (if any) and how the driver got there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorOutcome {
    pub factor: Option<u64>,
    /// Bases `a` drawn, in order.
    pub bases: Vec<u64>,
    /// Set when a classical shortcut answered before any quantum round.
    pub shortcut: Option<&'static str>,
}

/// Shor's algorithm with `rounds_used` counting quantum rounds.
///
/// Las Vegas mode stops after `max_rounds` quantum rounds and reports failure.
pub fn shor_factor(n_mod: u64, mode: ShorMode, seed: u64, max_rounds: u64) -> Result<AlgorithmResult<FactorOutcome>> {
    factor_impl(n_mod, None, mode, seed, max_rounds)
}

/// As [`shor_factor`] but the first base is `a` instead of a random draw.
pub fn shor_factor_with_base(
    n_mod: u64,
    a: u64,
    mode: ShorMode,
    seed: u64,
    max_rounds: u64,
) -> Result<AlgorithmResult<FactorOutcome>> {
    if a < 2 || a >= n_mod {
        return domain("need 1 < a < N");
    }
    factor_impl(n_mod, Some(a), mode, seed, max_rounds)
}

fn factor_impl(
    n_mod: u64,
    first_base: Option<u64>,
    mode: ShorMode,
    seed: u64,
    max_rounds: u64,
) -> Result<AlgorithmResult<FactorOutcome>> {
    if n_mod < 4 {
        return domain("N must be at least 4");
    }
    let shortcut = |factor: u64, why: &'static str, bases: Vec<u64>| AlgorithmResult {
        answer: FactorOutcome { factor: Some(factor), bases, shortcut: Some(why) },
        exact_distribution: None,
        rounds_used: 0,
        success: true,
    };
    if n_mod.is_multiple_of(2) {
        return Ok(shortcut(2, "even", vec![]));
    }
    if let Some((p, _)) = is_perfect_power(n_mod) {
        return Ok(shortcut(small(&p), "perfect power", vec![]));
    }
    if is_prime(n_mod) {
        return domain(format!("{n_mod} is prime"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next_base = first_base;
    let mut bases = Vec::new();
    let mut rounds = 0u64;
    let mut last_dist = None;
    let done = |factor, bases, rounds, dist| AlgorithmResult {
        answer: FactorOutcome { factor, bases, shortcut: None },
        exact_distribution: dist,
        rounds_used: rounds,
        success: factor.is_some(),
    };
    'draw: loop {
        let a = next_base.take().unwrap_or_else(|| rng.gen_range(2..n_mod));
        bases.push(a);
        let g = a.gcd(&n_mod);
        if g > 1 {
            if rounds == 0 {
                return Ok(shortcut(g, "gcd", bases));
            }
            return Ok(done(Some(g), bases, rounds, last_dist));
        }
        loop {
            if rounds >= max_rounds {
                return Ok(done(None, bases, rounds, last_dist));
            }
            let run = quantum_round(a, n_mod, &mut rng)?;
            rounds += 1;
            let q = run.answer.registers.q;
            let ell = run.answer.ell;
            last_dist = run.exact_distribution;
            if ell == 0 {
                if mode == ShorMode::MonteCarlo {
                    return Ok(done(None, bases, rounds, last_dist));
                }
                continue;
            }
            let candidate = best_order_candidate(ell, q, n_mod)?.map(|r| small(&r));
            if let Some(r) = candidate.filter(|r| r % 2 == 0) {
                let p = (mod_pow_u64(a, r / 2, n_mod) + 1).gcd(&n_mod);
                if p > 1 && p < n_mod {
                    return Ok(done(Some(p), bases, rounds, last_dist));
                }
            }
            if mode == ShorMode::MonteCarlo {
                return Ok(done(None, bases, rounds, last_dist));
            }
            continue 'draw;
        }
    }
}

/// Discrete-log readout and the exact probability that recovery succeeds.
#[derive(Clone, Debug, PartialEq)]
pub struct DlogOutcome {
    pub s: Option<u64>,
    pub r1: u64,
    pub r2: u64,
    pub order: u64,
    pub success_probability: f64,
}

/// `s ≡ r₂·r₁⁻¹ (mod r)` when `gcd(r₁, r) = 1` and `a^s ≡ b`.
pub fn dlog_recover(r1: u64, r2: u64, order: u64, a: u64, b: u64, n_mod: u64) -> Option<u64> {
    if r1.gcd(&order) != 1 {
        return None;
    }
    let inv = small(&mod_inverse(r1, order).ok()?);
    let s = (r2 % order) * inv % order;
    (mod_pow_u64(a, s, n_mod) == b % n_mod).then_some(s)
}

fn dlog_inputs(n_mod: u64, a: u64, b: u64) -> Result<u64> {
    if n_mod < 3 || a.gcd(&n_mod) != 1 {
        return domain("need N ≥ 3 and gcd(a, N) = 1");
    }
    let r = small(&mult_order(a, n_mod)?);
    if !(0..r).any(|e| mod_pow_u64(a, e, n_mod) == b % n_mod) {
        return domain(format!("{b} is not a power of {a} modulo {n_mod}"));
    }
    Ok(r)
}

/// `|x⟩|y⟩|z⟩ → |x⟩|y⟩|z ⊕ a^x b^y mod N⟩` with `m`-qubit exponent registers.
pub(crate) fn dlog_oracle(n_mod: u64, a: u64, b: u64, m: usize) -> Result<PermutationOracle> {
    let n = ceil_log2(n_mod) as usize;
    check_width(2 * m + n)?;
    let mask = (1u64 << n) - 1;
    PermutationOracle::from_fn(2 * m + n, |i| {
        let (x, y, z) = (i >> (m + n), (i >> n) & ((1 << m) - 1), i & mask);
        let f = mod_pow_u64(a, x, n_mod) * mod_pow_u64(b, y, n_mod) % n_mod;
        (i & !mask) | (z ^ f)
    })
}

/// Discrete logarithm when the order of `a` is a power of two.
///
/// The exact distribution is the joint `(r₁, r₂)` readout, `2m` bits.
pub fn shor_dlog_pow2(n_mod: u64, a: u64, b: u64, seed: u64) -> Result<AlgorithmResult<DlogOutcome>> {
    let r = dlog_inputs(n_mod, a, b)?;
    if r < 2 || !r.is_power_of_two() {
        return domain(format!("order {r} is not a power of two ≥ 2"));
    }
    let m = r.trailing_zeros() as usize;
    let n = ceil_log2(n_mod) as usize;
    let width = 2 * m + n;
    let mut prep = Circuit::new(width);
    prep.h_layer(0..2 * m)?;
    let s = dlog_oracle(n_mod, a, b, m)?.apply(&simulate(&prep, &qstate::basis_state(width, 0)?)?)?;

    let mut iqft = iqft_on(width, 0, m)?;
    iqft.append_at(&inverse_qft_circuit(m)?, m)?;
    let regs: Vec<usize> = (0..2 * m).collect();
    let joint = marginal(&simulate(&iqft, &s)?, &regs)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let third: Vec<usize> = (2 * m..width).collect();
    let after = simulate(&iqft, &qstate::measure(&s, &third, &mut rng)?.post_state)?;
    let pair = qstate::measure(&after, &regs, &mut rng)?.outcome;
    let (r1, r2) = (pair >> m, pair & (r - 1));

    let success_probability = (0..1u64 << (2 * m))
        .filter(|&p| dlog_recover(p >> m, p & (r - 1), r, a, b, n_mod).is_some())
        .map(|p| joint.probability(p))
        .sum();
    let found = dlog_recover(r1, r2, r, a, b, n_mod);
    Ok(AlgorithmResult {
        answer: DlogOutcome { s: found, r1, r2, order: r, success_probability },
        exact_distribution: Some(joint),
        rounds_used: 1,
        success: found.is_some(),
    })
}
