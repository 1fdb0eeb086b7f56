//! Simon's hidden-string algorithm.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::AlgorithmResult;
use crate::circuit::{simulate, Circuit};
use crate::error::{domain, Error, Result};
use crate::gf2::{simon_postprocess, BitMatrix};
use crate::qstate::{basis_state, marginal, Distribution};

/// First-register distribution of one quantum round: `H`, oracle, `H`.
///
/// Measuring the second register before the last Hadamards would not change
/// this marginal, so the round is simulated without it.
pub fn simon_round_distribution(oracle: &Circuit, n: usize) -> Result<Distribution> {
    if n == 0 || oracle.num_qubits() != 2 * n {
        return domain(format!("oracle must act on 2n = {} qubits", 2 * n));
    }
    let mut c = Circuit::new(2 * n);
    c.h_layer(0..n)?;
    c.append_at(oracle, 0)?;
    c.h_layer(0..n)?;
    let out = simulate(&c, &basis_state(2 * n, 0)?)?;
    marginal(&out, &(0..n).collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimonBatch {
    pub equations: Vec<u64>,
    /// The hidden string when the equations had rank `n−1` and the probe agreed.
    pub candidate: Option<u64>,
}

/// Draws `n−1` rounds from `round` and runs the classical part once.
pub fn simon_batch<R: Rng + ?Sized>(
    round: &Distribution,
    n: usize,
    f_probe: impl Fn(u64) -> u64,
    rng: &mut R,
) -> Result<SimonBatch> {
    let counts = round.sample((n - 1) as u64, rng)?;
    let equations: Vec<u64> = counts
        .sorted_entries()
        .into_iter()
        .flat_map(|(x, c)| std::iter::repeat_n(x, c as usize))
        .collect();
    let candidate = match simon_postprocess(&BitMatrix::new(n, equations.clone())?, f_probe) {
        Ok(s) => Some(s),
        Err(Error::InsufficientData(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SimonBatch { equations, candidate })
}

/// Repeats batches of `n−1` rounds until one recovers `s`, at most
/// `1 + max_restarts` batches in total.
pub fn simon(
    oracle: &Circuit,
    n: usize,
    f_probe: impl Fn(u64) -> u64,
    max_restarts: u32,
    seed: u64,
) -> Result<AlgorithmResult<Option<u64>>> {
    let round = simon_round_distribution(oracle, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rounds = 0;
    for _ in 0..=max_restarts {
        let batch = simon_batch(&round, n, &f_probe, &mut rng)?;
        rounds += (n - 1) as u64;
        if batch.candidate.is_some() {
            return Ok(AlgorithmResult {
                answer: batch.candidate,
                exact_distribution: Some(round),
                rounds_used: rounds,
                success: true,
            });
        }
    }
    Ok(AlgorithmResult { answer: None, exact_distribution: Some(round), rounds_used: rounds, success: false })
}
