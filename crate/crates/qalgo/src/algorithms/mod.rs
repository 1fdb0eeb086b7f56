//! Algorithm drivers. Each returns its answer next to the exact
//! pre-measurement distribution it was read from.

use crate::qstate::Distribution;

pub mod deutsch;
pub mod grover;
pub mod qft;
pub mod qpe;
pub mod shor;
pub mod simon;

pub use deutsch::{bernstein_vazirani, deutsch, deutsch_jozsa, dj_classical_randomized, FunctionKind};
pub use grover::{grover, grover_unknown_m, sat_solve, GroverGeometry, Variant};
pub use qft::{crk_decomposition, inverse_qft_circuit, qft_circuit};
pub use qpe::{qpe, qpe_dlog, qpe_order_finding, quantum_counting, QpeUnitary};
pub use shor::{shor_dlog_pow2, shor_factor, shor_quantum_part, ShorMode};
pub use simon::simon;

#[derive(Clone, Debug, PartialEq)]
pub struct AlgorithmResult<T> {
    pub answer: T,
    /// Absent only when the register is too wide to hold densely.
    pub exact_distribution: Option<Distribution>,
    pub rounds_used: u64,
    pub success: bool,
}

impl<T> AlgorithmResult<T> {
    pub(crate) fn exact(answer: T, dist: Distribution) -> Self {
        Self { answer, exact_distribution: Some(dist), rounds_used: 1, success: true }
    }

    /// The exact distribution, which every driver in this crate provides.
    pub fn distribution(&self) -> &Distribution {
        self.exact_distribution.as_ref().expect("driver records its distribution")
    }
}
