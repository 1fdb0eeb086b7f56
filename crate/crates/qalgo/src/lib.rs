//! Dense state-vector quantum simulation plus the oracle algorithms that
//! motivated it.
//!
//! | module | contents |
//! |---|---|
//! | [`qstate`] | state vectors, distributions, measurement, Schmidt rank, Bloch angles |
//! | [`gates`] | gate matrices and the controlled strided kernel |
//! | [`circuit`] | circuit IR, simulation, sampling, unitary extraction |
//! | [`oracles`] | truth-table, phase, expression and modular-arithmetic oracles |
//! | [`numtheory`] | gcd, modular powers, orders, continued fractions |
//! | [`gf2`] | rank and nullspace over GF(2) |
//! | [`algorithms`] | Deutsch through quantum counting |
//! | [`cli`] | the `qsim` command line and its JSON report |
//!
//! Qubit 0 is the most significant bit of every basis index.
//!
//! Runnable tours live in `examples/`:
//!
//! ```text
//! cargo run --example bell
//! cargo run --example deutsch_jozsa
//! cargo run --example bernstein_vazirani
//! cargo run --example simon
//! cargo run --example shor
//! cargo run --example discrete_log
//! cargo run --example grover_sat
//! cargo run --example qft
//! cargo run --example phase_estimation
//! cargo run --example counting
//! cargo run --example oracles
//! ```

pub mod algorithms;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod gates;
pub mod gf2;
pub mod numtheory;
pub mod oracles;
pub mod qstate;

pub use circuit::{equiv_up_to_phase, run, simulate, unitary_of, Circuit};
pub use error::{Error, Result};
pub use gates::{apply, standard_gate, Control, Gate, GateApplication, Polarity};
pub use qstate::{basis_state, kron, measure, probabilities, Distribution, StateVector};
