//! Circuit IR, exact simulation, shot sampling and unitary extraction.

use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::gates::{self, apply_in_place, Control, Gate, GateApplication, Matrix};
use crate::qstate::{self, basis_state, Distribution, StateVector};

/// Default qubit cap for [`simulate`].
pub const DEFAULT_MAX_QUBITS: usize = 20;
/// Hard ceiling even when `QSIM_MAX_QUBITS` asks for more.
pub const ABSOLUTE_MAX_QUBITS: usize = 24;
/// Qubit cap for [`unitary_of`].
pub const MAX_UNITARY_QUBITS: usize = 12;

/// The simulate cap, honouring `QSIM_MAX_QUBITS` when it parses.
pub fn max_qubits() -> usize {
    std::env::var("QSIM_MAX_QUBITS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.clamp(1, ABSOLUTE_MAX_QUBITS))
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

pub(crate) fn check_width(n: usize) -> Result<()> {
    let cap = max_qubits();
    if n > cap {
        return Err(Error::Resource(format!("{n} qubits exceeds the simulation cap of {cap}")));
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<GateApplication>,
    measurements: Option<Vec<usize>>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self { num_qubits, ops: Vec::new(), measurements: None }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[GateApplication] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn measurements(&self) -> Option<&[usize]> {
        self.measurements.as_deref()
    }

    pub fn push(&mut self, app: GateApplication) -> Result<&mut Self> {
        if self.measurements.is_some() {
            return domain("no gates may follow the terminal measurements");
        }
        if app.max_qubit() >= self.num_qubits {
            return domain(format!("qubit {} outside a {}-qubit circuit", app.max_qubit(), self.num_qubits));
        }
        self.ops.push(app);
        Ok(self)
    }

    pub fn gate(&mut self, g: Gate, targets: &[usize]) -> Result<&mut Self> {
        self.push(GateApplication::new(g, targets.to_vec(), vec![])?)
    }

    pub fn controlled(&mut self, g: Gate, targets: &[usize], controls: &[Control]) -> Result<&mut Self> {
        self.push(GateApplication::new(g, targets.to_vec(), controls.to_vec())?)
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.gate(gates::h(), &[q])
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.gate(gates::x(), &[q])
    }

    pub fn z(&mut self, q: usize) -> Result<&mut Self> {
        self.gate(gates::z(), &[q])
    }

    pub fn cx(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.controlled(gates::x(), &[target], &[Control::pos(control)])
    }

    /// Multi-controlled X.
    pub fn mcx(&mut self, controls: &[Control], target: usize) -> Result<&mut Self> {
        self.controlled(gates::x(), &[target], controls)
    }

    /// H on each listed qubit.
    pub fn h_layer(&mut self, qubits: impl IntoIterator<Item = usize>) -> Result<&mut Self> {
        for q in qubits {
            self.h(q)?;
        }
        Ok(self)
    }

    /// Declares the terminal measurement list.
    pub fn measure(&mut self, qubits: &[usize]) -> Result<&mut Self> {
        qstate::check_qubits(self.num_qubits, qubits)?;
        self.measurements = Some(qubits.to_vec());
        Ok(self)
    }

    /// Appends `other`, sending its qubit `j` to `map[j]`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<&mut Self> {
        if map.len() != other.num_qubits {
            return domain("qubit map length must equal the appended circuit's width");
        }
        for op in &other.ops {
            let targets = op.targets.iter().map(|&t| map[t]).collect();
            let controls = op
                .controls
                .iter()
                .map(|c| Control { qubit: map[c.qubit], polarity: c.polarity })
                .collect();
            self.push(GateApplication::new(op.gate.clone(), targets, controls)?)?;
        }
        Ok(self)
    }

    /// Appends `other` on qubits `offset..offset + other.num_qubits()`.
    pub fn append_at(&mut self, other: &Circuit, offset: usize) -> Result<&mut Self> {
        let map: Vec<usize> = (offset..offset + other.num_qubits).collect();
        self.append_mapped(other, &map)
    }

    /// Reversed op order with every gate replaced by its adjoint.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            ops: self.ops.iter().rev().map(GateApplication::dagger).collect(),
            measurements: None,
        }
    }

    /// Same ops on a wider register.
    pub fn widened(&self, num_qubits: usize) -> Result<Circuit> {
        if num_qubits < self.num_qubits {
            return domain("cannot narrow a circuit");
        }
        Ok(Circuit { num_qubits, ops: self.ops.clone(), measurements: self.measurements.clone() })
    }

    /// Number of ops whose gate carries `name`.
    pub fn count_named(&self, name: &str) -> usize {
        self.ops.iter().filter(|o| o.gate.name() == name).count()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        if let Some(m) = &self.measurements {
            let list: Vec<String> = m.iter().map(|q| q.to_string()).collect();
            writeln!(f, "MEASURE qubits=[{}]", list.join(","))?;
        }
        Ok(())
    }
}

/// Applies the ops of `c` to `initial`, left to right.
pub fn simulate(c: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if initial.num_qubits() != c.num_qubits {
        return domain(format!(
            "circuit has {} qubits but the state has {}",
            c.num_qubits,
            initial.num_qubits()
        ));
    }
    check_width(c.num_qubits)?;
    let mut s = initial.clone();
    apply_ops(&mut s, c)?;
    Ok(s)
}

pub(crate) fn apply_ops(s: &mut StateVector, c: &Circuit) -> Result<()> {
    for op in &c.ops {
        apply_in_place(s, op)?;
    }
    Ok(())
}

/// Samples the declared measurements of `c` run on `|0…0⟩`.
pub fn run(c: &Circuit, shots: u64, seed: u64) -> Result<Distribution> {
    let Some(measured) = c.measurements.as_deref() else {
        return domain("circuit declares no measurements");
    };
    let out = simulate(c, &basis_state(c.num_qubits, 0)?)?;
    let exact = qstate::marginal(&out, measured)?;
    exact.sample(shots, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// The full `2^n × 2^n` operator of `c`, column `x` being `simulate(c, |x⟩)`.
pub fn unitary_of(c: &Circuit) -> Result<Matrix> {
    let n = c.num_qubits;
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::Resource(format!("unitary_of is capped at {MAX_UNITARY_QUBITS} qubits, got {n}")));
    }
    let dim = 1usize << n;
    let mut u = Matrix::zeros(dim, dim);
    for x in 0..dim {
        let col = simulate(c, &basis_state(n, x as u64)?)?;
        for (r, a) in col.amplitudes().iter().enumerate() {
            u[(r, x)] = *a;
        }
    }
    Ok(u)
}

/// Whether `a = γ b` for some unit `γ`, within `tol` in max norm.
pub fn equiv_up_to_phase(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let Some((idx, bmax)) = b.iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm())) else {
        return true;
    };
    if bmax.norm() == 0.0 {
        return a.iter().all(|e| e.norm() <= tol);
    }
    let ratio = a.as_slice()[idx] / bmax;
    let gamma = if ratio.norm() > 0.0 { ratio / ratio.norm() } else { Complex64::new(1.0, 0.0) };
    a.iter().zip(b.iter()).all(|(x, y)| (x - gamma * y).norm() <= tol)
}
