//! Gate matrices and the controlled, strided application kernel.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::qstate::StateVector;

pub type Matrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Unitary tolerance applied by every constructor.
pub const UNITARY_TOL: f64 = 1e-10;

/// A named unitary on `arity` qubits.
///
/// Row/column index bit `j`, counted from the most significant end, belongs to
/// the `j`-th target of a [`GateApplication`].
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    name: String,
    arity: usize,
    matrix: Arc<Matrix>,
}

impl Gate {
    pub fn new(name: impl Into<String>, matrix: Matrix) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() || dim < 2 || !dim.is_power_of_two() {
            return domain("gate matrix must be square with power-of-two size");
        }
        if !is_unitary(&matrix, UNITARY_TOL) {
            return domain("gate matrix is not unitary");
        }
        Ok(Self { name: name.into(), arity: dim.trailing_zeros() as usize, matrix: Arc::new(matrix) })
    }

    fn known(name: &str, dim: usize, entries: &[Complex64]) -> Self {
        let matrix = Matrix::from_row_slice(dim, dim, entries);
        Self { name: name.to_string(), arity: dim.trailing_zeros() as usize, matrix: Arc::new(matrix) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Conjugate transpose, named with a `†` suffix (or without one if it had it).
    pub fn dagger(&self) -> Self {
        let name = match self.name.strip_suffix('†') {
            Some(base) => base.to_string(),
            None if matches!(self.name.as_str(), "I" | "X" | "Y" | "Z" | "H" | "SWAP") => self.name.clone(),
            None => format!("{}†", self.name),
        };
        Self { name, arity: self.arity, matrix: Arc::new(self.matrix.adjoint()) }
    }

    /// `U^{2^j}` by repeated squaring.
    pub fn pow2(&self, j: u32) -> Self {
        let mut m = (*self.matrix).clone();
        for _ in 0..j {
            m = &m * &m;
        }
        Self { name: format!("{}^{}", self.name, 1u64 << j), arity: self.arity, matrix: Arc::new(m) }
    }
}

/// One of the fixed gates: I, X, Y, Z, H, S, Sdg, T, Tdg, SWAP.
pub fn standard_gate(name: &str) -> Result<Gate> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let t = Complex64::from_polar(1.0, PI / 4.0);
    Ok(match name {
        "I" => Gate::known("I", 2, &[ONE, ZERO, ZERO, ONE]),
        "X" => Gate::known("X", 2, &[ZERO, ONE, ONE, ZERO]),
        "Y" => Gate::known("Y", 2, &[ZERO, -I, I, ZERO]),
        "Z" => Gate::known("Z", 2, &[ONE, ZERO, ZERO, -ONE]),
        "H" => Gate::known("H", 2, &[h, h, h, -h]),
        "S" => Gate::known("S", 2, &[ONE, ZERO, ZERO, I]),
        "Sdg" => Gate::known("Sdg", 2, &[ONE, ZERO, ZERO, -I]),
        "T" => Gate::known("T", 2, &[ONE, ZERO, ZERO, t]),
        "Tdg" => Gate::known("Tdg", 2, &[ONE, ZERO, ZERO, t.conj()]),
        "SWAP" => Gate::known(
            "SWAP",
            4,
            &[
                ONE, ZERO, ZERO, ZERO, //
                ZERO, ZERO, ONE, ZERO, //
                ZERO, ONE, ZERO, ZERO, //
                ZERO, ZERO, ZERO, ONE,
            ],
        ),
        _ => return domain(format!("unknown gate {name:?}")),
    })
}

pub(crate) fn x() -> Gate {
    standard_gate("X").unwrap()
}

pub(crate) fn h() -> Gate {
    standard_gate("H").unwrap()
}

pub(crate) fn z() -> Gate {
    standard_gate("Z").unwrap()
}

/// The general one-qubit gate `U(θ, φ, λ)`.
pub fn u_gate(theta: f64, phi: f64, lambda: f64) -> Gate {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    Gate::known(
        "U",
        2,
        &[
            Complex64::new(c, 0.0),
            -Complex64::from_polar(s, lambda),
            Complex64::from_polar(s, phi),
            Complex64::from_polar(c, lambda + phi),
        ],
    )
}

pub fn rx(theta: f64) -> Gate {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    Gate::known("Rx", 2, &[Complex64::new(c, 0.0), -I * s, -I * s, Complex64::new(c, 0.0)])
}

pub fn ry(theta: f64) -> Gate {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    Gate::known("Ry", 2, &[c.into(), (-s).into(), s.into(), c.into()])
}

/// `Rz(φ) = e^{-iφ/2} diag(1, e^{iφ})`.
pub fn rz(phi: f64) -> Gate {
    let g = Complex64::from_polar(1.0, -phi / 2.0);
    Gate::known("Rz", 2, &[g, ZERO, ZERO, g * Complex64::from_polar(1.0, phi)])
}

/// `diag(1, e^{iλ})`.
pub fn phase(lambda: f64) -> Gate {
    Gate::known("P", 2, &[ONE, ZERO, ZERO, Complex64::from_polar(1.0, lambda)])
}

/// `R_k = diag(1, e^{2πi/2^k})`.
pub fn rk_phase(k: u32) -> Gate {
    let angle = 2.0 * PI / 2f64.powi(k as i32);
    let mut g = phase(angle);
    g.name = format!("R{k}");
    g
}

/// Max-norm test of `m†m = I`.
pub fn is_unitary(m: &Matrix, tol: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let p = m.adjoint() * m;
    let n = m.nrows();
    (0..n).all(|i| (0..n).all(|j| (p[(i, j)] - if i == j { ONE } else { ZERO }).norm() <= tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Fires on `|1⟩` (filled dot).
    Positive,
    /// Fires on `|0⟩` (open dot).
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn pos(qubit: usize) -> Self {
        Self { qubit, polarity: Polarity::Positive }
    }

    pub fn neg(qubit: usize) -> Self {
        Self { qubit, polarity: Polarity::Negative }
    }

    pub fn flipped(self) -> Self {
        let polarity = match self.polarity {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        };
        Self { qubit: self.qubit, polarity }
    }
}

/// A gate, the qubits it acts on, and the controls that gate it.
#[derive(Clone, Debug, PartialEq)]
pub struct GateApplication {
    pub gate: Gate,
    pub targets: Vec<usize>,
    pub controls: Vec<Control>,
}

impl GateApplication {
    pub fn new(gate: Gate, targets: Vec<usize>, controls: Vec<Control>) -> Result<Self> {
        if targets.len() != gate.arity() {
            return domain(format!("{} acts on {} qubits, got {}", gate.name(), gate.arity(), targets.len()));
        }
        let mut all: Vec<usize> = targets.iter().copied().chain(controls.iter().map(|c| c.qubit)).collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return domain("target and control qubits overlap");
        }
        Ok(Self { gate, targets, controls })
    }

    /// Largest qubit index mentioned.
    pub fn max_qubit(&self) -> usize {
        self.targets.iter().copied().chain(self.controls.iter().map(|c| c.qubit)).max().unwrap_or(0)
    }

    pub fn dagger(&self) -> Self {
        Self { gate: self.gate.dagger(), targets: self.targets.clone(), controls: self.controls.clone() }
    }

    /// True for an X with exactly two controls.
    pub fn is_toffoli(&self) -> bool {
        self.gate.name() == "X" && self.controls.len() == 2
    }
}

impl fmt::Display for GateApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let targets: Vec<String> = self.targets.iter().map(|t| t.to_string()).collect();
        let controls: Vec<String> = self
            .controls
            .iter()
            .map(|c| format!("({},{})", c.qubit, if c.polarity == Polarity::Positive { '+' } else { '-' }))
            .collect();
        write!(f, "{} targets=[{}] controls=[{}]", self.gate.name(), targets.join(","), controls.join(","))
    }
}

/// Returns `app` applied to `s`.
pub fn apply(s: &StateVector, app: &GateApplication) -> Result<StateVector> {
    let mut out = s.clone();
    apply_in_place(&mut out, app)?;
    Ok(out)
}

/// In-place version of [`apply`].
pub fn apply_in_place(s: &mut StateVector, app: &GateApplication) -> Result<()> {
    let n = s.num_qubits();
    if app.max_qubit() >= n {
        return domain(format!("gate touches qubit {} of a {n}-qubit state", app.max_qubit()));
    }
    let (cmask, cval) = control_masks(n, &app.controls);
    let k = app.targets.len();
    let offsets: Vec<usize> = (0..1usize << k)
        .map(|l| {
            (0..k)
                .filter(|j| (l >> (k - 1 - j)) & 1 == 1)
                .map(|j| 1usize << (n - 1 - app.targets[j]))
                .sum()
        })
        .collect();
    let tmask: usize = offsets[offsets.len() - 1];
    let m = app.gate.matrix();
    let amps = s.amps_mut();

    if k == 1 {
        let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let step = tmask;
        for base in 0..amps.len() {
            if base & step != 0 || base & cmask != cval {
                continue;
            }
            let (u, v) = (amps[base], amps[base | step]);
            amps[base] = a * u + b * v;
            amps[base | step] = c * u + d * v;
        }
        return Ok(());
    }

    let dim = offsets.len();
    let mut buf = vec![ZERO; dim];
    for base in 0..amps.len() {
        if base & tmask != 0 || base & cmask != cval {
            continue;
        }
        for (slot, off) in buf.iter_mut().zip(&offsets) {
            *slot = amps[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let mut acc = ZERO;
            for (col, v) in buf.iter().enumerate() {
                acc += m[(r, col)] * v;
            }
            amps[base | off] = acc;
        }
    }
    Ok(())
}

/// Bit mask of the control qubits and the value they must hold.
pub(crate) fn control_masks(n: usize, controls: &[Control]) -> (usize, usize) {
    controls.iter().fold((0, 0), |(mask, val), c| {
        let bit = 1usize << (n - 1 - c.qubit);
        (mask | bit, if c.polarity == Polarity::Positive { val | bit } else { val })
    })
}
