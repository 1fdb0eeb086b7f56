//! Oracle synthesis: truth tables, phase oracles, BV CNOT banks, Boolean
//! expressions with ancilla mirrors, Toffoli ladders and modular-arithmetic
//! permutations.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::circuit::{self, Circuit};
use crate::error::{domain, Error, Result};
use crate::gates::{control_masks, Control, Matrix};
use crate::numtheory::{ceil_log2, log2_pow2_above, mod_pow_u64};
use crate::qstate::{self, parse_bits, StateVector};

/// A function `{0,1}^n_in → {0,1}^n_out` listed row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    n_in: usize,
    n_out: usize,
    rows: Vec<u64>,
}

impl TruthTable {
    pub fn new(n_in: usize, n_out: usize, rows: Vec<u64>) -> Result<Self> {
        if n_in == 0 || n_out == 0 || n_in > 20 || n_out > 63 {
            return domain("truth table dimensions out of range");
        }
        if rows.len() != 1 << n_in {
            return domain(format!("expected {} rows, got {}", 1usize << n_in, rows.len()));
        }
        if rows.iter().any(|r| r >> n_out != 0) {
            return domain("output wider than n_out");
        }
        Ok(Self { n_in, n_out, rows })
    }

    pub fn from_fn(n_in: usize, n_out: usize, f: impl FnMut(u64) -> u64) -> Result<Self> {
        Self::new(n_in, n_out, (0..1u64 << n_in.min(20)).map(f).collect())
    }

    /// Parses one `<input bits> <output bits>` line per input.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(i), Some(o), None) = (parts.next(), parts.next(), parts.next()) else {
                return domain(format!("line {}: expected `<input> <output>`", lineno + 1));
            };
            entries.push((parse_bits(i)?, parse_bits(o)?));
        }
        let Some(&((_, n_in), (_, n_out))) = entries.first() else {
            return domain("empty truth table");
        };
        if n_in > 20 {
            return domain("too many input bits");
        }
        let mut rows = vec![None; 1 << n_in];
        for ((x, wi), (y, wo)) in entries {
            if wi != n_in || wo != n_out {
                return domain("inconsistent bit widths");
            }
            if rows[x as usize].replace(y).is_some() {
                return domain(format!("input {} listed twice", qstate::bitstring(x, n_in)));
            }
        }
        let rows = rows.into_iter().collect::<Option<Vec<_>>>();
        let Some(rows) = rows else {
            return domain("some inputs are missing");
        };
        Self::new(n_in, n_out, rows)
    }

    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .enumerate()
            .map(|(x, y)| format!("{} {}\n", qstate::bitstring(x as u64, self.n_in), qstate::bitstring(*y, self.n_out)))
            .collect()
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.rows[x as usize]
    }

    /// Output bit `j`, counted from the left.
    pub fn column(&self, j: usize) -> Vec<bool> {
        self.rows.iter().map(|y| (y >> (self.n_out - 1 - j)) & 1 == 1).collect()
    }
}

fn row_controls(x: u64, n: usize) -> Vec<Control> {
    (0..n)
        .map(|i| if (x >> (n - 1 - i)) & 1 == 1 { Control::pos(i) } else { Control::neg(i) })
        .collect()
}

/// `|x⟩|j⟩ → |x⟩|j ⊕ f(x)⟩`, one multi-controlled X per 1-row.
pub fn synth_bit_oracle(tt: &TruthTable) -> Result<Circuit> {
    if tt.n_out != 1 {
        return domain("synth_bit_oracle needs a single output bit");
    }
    synth_multi_oracle(tt)
}

/// `|x⟩|y⟩ → |x⟩|y ⊕ f(x)⟩`, one bank of multi-controlled X gates per output column.
pub fn synth_multi_oracle(tt: &TruthTable) -> Result<Circuit> {
    let n = tt.n_in;
    let mut c = Circuit::new(n + tt.n_out);
    for j in 0..tt.n_out {
        for (x, bit) in tt.column(j).into_iter().enumerate() {
            if bit {
                c.mcx(&row_controls(x as u64, n), n + j)?;
            }
        }
    }
    Ok(c)
}

/// `|x⟩ → (−1)^{[x ∈ marked]}|x⟩` on `n` qubits.
pub fn synth_phase_oracle(n: usize, marked: &[u64]) -> Result<Circuit> {
    if n == 0 {
        return domain("need at least one qubit");
    }
    let set: BTreeSet<u64> = marked.iter().copied().collect();
    if set.iter().any(|&x| x >> n != 0) {
        return domain("marked element out of range");
    }
    let last = n - 1;
    let mut c = Circuit::new(n);
    for &x in &set {
        let flip = x & 1 == 0;
        let controls = &row_controls(x, n)[..last];
        if flip {
            c.x(last)?;
        }
        c.h(last)?.mcx(controls, last)?.h(last)?;
        if flip {
            c.x(last)?;
        }
    }
    Ok(c)
}

/// `|x⟩|j⟩ → |x⟩|j ⊕ s·x⟩`: a CNOT from every qubit where `s` has a 1.
pub fn synth_bv_oracle(s: u64, n: usize) -> Result<Circuit> {
    if n == 0 || s >> n != 0 {
        return domain("hidden string does not fit in n bits");
    }
    let mut c = Circuit::new(n + 1);
    for i in (0..n).filter(|i| (s >> (n - 1 - i)) & 1 == 1) {
        c.cx(i, n)?;
    }
    Ok(c)
}

/// The phase-oracle form `Z^{s₀} ⊗ … ⊗ Z^{s_{n−1}}`.
pub fn synth_bv_phase_oracle(s: u64, n: usize) -> Result<Circuit> {
    if n == 0 || s >> n != 0 {
        return domain("hidden string does not fit in n bits");
    }
    let mut c = Circuit::new(n);
    for i in (0..n).filter(|i| (s >> (n - 1 - i)) & 1 == 1) {
        c.z(i)?;
    }
    Ok(c)
}

/// Boolean formula over variables `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BooleanExpr {
    Var(usize),
    Not(Box<BooleanExpr>),
    And(Vec<BooleanExpr>),
    Or(Vec<BooleanExpr>),
    Xor(Vec<BooleanExpr>),
}

impl BooleanExpr {
    pub fn var(i: usize) -> Self {
        BooleanExpr::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BooleanExpr) -> Self {
        BooleanExpr::Not(Box::new(e))
    }

    pub fn and(v: Vec<BooleanExpr>) -> Self {
        BooleanExpr::And(v)
    }

    pub fn or(v: Vec<BooleanExpr>) -> Self {
        BooleanExpr::Or(v)
    }

    pub fn xor(v: Vec<BooleanExpr>) -> Self {
        BooleanExpr::Xor(v)
    }

    /// Evaluates with variable `i` read from bit `n_vars-1-i` of `x`.
    pub fn eval(&self, x: u64, n_vars: usize) -> bool {
        match self {
            BooleanExpr::Var(i) => (x >> (n_vars - 1 - i)) & 1 == 1,
            BooleanExpr::Not(e) => !e.eval(x, n_vars),
            BooleanExpr::And(v) => v.iter().all(|e| e.eval(x, n_vars)),
            BooleanExpr::Or(v) => v.iter().any(|e| e.eval(x, n_vars)),
            BooleanExpr::Xor(v) => v.iter().fold(false, |acc, e| acc ^ e.eval(x, n_vars)),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            BooleanExpr::Var(i) => Some(*i),
            BooleanExpr::Not(e) => e.max_var(),
            BooleanExpr::And(v) | BooleanExpr::Or(v) | BooleanExpr::Xor(v) => {
                v.iter().filter_map(BooleanExpr::max_var).max()
            }
        }
    }

    /// Assignments of `n_vars` variables that satisfy the formula.
    pub fn satisfying(&self, n_vars: usize) -> Vec<u64> {
        (0..1u64 << n_vars).filter(|&x| self.eval(x, n_vars)).collect()
    }
}

impl fmt::Display for BooleanExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, v: &[BooleanExpr], op: &str| {
            write!(f, "(")?;
            for (k, e) in v.iter().enumerate() {
                if k > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")
        };
        match self {
            BooleanExpr::Var(i) if *i < 26 => write!(f, "{}", (b'a' + *i as u8) as char),
            BooleanExpr::Var(i) => write!(f, "x{i}"),
            BooleanExpr::Not(e) => write!(f, "!{e}"),
            BooleanExpr::And(v) => join(f, v, "&"),
            BooleanExpr::Or(v) => join(f, v, "|"),
            BooleanExpr::Xor(v) => join(f, v, "^"),
        }
    }
}

/// Output of [`expr_to_circuit`].
#[derive(Clone, Debug, PartialEq)]
pub struct ExprCircuit {
    pub circuit: Circuit,
    pub num_inputs: usize,
    pub result_qubit: usize,
    pub ancilla_count: usize,
    /// Initial value of each ancilla, in qubit order after the inputs.
    pub ancilla_init: Vec<bool>,
}

impl ExprCircuit {
    /// Basis index for input assignment `x` with every ancilla at its initial value.
    pub fn initial_index(&self, x: u64) -> u64 {
        self.ancilla_init.iter().fold(x, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn initial_state(&self, x: u64) -> Result<StateVector> {
        qstate::basis_state(self.circuit.num_qubits(), self.initial_index(x))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Lit {
    qubit: usize,
    positive: bool,
}

impl Lit {
    fn control(self) -> Control {
        if self.positive {
            Control::pos(self.qubit)
        } else {
            Control::neg(self.qubit)
        }
    }

    fn negated(self) -> Self {
        Lit { qubit: self.qubit, positive: !self.positive }
    }
}

struct ExprBuilder {
    n_inputs: usize,
    init: Vec<bool>,
    // (target, controls) for every X gate, in order
    ops: Vec<(usize, Vec<Control>)>,
    // ops index where the gates writing each ancilla begin
    producer: Vec<usize>,
}

impl ExprBuilder {
    fn alloc(&mut self, init: bool) -> usize {
        self.init.push(init);
        self.producer.push(self.ops.len());
        self.n_inputs + self.init.len() - 1
    }

    fn constant(&mut self, value: bool) -> Lit {
        Lit { qubit: self.alloc(value), positive: true }
    }

    fn literals(&mut self, v: &[BooleanExpr]) -> Vec<Lit> {
        let lits: BTreeSet<Lit> = v.iter().map(|e| self.compile(e)).collect();
        lits.into_iter().collect()
    }

    fn compile(&mut self, e: &BooleanExpr) -> Lit {
        match e {
            BooleanExpr::Var(i) => Lit { qubit: *i, positive: true },
            BooleanExpr::Not(inner) => self.compile(inner).negated(),
            BooleanExpr::And(v) => {
                let lits = self.literals(v);
                if contradictory(&lits) {
                    return self.constant(false);
                }
                match lits.len() {
                    0 => self.constant(true),
                    1 => lits[0],
                    _ => {
                        let anc = self.alloc(false);
                        self.ops.push((anc, lits.iter().map(|l| l.control()).collect()));
                        Lit { qubit: anc, positive: true }
                    }
                }
            }
            BooleanExpr::Or(v) => {
                let lits = self.literals(v);
                if contradictory(&lits) {
                    return self.constant(true);
                }
                match lits.len() {
                    0 => self.constant(false),
                    1 => lits[0],
                    _ => {
                        let anc = self.alloc(true);
                        self.ops.push((anc, lits.iter().map(|l| l.negated().control()).collect()));
                        Lit { qubit: anc, positive: true }
                    }
                }
            }
            BooleanExpr::Xor(v) => {
                let lits: Vec<Lit> = v.iter().map(|e| self.compile(e)).collect();
                match lits.len() {
                    0 => self.constant(false),
                    1 => lits[0],
                    _ => {
                        let anc = self.alloc(false);
                        for l in lits {
                            self.ops.push((anc, vec![l.control()]));
                        }
                        Lit { qubit: anc, positive: true }
                    }
                }
            }
        }
    }
}

fn contradictory(lits: &[Lit]) -> bool {
    lits.windows(2).any(|w| w[0].qubit == w[1].qubit)
}

/// Compiles `e` into X gates with ancillas appended after the `n_vars` inputs.
///
/// AND ancillas start at 0 and OR ancillas at 1. With `uncompute`, every gate
/// before the one writing the result is mirrored so the other ancillas return
/// to their initial values.
pub fn expr_to_circuit(e: &BooleanExpr, n_vars: usize, uncompute: bool) -> Result<ExprCircuit> {
    if n_vars == 0 || e.max_var().is_some_and(|m| m >= n_vars) {
        return domain("expression uses a variable beyond n_vars");
    }
    let mut b = ExprBuilder { n_inputs: n_vars, init: Vec::new(), ops: Vec::new(), producer: Vec::new() };
    let mut lit = b.compile(e);
    if !lit.positive {
        let anc = b.alloc(false);
        b.ops.push((anc, vec![lit.control()]));
        lit = Lit { qubit: anc, positive: true };
    }
    let root_start = if lit.qubit >= n_vars { b.producer[lit.qubit - n_vars] } else { b.ops.len() };
    let mut c = Circuit::new(n_vars + b.init.len());
    for (t, ctrls) in &b.ops {
        c.mcx(ctrls, *t)?;
    }
    if uncompute {
        for (t, ctrls) in b.ops[..root_start].iter().rev() {
            c.mcx(ctrls, *t)?;
        }
    }
    Ok(ExprCircuit {
        circuit: c,
        num_inputs: n_vars,
        result_qubit: lit.qubit,
        ancilla_count: b.init.len(),
        ancilla_init: b.init,
    })
}

/// An `n`-control X built from two-control Toffolis.
#[derive(Clone, Debug, PartialEq)]
pub struct ToffoliLadder {
    pub circuit: Circuit,
    pub controls: Vec<usize>,
    pub ancillas: Vec<usize>,
    pub target: usize,
}

/// Decomposes `Cⁿ(X)` with `n−2` ancillas interlaced after the second control.
pub fn toffoli_ladder(n_controls: usize) -> Result<ToffoliLadder> {
    let n = n_controls;
    if n < 3 {
        return domain("a ladder needs at least three controls");
    }
    let controls: Vec<usize> = (0..n).map(|i| if i < 2 { i } else { 2 * i - 1 }).collect();
    let ancillas: Vec<usize> = (0..n - 2).map(|i| 2 + 2 * i).collect();
    let target = 2 * n - 2;
    let mut c = Circuit::new(2 * n - 1);
    let mut rungs = vec![(controls[0], controls[1], ancillas[0])];
    for i in 1..n - 2 {
        rungs.push((ancillas[i - 1], controls[i + 1], ancillas[i]));
    }
    for &(a, b, t) in &rungs {
        c.mcx(&[Control::pos(a), Control::pos(b)], t)?;
    }
    c.mcx(&[Control::pos(ancillas[n - 3]), Control::pos(controls[n - 1])], target)?;
    for &(a, b, t) in rungs.iter().rev() {
        c.mcx(&[Control::pos(a), Control::pos(b)], t)?;
    }
    Ok(ToffoliLadder { circuit: c, controls, ancillas, target })
}

/// A basis permutation applied by index remapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationOracle {
    total_qubits: usize,
    mapping: Vec<u64>,
}

impl PermutationOracle {
    pub fn new(total_qubits: usize, mapping: Vec<u64>) -> Result<Self> {
        if total_qubits == 0 || total_qubits > circuit::ABSOLUTE_MAX_QUBITS {
            return Err(Error::Resource(format!("{total_qubits} qubits is out of range")));
        }
        if mapping.len() != 1 << total_qubits {
            return domain("mapping length must be 2^total_qubits");
        }
        let mut seen = vec![false; mapping.len()];
        for &y in &mapping {
            match seen.get_mut(y as usize) {
                Some(s) if !*s => *s = true,
                _ => return domain("mapping is not a permutation"),
            }
        }
        Ok(Self { total_qubits, mapping })
    }

    pub fn from_fn(total_qubits: usize, f: impl Fn(u64) -> u64) -> Result<Self> {
        let dim = 1u64 << total_qubits.min(circuit::ABSOLUTE_MAX_QUBITS + 1);
        Self::new(total_qubits, (0..dim).map(f).collect())
    }

    pub fn total_qubits(&self) -> usize {
        self.total_qubits
    }

    pub fn mapping(&self) -> &[u64] {
        &self.mapping
    }

    pub fn image(&self, x: u64) -> u64 {
        self.mapping[x as usize]
    }

    /// `x ↦ next(self(x))`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if next.total_qubits != self.total_qubits {
            return domain("width mismatch");
        }
        Ok(Self {
            total_qubits: self.total_qubits,
            mapping: self.mapping.iter().map(|&y| next.mapping[y as usize]).collect(),
        })
    }

    /// The permutation applied `2^j` times, by squaring.
    pub fn pow2(&self, j: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..j {
            p = p.then(&p).expect("same width");
        }
        p
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (x, &y) in self.mapping.iter().enumerate() {
            inv[y as usize] = x as u64;
        }
        Self { total_qubits: self.total_qubits, mapping: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(x, &y)| x as u64 == y)
    }

    pub fn is_involution(&self) -> bool {
        self.mapping.iter().enumerate().all(|(x, &y)| self.mapping[y as usize] == x as u64)
    }

    /// Dense 0/1 matrix, capped like [`circuit::unitary_of`].
    pub fn to_matrix(&self) -> Result<Matrix> {
        if self.total_qubits > circuit::MAX_UNITARY_QUBITS {
            return Err(Error::Resource("permutation too wide for a dense matrix".into()));
        }
        let dim = self.mapping.len();
        let mut m = Matrix::zeros(dim, dim);
        for (x, &y) in self.mapping.iter().enumerate() {
            m[(y as usize, x)] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Applies the permutation to a state of exactly `total_qubits` qubits.
    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        let targets: Vec<usize> = (0..self.total_qubits).collect();
        self.apply_on(s, &targets, &[])
    }

    /// Applies the permutation to `targets` (first target = most significant
    /// bit of the permutation's index) whenever all `controls` fire.
    pub fn apply_on(&self, s: &StateVector, targets: &[usize], controls: &[Control]) -> Result<StateVector> {
        let n = s.num_qubits();
        if targets.len() != self.total_qubits {
            return domain("target count must equal the permutation width");
        }
        let all: Vec<usize> = targets.iter().copied().chain(controls.iter().map(|c| c.qubit)).collect();
        qstate::check_qubits(n, &all)?;
        let (cmask, cval) = control_masks(n, controls);
        let k = targets.len();
        let tbits: Vec<usize> = targets.iter().map(|&t| 1usize << (n - 1 - t)).collect();
        let tmask: usize = tbits.iter().sum();
        let amps = s.amplitudes();
        let mut out = amps.to_vec();
        for (i, a) in amps.iter().enumerate() {
            if i & cmask != cval {
                continue;
            }
            let y = self.mapping[qstate::sub_index(i, n, targets) as usize];
            let spread: usize = (0..k).filter(|j| (y >> (k - 1 - j)) & 1 == 1).map(|j| tbits[j]).sum();
            out[(i & !tmask) | spread] = *a;
        }
        Ok(StateVector::from_raw(n, out))
    }
}

/// `|ℓ⟩|y⟩ → |ℓ⟩|y ⊕ (a^ℓ mod N)⟩` on `log₂q + ⌈log₂N⌉` qubits.
pub fn modexp_oracle(a: u64, n_mod: u64, q: u64) -> Result<PermutationOracle> {
    if n_mod < 2 {
        return domain("modulus must be at least 2");
    }
    if a.gcd(&n_mod) != 1 {
        return domain(format!("gcd({a}, {n_mod}) ≠ 1"));
    }
    if q < 2 || !q.is_power_of_two() {
        return domain("q must be a power of two ≥ 2");
    }
    let m = q.trailing_zeros() as usize;
    let n = ceil_log2(n_mod) as usize;
    if m + n > circuit::ABSOLUTE_MAX_QUBITS {
        return Err(Error::Resource(format!("{} qubits is too many", m + n)));
    }
    let mut powers = Vec::with_capacity(q as usize);
    let mut p = 1 % n_mod;
    for _ in 0..q {
        powers.push(p);
        p = p * (a % n_mod) % n_mod;
    }
    PermutationOracle::from_fn(m + n, |x| {
        let (ell, y) = (x >> n, x & ((1 << n) - 1));
        (ell << n) | (y ^ powers[ell as usize])
    })
}

/// `|y⟩ → |a·y mod N⟩` for `y < N`, identity above, on `⌈log₂N⌉` qubits.
pub fn modmul_oracle(a: u64, n_mod: u64) -> Result<PermutationOracle> {
    if n_mod < 2 {
        return domain("modulus must be at least 2");
    }
    if a.gcd(&n_mod) != 1 {
        return domain(format!("gcd({a}, {n_mod}) ≠ 1"));
    }
    let n = (ceil_log2(n_mod) as usize).max(1);
    PermutationOracle::from_fn(n, |y| if y < n_mod { (a % n_mod) * y % n_mod } else { y })
}

/// Gate-level `U_N^{(a)}` for an `a` of order 2, on `m + n` qubits with
/// `2^m` the smallest power of two above `N²`.
///
/// When the exponent is even the negative-control CNOT writes 1; when odd the
/// positive-control CNOTs write the bits of `a`.
pub fn order2_modexp_circuit(a: u64, n_mod: u64) -> Result<Circuit> {
    if n_mod < 3 || a.gcd(&n_mod) != 1 {
        return domain("need gcd(a, N) = 1 and N ≥ 3");
    }
    let a = a % n_mod;
    if a == 1 || mod_pow_u64(a, 2, n_mod) != 1 {
        return domain(format!("{a} does not have order 2 modulo {n_mod}"));
    }
    let m = log2_pow2_above(n_mod * n_mod) as usize;
    let n = ceil_log2(n_mod) as usize;
    let lsb = m - 1;
    let mut c = Circuit::new(m + n);
    c.mcx(&[Control::neg(lsb)], m + n - 1)?;
    for j in (0..n).filter(|j| (a >> (n - 1 - j)) & 1 == 1) {
        c.cx(lsb, m + j)?;
    }
    Ok(c)
}
