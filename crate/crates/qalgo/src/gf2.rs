//! Linear algebra over GF(2) with rows packed into `u64` words.
//!
//! Column `j` of an `n`-column matrix is bit `n-1-j` of a row word, so a row
//! prints as its bitstring.

use crate::error::{domain, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn new(ncols: usize, rows: Vec<u64>) -> Result<Self> {
        if ncols == 0 || ncols > 64 {
            return domain("width must be between 1 and 64");
        }
        if ncols < 64 && rows.iter().any(|r| r >> ncols != 0) {
            return domain("row wider than the matrix");
        }
        Ok(Self { ncols, rows })
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn push(&mut self, row: u64) {
        self.rows.push(row);
    }

    fn col_bit(&self, j: usize) -> u64 {
        1u64 << (self.ncols - 1 - j)
    }

    /// Reduced row echelon form: non-zero rows and their pivot columns.
    fn rref(&self) -> (Vec<u64>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for j in 0..self.ncols {
            let bit = self.col_bit(j);
            let Some(p) = (next..rows.len()).find(|&i| rows[i] & bit != 0) else { continue };
            rows.swap(next, p);
            let pivot_row = rows[next];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != next && *r & bit != 0 {
                    *r ^= pivot_row;
                }
            }
            pivots.push(j);
            next += 1;
        }
        rows.truncate(next);
        (rows, pivots)
    }
}

pub fn dot(x: u64, s: u64) -> u64 {
    ((x & s).count_ones() & 1) as u64
}

pub fn rank(m: &BitMatrix) -> usize {
    m.rref().1.len()
}

/// Basis of `{s : m·s = 0}`, one vector per free column in ascending order.
pub fn nullspace_basis(m: &BitMatrix) -> Vec<u64> {
    let (rows, pivots) = m.rref();
    (0..m.ncols)
        .filter(|j| !pivots.contains(j))
        .map(|free| {
            let fbit = m.col_bit(free);
            rows.iter()
                .zip(&pivots)
                .filter(|(r, _)| *r & fbit != 0)
                .fold(fbit, |v, (_, &p)| v | m.col_bit(p))
        })
        .collect()
}

/// Recovers Simon's hidden string from rank `n−1` equations `x·s = 0`.
///
/// The single probe `f(s) = f(0)` confirms the candidate.
pub fn simon_postprocess(equations: &BitMatrix, f_probe: impl Fn(u64) -> u64) -> Result<u64> {
    let n = equations.ncols;
    let r = rank(equations);
    if r + 1 < n {
        return Err(Error::InsufficientData(format!("rank {r} but {} needed", n - 1)));
    }
    let basis = nullspace_basis(equations);
    let Some(&s) = basis.first() else {
        return domain("equations admit only s = 0");
    };
    if f_probe(s) != f_probe(0) {
        return domain(format!("probe rejects candidate {s:0n$b}"));
    }
    Ok(s)
}
