//! Exact linear algebra over the rationals: dense matrices, rank, nullspace,
//! column space, solving, inversion and quotient dimensions.
//!
//! All entries are `BigRational`s, so every result is exact; there is no
//! tolerance anywhere in this crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The base field: rationals with arbitrary-precision integers.
pub type Q = BigRational;

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Render a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p` or `p/q` with optional sign. The denominator must be nonzero.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational: {s:?}"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
        Some((p, q)) => {
            let n: BigInt = p.parse().map_err(|_| bad())?;
            let d: BigInt = q.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
    }
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Q>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![q_zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, q_one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .fold(q_zero(), |acc, t| acc + t)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&q_int(-1))
    }
}

/// Row-reduce in place to reduced row echelon form; returns the pivot columns.
fn rref(m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..m.cols {
        if pr >= m.rows {
            break;
        }
        // partial pivoting: pick the entry of largest absolute value for
        // stability of intermediate sizes (still exact either way)
        let mut best: Option<usize> = None;
        for r in pr..m.rows {
            if !m.get(r, col).is_zero() {
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if m.get(r, col).abs() > m.get(b, col).abs() {
                            best = Some(r);
                        }
                    }
                }
            }
        }
        let Some(prow) = best else { continue };
        if prow != pr {
            for j in 0..m.cols {
                let a = m.get(pr, j).clone();
                let b = m.get(prow, j).clone();
                m.set(pr, j, b);
                m.set(prow, j, a);
            }
        }
        let inv = m.get(pr, col).recip();
        for j in col..m.cols {
            let v = m.get(pr, j) * &inv;
            m.set(pr, j, v);
        }
        for r in 0..m.rows {
            if r == pr || m.get(r, col).is_zero() {
                continue;
            }
            let factor = m.get(r, col).clone();
            for j in col..m.cols {
                let v = m.get(r, j) - &factor * m.get(pr, j);
                m.set(r, j, v);
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

/// Dimension of the row (equivalently column) space.
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// A linear subspace of Q^n given by a basis of coordinate vectors.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// Build from spanning vectors, keeping an independent subset.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Q>>) -> Self {
        let mut basis: Vec<Vec<Q>> = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), ambient_dim);
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let mut stacked = basis.clone();
            stacked.push(v.clone());
            if rank(&Matrix::from_rows(stacked)) > basis.len() {
                basis.push(v);
            }
        }
        Subspace { ambient_dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut stacked = self.basis.clone();
        stacked.push(v.to_vec());
        rank(&Matrix::from_rows(stacked)) == self.basis.len()
    }
}

/// Basis of the kernel {v : m v = 0}.
pub fn nullspace(m: &Matrix) -> Subspace {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; m.cols];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![q_zero(); m.cols];
        v[free] = q_one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a.get(r, free).clone();
        }
        basis.push(v);
    }
    Subspace {
        ambient_dim: m.cols,
        basis,
    }
}

/// Basis of the column space of `m`, as vectors in Q^rows.
pub fn column_space(m: &Matrix) -> Subspace {
    let cols: Vec<Vec<Q>> = (0..m.cols)
        .map(|j| (0..m.rows).map(|i| m.get(i, j).clone()).collect())
        .collect();
    Subspace::span(m.rows, cols)
}

/// dim z - dim b, after verifying b is contained in z.
pub fn quotient_dim(z: &Subspace, b: &Subspace) -> Result<usize> {
    assert_eq!(z.ambient_dim, b.ambient_dim, "ambient dimension mismatch");
    for v in &b.basis {
        if !z.contains(v) {
            return Err(Error::ContainmentViolation);
        }
    }
    Ok(z.dim() - b.dim())
}

/// A particular solution of m x = rhs, or `None` when inconsistent.
pub fn solve(m: &Matrix, rhs: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(rhs.len(), m.rows, "rhs length must equal row count");
    let mut aug = Matrix::zero(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, rhs[i].clone());
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&m.cols) {
        return None; // pivot in the rhs column: inconsistent
    }
    let mut x = vec![q_zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(r, m.cols).clone();
    }
    Some(x)
}

/// Exact inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    assert_eq!(m.rows, m.cols, "inverse requires a square matrix");
    let n = m.rows;
    let mut aug = Matrix::zero(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, q_one());
    }
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(k, &p)| k != p) {
        return None;
    }
    let mut out = Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Some(out)
}
