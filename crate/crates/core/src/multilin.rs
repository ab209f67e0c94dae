//! Dense multilinear maps between based vector spaces.
//!
//! A `MultiLin` stores the coefficients of a multilinear map
//! V_1 x ... x V_n -> W on the chosen bases: `at(&[i1, ..., in])` is the
//! coordinate vector of the image of the basis tuple. Arity 0 maps are just
//! vectors in W. This one type carries Hochschild cochains, cocycles, operator
//! matrices viewed as maps, tagged operad components and lifts to A (+) M.

use num::Zero;

use crate::qlinalg::{q_zero, Matrix, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiLin {
    shape_in: Vec<usize>,
    dim_out: usize,
    coeffs: Vec<Q>,
}

/// Iterate all multi-indices of the given shape in row-major order.
pub fn multi_indices(shape: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in shape {
        let mut next = Vec::with_capacity(out.len() * s);
        for prefix in &out {
            for i in 0..s {
                let mut v = prefix.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

impl MultiLin {
    pub fn zero(shape_in: Vec<usize>, dim_out: usize) -> Self {
        let size: usize = shape_in.iter().product::<usize>() * dim_out;
        MultiLin {
            shape_in,
            dim_out,
            coeffs: vec![q_zero(); size],
        }
    }

    pub fn from_flat(shape_in: Vec<usize>, dim_out: usize, coeffs: Vec<Q>) -> Self {
        assert_eq!(shape_in.iter().product::<usize>() * dim_out, coeffs.len());
        MultiLin {
            shape_in,
            dim_out,
            coeffs,
        }
    }

    /// View a matrix (rows = dim_out, cols = source dim) as an arity-1 map.
    pub fn from_matrix(m: &Matrix) -> Self {
        let mut out = MultiLin::zero(vec![m.cols], m.rows);
        for j in 0..m.cols {
            for i in 0..m.rows {
                out.set(&[j], i, m.get(i, j).clone());
            }
        }
        out
    }

    /// Matrix of an arity-1 map (rows = dim_out, cols = source dim).
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.arity(), 1);
        let cols = self.shape_in[0];
        Matrix::from_fn(self.dim_out, cols, |i, j| self.at(&[j])[i].clone())
    }

    pub fn arity(&self) -> usize {
        self.shape_in.len()
    }

    pub fn shape_in(&self) -> &[usize] {
        &self.shape_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn flat(&self) -> &[Q] {
        &self.coeffs
    }

    fn offset(&self, multi: &[usize]) -> usize {
        assert_eq!(multi.len(), self.shape_in.len(), "bad multi-index arity");
        let mut idx = 0;
        for (i, &s) in multi.iter().zip(&self.shape_in) {
            debug_assert!(*i < s);
            idx = idx * s + i;
        }
        idx * self.dim_out
    }

    /// Image of a basis tuple, as a coordinate slice of length `dim_out`.
    pub fn at(&self, multi: &[usize]) -> &[Q] {
        let o = self.offset(multi);
        &self.coeffs[o..o + self.dim_out]
    }

    pub fn set(&mut self, multi: &[usize], k: usize, v: Q) {
        let o = self.offset(multi);
        self.coeffs[o + k] = v;
    }

    pub fn add_at(&mut self, multi: &[usize], vec: &[Q]) {
        let o = self.offset(multi);
        for (k, v) in vec.iter().enumerate() {
            self.coeffs[o + k] = &self.coeffs[o + k] + v;
        }
    }

    /// Arity-0 maps are identified with vectors in the target.
    pub fn constant(&self) -> &[Q] {
        assert_eq!(self.arity(), 0);
        &self.coeffs
    }

    pub fn from_vector(v: Vec<Q>) -> Self {
        let dim = v.len();
        MultiLin::from_flat(Vec::new(), dim, v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Full multilinear evaluation on coordinate vectors.
    pub fn apply(&self, args: &[&[Q]]) -> Vec<Q> {
        assert_eq!(args.len(), self.shape_in.len());
        for (a, &s) in args.iter().zip(&self.shape_in) {
            assert_eq!(a.len(), s);
        }
        let mut out = vec![q_zero(); self.dim_out];
        for multi in multi_indices(&self.shape_in) {
            let mut c = None;
            for (slot, &i) in multi.iter().enumerate() {
                let x = &args[slot][i];
                if x.is_zero() {
                    c = None;
                    break;
                }
                c = Some(match c {
                    None => x.clone(),
                    Some(acc) => acc * x,
                });
            }
            let Some(c) = (if self.arity() == 0 { Some(num::One::one()) } else { c }) else {
                continue;
            };
            let img = self.at(&multi);
            for k in 0..self.dim_out {
                if !img[k].is_zero() {
                    out[k] = &out[k] + &(&c * &img[k]);
                }
            }
        }
        out
    }

    /// Evaluation at a basis tuple except for one slot holding an arbitrary
    /// coordinate vector. This is the workhorse of all composition formulas.
    pub fn apply_basis_with_vec(&self, basis: &[usize], slot: usize, v: &[Q]) -> Vec<Q> {
        assert_eq!(basis.len() + 1, self.shape_in.len() + 0);
        assert!(slot < self.shape_in.len());
        assert_eq!(v.len(), self.shape_in[slot]);
        let mut out = vec![q_zero(); self.dim_out];
        let mut multi = Vec::with_capacity(self.shape_in.len());
        for t in 0..v.len() {
            if v[t].is_zero() {
                continue;
            }
            multi.clear();
            multi.extend_from_slice(&basis[..slot]);
            multi.push(t);
            multi.extend_from_slice(&basis[slot..]);
            let img = self.at(&multi);
            for k in 0..self.dim_out {
                if !img[k].is_zero() {
                    out[k] = &out[k] + &(&v[t] * &img[k]);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &MultiLin) -> MultiLin {
        assert_eq!(self.shape_in, other.shape_in);
        assert_eq!(self.dim_out, other.dim_out);
        MultiLin {
            shape_in: self.shape_in.clone(),
            dim_out: self.dim_out,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &MultiLin) -> MultiLin {
        assert_eq!(self.shape_in, other.shape_in);
        assert_eq!(self.dim_out, other.dim_out);
        MultiLin {
            shape_in: self.shape_in.clone(),
            dim_out: self.dim_out,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> MultiLin {
        MultiLin {
            shape_in: self.shape_in.clone(),
            dim_out: self.dim_out,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> MultiLin {
        self.scale(&crate::qlinalg::q_int(-1))
    }
}

/// Standard basis vector e_i of Q^n.
pub fn basis_vec(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![q_zero(); n];
    v[i] = num::One::one();
    v
}

/// Parity helper: (-1)^e for a possibly negative exponent.
pub fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        num::One::one()
    } else {
        crate::qlinalg::q_int(-1)
    }
}
