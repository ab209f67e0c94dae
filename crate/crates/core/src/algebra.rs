//! Finite-dimensional associative algebras and bimodules from structure
//! constants, the classical Hochschild complex, twisted semidirect products
//! and subalgebra checks.

use crate::error::{Error, Result};
use crate::multilin::{basis_vec, multi_indices, sign, MultiLin};
use crate::qlinalg::{self, Matrix, Q};
use crate::report::CheckReport;

/// Associative algebra on Q^dim with product tensor `mul`:
/// e_i e_j = sum_k mul[i][j][k] e_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub dim: usize,
    pub mul: MultiLin,
}

impl Algebra {
    pub fn new(dim: usize, mul: MultiLin) -> Result<Self> {
        if mul.shape_in() != [dim, dim] || mul.dim_out() != dim {
            return Err(Error::ShapeMismatch(format!(
                "algebra multiplication tensor must be {dim}x{dim}->{dim}"
            )));
        }
        Ok(Algebra { dim, mul })
    }

    pub fn zero_product(dim: usize) -> Self {
        Algebra {
            dim,
            mul: MultiLin::zero(vec![dim, dim], dim),
        }
    }

    /// Product of coordinate vectors.
    pub fn prod(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.mul.apply(&[a, b])
    }

    pub fn prod_basis(&self, i: usize, j: usize) -> &[Q] {
        self.mul.at(&[i, j])
    }
}

/// Exhaustively check associativity on basis triples.
pub fn check_algebra(a: &Algebra) -> CheckReport {
    let mut report = CheckReport::new();
    let d = a.dim;
    for i in 0..d {
        for j in 0..d {
            let ij = a.prod_basis(i, j).to_vec();
            for k in 0..d {
                let jk = a.prod_basis(j, k).to_vec();
                let lhs = a.mul.apply_basis_with_vec(&[k], 0, &ij);
                let rhs = a.mul.apply_basis_with_vec(&[i], 1, &jk);
                let res = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&res) {
                    report.push("associativity", &[i, j, k], &res);
                }
            }
        }
    }
    report
}

/// A-bimodule on Q^dim: left action tensor (dA x dM -> dM) and right action
/// tensor (dM x dA -> dM).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    pub algebra_dim: usize,
    pub dim: usize,
    pub left: MultiLin,
    pub right: MultiLin,
}

impl Bimodule {
    pub fn new(algebra_dim: usize, dim: usize, left: MultiLin, right: MultiLin) -> Result<Self> {
        if left.shape_in() != [algebra_dim, dim] || left.dim_out() != dim {
            return Err(Error::ShapeMismatch("left action tensor shape".into()));
        }
        if right.shape_in() != [dim, algebra_dim] || right.dim_out() != dim {
            return Err(Error::ShapeMismatch("right action tensor shape".into()));
        }
        Ok(Bimodule {
            algebra_dim,
            dim,
            left,
            right,
        })
    }

    /// The algebra acting on itself by multiplication.
    pub fn adjoint(a: &Algebra) -> Self {
        Bimodule {
            algebra_dim: a.dim,
            dim: a.dim,
            left: a.mul.clone(),
            right: a.mul.clone(),
        }
    }

    pub fn act_left(&self, a: &[Q], u: &[Q]) -> Vec<Q> {
        self.left.apply(&[a, u])
    }

    pub fn act_right(&self, u: &[Q], a: &[Q]) -> Vec<Q> {
        self.right.apply(&[u, a])
    }
}

/// Check the three bimodule axioms of `m` over `a` on basis triples.
pub fn check_bimodule(a: &Algebra, m: &Bimodule) -> CheckReport {
    let mut report = CheckReport::new();
    let da = a.dim;
    let dm = m.dim;
    for i in 0..da {
        for j in 0..da {
            let ij = a.prod_basis(i, j).to_vec();
            for p in 0..dm {
                // (ab) . u = a . (b . u)
                let lhs = m.left.apply_basis_with_vec(&[p], 0, &ij);
                let bu = m.left.at(&[j, p]).to_vec();
                let rhs = m.left.apply_basis_with_vec(&[i], 1, &bu);
                let res = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&res) {
                    report.push("left-assoc", &[i, j, p], &res);
                }
                // (a . u) . b = a . (u . b)
                let au = m.left.at(&[i, p]).to_vec();
                let lhs = m.right.apply_basis_with_vec(&[j], 0, &au);
                let ub = m.right.at(&[p, j]).to_vec();
                let rhs = m.left.apply_basis_with_vec(&[i], 1, &ub);
                let res = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&res) {
                    report.push("mixed-assoc", &[i, p, j], &res);
                }
                // (u . a) . b = u . (ab)
                let ua = m.right.at(&[p, i]).to_vec();
                let lhs = m.right.apply_basis_with_vec(&[j], 0, &ua);
                let rhs = m.right.apply_basis_with_vec(&[p], 1, &ij);
                let res = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&res) {
                    report.push("right-assoc", &[p, i, j], &res);
                }
            }
        }
    }
    report
}

/// The classical Hochschild differential on Hom(A^n, M).
///
/// (delta f)(a_1, ..., a_{n+1}) = a_1 . f(a_2, ...) + sum (-1)^i f(..., a_i a_{i+1}, ...)
/// + (-1)^{n+1} f(a_1, ..., a_n) . a_{n+1}; for n = 0 this is a . u - u . a.
pub fn hochschild_delta(a: &Algebra, m: &Bimodule, f: &MultiLin) -> Result<MultiLin> {
    let n = f.arity();
    if f.shape_in().iter().any(|&s| s != a.dim) || f.dim_out() != m.dim {
        return Err(Error::ShapeMismatch(
            "cochain must map A^n to M over the given algebra and bimodule".into(),
        ));
    }
    let mut out = MultiLin::zero(vec![a.dim; n + 1], m.dim);
    for multi in multi_indices(&vec![a.dim; n + 1]) {
        let mut acc = vec![qlinalg::q_zero(); m.dim];
        // a_1 . f(a_2, ..., a_{n+1})
        let tail = f.at(&multi[1..]).to_vec();
        add_assign(&mut acc, &m.left.apply_basis_with_vec(&[multi[0]], 1, &tail), &sign(0));
        // inner products
        for i in 1..=n {
            let prod = a.prod_basis(multi[i - 1], multi[i]).to_vec();
            let mut rest: Vec<usize> = Vec::with_capacity(n - 1);
            rest.extend_from_slice(&multi[..i - 1]);
            rest.extend_from_slice(&multi[i + 1..]);
            let term = f.apply_basis_with_vec(&rest, i - 1, &prod);
            add_assign(&mut acc, &term, &sign(i as i64));
        }
        // (-1)^{n+1} f(a_1, ..., a_n) . a_{n+1}
        let head = f.at(&multi[..n]).to_vec();
        let term = m.right.apply_basis_with_vec(&[multi[n]], 0, &head);
        add_assign(&mut acc, &term, &sign(n as i64 + 1));
        out.add_at(&multi, &acc);
    }
    Ok(out)
}

/// Check that H: A x A -> M is a Hochschild 2-cocycle.
pub fn check_two_cocycle(a: &Algebra, m: &Bimodule, h: &MultiLin) -> Result<CheckReport> {
    if h.shape_in() != [a.dim, a.dim] || h.dim_out() != m.dim {
        return Err(Error::ShapeMismatch("2-cochain must map A x A to M".into()));
    }
    let delta = hochschild_delta(a, m, h)?;
    let mut report = CheckReport::new();
    for multi in multi_indices(&[a.dim, a.dim, a.dim]) {
        let res = delta.at(&multi);
        if !is_zero_vec(res) {
            report.push("hochschild-2-cocycle", &multi, res);
        }
    }
    Ok(report)
}

/// The H-twisted semidirect product on A (+) M:
/// (a, u) (b, v) = (ab, a.v + u.b + H(a, b)).
///
/// Basis order: the A basis first, then the M basis.
pub fn twisted_semidirect(a: &Algebra, m: &Bimodule, h: &MultiLin) -> Result<Algebra> {
    let cocycle = check_two_cocycle(a, m, h)?;
    if !cocycle.passed() {
        return Err(Error::InvalidCocycle(format!(
            "{} failing triples",
            cocycle.violations.len()
        )));
    }
    Ok(twisted_semidirect_unchecked(a, m, h))
}

/// Same construction without validating H; used for the untwisted (H = 0)
/// lift and in tests that deliberately inject a non-cocycle.
pub fn twisted_semidirect_unchecked(a: &Algebra, m: &Bimodule, h: &MultiLin) -> Algebra {
    let da = a.dim;
    let dm = m.dim;
    let d = da + dm;
    let mut mul = MultiLin::zero(vec![d, d], d);
    for i in 0..d {
        for j in 0..d {
            let mut img = vec![qlinalg::q_zero(); d];
            match (i < da, j < da) {
                (true, true) => {
                    let ab = a.prod_basis(i, j);
                    img[..da].clone_from_slice(ab);
                    let hij = h.at(&[i, j]);
                    img[da..].clone_from_slice(hij);
                }
                (true, false) => {
                    let av = m.left.at(&[i, j - da]);
                    img[da..].clone_from_slice(av);
                }
                (false, true) => {
                    let ub = m.right.at(&[i - da, j]);
                    img[da..].clone_from_slice(ub);
                }
                (false, false) => {}
            }
            mul.add_at(&[i, j], &img);
        }
    }
    Algebra { dim: d, mul }
}

/// True iff the span of `vectors` is closed under the product of `a`.
pub fn is_subalgebra(a: &Algebra, vectors: &[Vec<Q>]) -> bool {
    let span = qlinalg::Subspace::span(a.dim, vectors.to_vec());
    for x in &span.basis {
        for y in &span.basis {
            if !span.contains(&a.prod(x, y)) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn add_assign(acc: &mut [Q], v: &[Q], c: &Q) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a = &*a + &(c * x);
    }
}

pub(crate) fn sub_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(num::Zero::is_zero)
}

/// The ground field as a 1-dimensional algebra.
pub fn ground_field() -> Algebra {
    let mut mul = MultiLin::zero(vec![1, 1], 1);
    mul.set(&[0, 0], 0, qlinalg::q_one());
    Algebra { dim: 1, mul }
}

/// K[e]/(e^2) with basis {1, e}.
pub fn dual_numbers() -> Algebra {
    let mut mul = MultiLin::zero(vec![2, 2], 2);
    mul.set(&[0, 0], 0, qlinalg::q_one());
    mul.set(&[0, 1], 1, qlinalg::q_one());
    mul.set(&[1, 0], 1, qlinalg::q_one());
    Algebra { dim: 2, mul }
}

/// A linear map between based spaces, stored as a (target x source) matrix
/// built from sparse (source_index, target_index, coefficient) triples.
pub fn matrix_from_triples(
    rows: usize,
    cols: usize,
    triples: &[(usize, usize, Q)],
) -> Result<Matrix> {
    let mut m = Matrix::zero(rows, cols);
    for (src, tgt, c) in triples {
        if *src >= cols || *tgt >= rows {
            return Err(Error::IndexOutOfRange(format!(
                "matrix entry ({src}, {tgt}) outside {cols} x {rows}"
            )));
        }
        m.set(*tgt, *src, m.get(*tgt, *src) + c);
    }
    Ok(m)
}

/// Apply a linear map (as matrix) to basis vector `i` of its source.
pub fn map_basis(m: &Matrix, i: usize) -> Vec<Q> {
    m.mul_vec(&basis_vec(m.cols, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q_int, q_one};

    #[test]
    fn field_and_dual_numbers_are_associative() {
        assert!(check_algebra(&ground_field()).passed());
        assert!(check_algebra(&dual_numbers()).passed());
    }

    #[test]
    fn broken_structure_constants_are_reported() {
        // e1 e1 = e2, e2 e1 = e1, everything else zero: not associative
        let mut mul = MultiLin::zero(vec![2, 2], 2);
        mul.set(&[0, 0], 1, q_one());
        mul.set(&[1, 0], 0, q_one());
        let a = Algebra { dim: 2, mul };
        let report = check_algebra(&a);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.at == vec![0, 0, 0]));
    }

    #[test]
    fn adjoint_bimodule_axioms() {
        let a = dual_numbers();
        assert!(check_bimodule(&a, &Bimodule::adjoint(&a)).passed());
    }

    #[test]
    fn delta_on_zero_and_central_element() {
        let a = dual_numbers();
        let m = Bimodule::adjoint(&a);
        let zero = MultiLin::zero(vec![a.dim], m.dim);
        assert!(hochschild_delta(&a, &m, &zero).unwrap().is_zero());
        // u = e (arity 0): delta u (a) = a.u - u.a = 0 in a commutative algebra
        let eps = MultiLin::from_vector(vec![q_int(0), q_int(1)]);
        assert!(hochschild_delta(&a, &m, &eps).unwrap().is_zero());
    }

    #[test]
    fn semidirect_with_zero_cocycle_is_associative() {
        let a = dual_numbers();
        let m = Bimodule::adjoint(&a);
        let h = MultiLin::zero(vec![2, 2], 2);
        let s = twisted_semidirect(&a, &m, &h).unwrap();
        assert_eq!(s.dim, 4);
        assert!(check_algebra(&s).passed());
    }

    #[test]
    fn semidirect_with_scalar_cocycle() {
        // A = K, M = K adjoint, H(a, b) = -ab: (a,u)(b,v) = (ab, av + ub - ab)
        let a = ground_field();
        let m = Bimodule::adjoint(&a);
        let mut h = MultiLin::zero(vec![1, 1], 1);
        h.set(&[0, 0], 0, q_int(-1));
        let s = twisted_semidirect(&a, &m, &h).unwrap();
        assert!(check_algebra(&s).passed());
        // (e1)(e1) = (e1, -e1-part): product of (1,0),(1,0) = (1, -1)
        assert_eq!(s.prod_basis(0, 0), &[q_int(1), q_int(-1)][..]);
    }

    #[test]
    fn non_cocycle_rejected() {
        // On K[e]/(e^2) adjoint, H(e1,e1) = e1 is not a cocycle
        let a = dual_numbers();
        let m = Bimodule::adjoint(&a);
        let mut h = MultiLin::zero(vec![2, 2], 2);
        h.set(&[0, 0], 0, q_one());
        assert!(matches!(
            twisted_semidirect(&a, &m, &h),
            Err(Error::InvalidCocycle(_))
        ));
        // and the unchecked product indeed fails associativity
        let s = twisted_semidirect_unchecked(&a, &m, &h);
        assert!(!check_algebra(&s).passed());
    }

    #[test]
    fn subalgebra_checks() {
        let a = dual_numbers();
        let whole: Vec<Vec<Q>> = vec![basis_vec(2, 0), basis_vec(2, 1)];
        assert!(is_subalgebra(&a, &whole));
        assert!(is_subalgebra(&a, &[]));
        assert!(is_subalgebra(&a, &[basis_vec(2, 0)]));
        // (1+e)^2 = 1 + 2e is not in span{1+e}
        assert!(!is_subalgebra(&a, &[vec![q_one(), q_one()]]));
    }

    #[test]
    fn delta_squares_to_zero_small() {
        let a = dual_numbers();
        let m = Bimodule::adjoint(&a);
        let mut f = MultiLin::zero(vec![2], 2);
        f.set(&[0], 1, q_int(3));
        f.set(&[1], 0, q_int(-2));
        let d1 = hochschild_delta(&a, &m, &f).unwrap();
        let d2 = hochschild_delta(&a, &m, &d1).unwrap();
        assert!(d2.is_zero());
    }
}
