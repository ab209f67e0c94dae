//! Truncated (order-N) deformation theory, exact over the rationals: all
//! arithmetic happens in the truncated polynomial ring modulo t^(N+1).
//! Covers deformations of twisted Rota-Baxter operators (residuals,
//! infinitesimals, equivalences, the rigidity reduction) and of NS-algebras
//! (residuals, obstruction cochains, linear extension solving).

use crate::algebra::{add_assign, is_zero_vec, sub_vec};
use crate::error::{Error, Result};
use crate::multilin::{basis_vec, MultiLin};
use crate::nsop::{
    delta_pi, delta_pi_matrix, is_multiplication, ns_to_multiplication, partial_compose,
    NSAlgebra, TaggedCochain,
};
use crate::qlinalg::{self, Matrix, Q};
use crate::report::CheckReport;
use crate::trb::{self, TRBContext};

/// An order-N deformation T_t = T_0 + t T_1 + ... + t^N T_N of the operator
/// of a twisted Rota-Baxter context; `maps[0]` is the base operator.
#[derive(Debug, Clone)]
pub struct TruncatedRBDeformation {
    pub ctx: TRBContext,
    pub order: usize,
    pub maps: Vec<Matrix>,
}

impl TruncatedRBDeformation {
    /// Build from the higher terms T_1..T_N; T_0 is taken from the context.
    pub fn new(ctx: TRBContext, higher: Vec<Matrix>) -> Result<Self> {
        let (da, dm) = (ctx.dim_a(), ctx.dim_m());
        for t in &higher {
            if t.rows != da || t.cols != dm {
                return Err(Error::ShapeMismatch("deformation terms must map M to A".into()));
            }
        }
        let order = higher.len();
        let mut maps = vec![ctx.operator.clone()];
        maps.extend(higher);
        Ok(TruncatedRBDeformation { ctx, order, maps })
    }

    pub fn map(&self, i: usize) -> Matrix {
        if i <= self.order {
            self.maps[i].clone()
        } else {
            Matrix::zero(self.ctx.dim_a(), self.ctx.dim_m())
        }
    }
}

/// Residual of the order-n deformation equation, for each n = 0..N:
/// sum T_i(u) T_j(v) - sum T_i(u.T_j v + T_j u.v) - sum T_i H(T_j u, T_k v),
/// as a bilinear map M x M -> A.
pub fn rb_deformation_residuals(d: &TruncatedRBDeformation) -> Vec<MultiLin> {
    let ctx = &d.ctx;
    let (da, dm) = (ctx.dim_a(), ctx.dim_m());
    let n_max = d.order;
    // T_i applied to each basis vector of M
    let t_basis: Vec<Vec<Vec<Q>>> = (0..=n_max)
        .map(|i| (0..dm).map(|p| d.maps[i].mul_vec(&basis_vec(dm, p))).collect())
        .collect();
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut res = MultiLin::zero(vec![dm, dm], da);
        for p in 0..dm {
            for q in 0..dm {
                let mut acc = vec![qlinalg::q_zero(); da];
                for i in 0..=n {
                    let j = n - i;
                    acc = crate::algebra::add_vec(
                        &acc,
                        &ctx.algebra.prod(&t_basis[i][p], &t_basis[j][q]),
                    );
                    // - T_i ( u . T_j v + T_j u . v )
                    let mut inner = ctx.bimodule.right.apply_basis_with_vec(&[p], 1, &t_basis[j][q]);
                    add_assign(
                        &mut inner,
                        &ctx.bimodule.left.apply_basis_with_vec(&[q], 0, &t_basis[j][p]),
                        &qlinalg::q_one(),
                    );
                    add_assign(&mut acc, &d.maps[i].mul_vec(&inner), &qlinalg::q_int(-1));
                    // - T_i H (T_j u, T_k v)
                    for j2 in 0..=(n - i) {
                        let k = n - i - j2;
                        let h_val = ctx.cocycle.apply(&[&t_basis[j2][p], &t_basis[k][q]]);
                        add_assign(&mut acc, &d.maps[i].mul_vec(&h_val), &qlinalg::q_int(-1));
                    }
                }
                res.add_at(&[p, q], &acc);
            }
        }
        out.push(res);
    }
    out
}

pub fn rb_is_valid(d: &TruncatedRBDeformation) -> bool {
    rb_deformation_residuals(d).iter().all(MultiLin::is_zero)
}

/// The infinitesimal T_1 together with the verdict d_T(T_1) = 0.
pub fn rb_infinitesimal(d: &TruncatedRBDeformation) -> Result<(Matrix, bool)> {
    if d.order < 1 {
        return Err(Error::ShapeMismatch("deformation has no linear term".into()));
    }
    let t1 = d.maps[1].clone();
    let cocycle = trb::d_t(&d.ctx, &MultiLin::from_matrix(&t1))?.is_zero();
    Ok((t1, cocycle))
}

/// Equivalence data: the generating element a (fixing the degree-1 parts of
/// phi_t and psi_t) plus free higher coefficients for t^2 and beyond.
#[derive(Debug, Clone)]
pub struct RBEquivalenceWitness {
    pub a: Vec<Q>,
    pub phi_higher: Vec<Matrix>,
    pub psi_higher: Vec<Matrix>,
}

impl RBEquivalenceWitness {
    pub fn trivial(ctx: &TRBContext) -> Self {
        RBEquivalenceWitness {
            a: vec![qlinalg::q_zero(); ctx.dim_a()],
            phi_higher: Vec::new(),
            psi_higher: Vec::new(),
        }
    }

    pub fn from_element(a: Vec<Q>) -> Self {
        RBEquivalenceWitness {
            a,
            phi_higher: Vec::new(),
            psi_higher: Vec::new(),
        }
    }

    fn phi_coeffs(&self, ctx: &TRBContext, order: usize) -> Vec<Matrix> {
        let mut out = vec![Matrix::identity(ctx.dim_a()), trb::ad_matrix(ctx, &self.a)];
        out.extend(self.phi_higher.iter().cloned());
        out.resize(order + 1, Matrix::zero(ctx.dim_a(), ctx.dim_a()));
        out.truncate(order + 1);
        out
    }

    fn psi_coeffs(&self, ctx: &TRBContext, order: usize) -> Vec<Matrix> {
        let mut out = vec![Matrix::identity(ctx.dim_m()), trb::theta_matrix(ctx, &self.a)];
        out.extend(self.psi_higher.iter().cloned());
        out.resize(order + 1, Matrix::zero(ctx.dim_m(), ctx.dim_m()));
        out.truncate(order + 1);
        out
    }
}

/// Inverse of a truncated matrix series; `None` when the constant term is
/// singular. Exact geometric-series recursion over the rationals.
pub fn truncated_inverse(coeffs: &[Matrix]) -> Option<Vec<Matrix>> {
    let s0_inv = qlinalg::inverse(&coeffs[0])?;
    let mut inv = vec![s0_inv.clone()];
    for n in 1..coeffs.len() {
        let mut acc = Matrix::zero(coeffs[0].rows, coeffs[0].cols);
        for k in 1..=n {
            acc = acc.add(&coeffs[k].mul(&inv[n - k]));
        }
        inv.push(s0_inv.mul(&acc).scale(&qlinalg::q_int(-1)));
    }
    Some(inv)
}

/// Verify that the witness pair (phi_t, psi_t) is a morphism of twisted
/// Rota-Baxter operators from d to d2 modulo t^(N+1): algebra-morphism,
/// action, cocycle and operator compatibilities, order by order. When all
/// pass, additionally checks T_1 - T_1' = d_T(a).
pub fn rb_check_equivalence(
    d: &TruncatedRBDeformation,
    d2: &TruncatedRBDeformation,
    w: &RBEquivalenceWitness,
) -> Result<CheckReport> {
    let ctx = &d.ctx;
    if ctx.operator != d2.ctx.operator {
        return Err(Error::ShapeMismatch("deformations of different base operators".into()));
    }
    let n_max = d.order.max(d2.order);
    let (da, dm) = (ctx.dim_a(), ctx.dim_m());
    let phi = w.phi_coeffs(ctx, n_max);
    let psi = w.psi_coeffs(ctx, n_max);
    let phi_basis: Vec<Vec<Vec<Q>>> = phi
        .iter()
        .map(|m| (0..da).map(|i| m.mul_vec(&basis_vec(da, i))).collect())
        .collect();
    let psi_basis: Vec<Vec<Vec<Q>>> = psi
        .iter()
        .map(|m| (0..dm).map(|p| m.mul_vec(&basis_vec(dm, p))).collect())
        .collect();
    let mut report = CheckReport::new();
    for n in 0..=n_max {
        for i in 0..da {
            for j in 0..da {
                // phi_n(e_i e_j) = sum_{i'+j'=n} phi_{i'}(e_i) phi_{j'}(e_j)
                let lhs = phi[n].mul_vec(ctx.algebra.prod_basis(i, j));
                let mut rhs = vec![qlinalg::q_zero(); da];
                for k in 0..=n {
                    add_assign(
                        &mut rhs,
                        &ctx.algebra.prod(&phi_basis[k][i], &phi_basis[n - k][j]),
                        &qlinalg::q_one(),
                    );
                }
                let res = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&res) {
                    report.push("phi-algebra-morphism", &[n, i, j], &res);
                }
                // psi_n(H(e_i, e_j)) = sum H(phi(e_i), phi(e_j))
                let lhs = psi[n].mul_vec(ctx.cocycle.at(&[i, j]));
                let mut rhs = vec![qlinalg::q_zero(); dm];
                for k in 0..=n {
                    add_assign(
                        &mut rhs,
                        &ctx.cocycle.apply(&[&phi_basis[k][i], &phi_basis[n - k][j]]),
                        &qlinalg::q_one(),
                    );
                }
                let res = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&res) {
                    report.push("h-comp", &[n, i, j], &res);
                }
            }
        }
        for i in 0..da {
            for p in 0..dm {
                // psi_n(e_i . u_p) = sum phi(e_i) . psi(u_p)
                let lhs = psi[n].mul_vec(ctx.bimodule.left.at(&[i, p]));
                let mut rhs = vec![qlinalg::q_zero(); dm];
                for k in 0..=n {
                    add_assign(
                        &mut rhs,
                        &ctx.bimodule.left.apply(&[&phi_basis[k][i], &psi_basis[n - k][p]]),
                        &qlinalg::q_one(),
                    );
                }
                let res = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&res) {
                    report.push("action-comp-left", &[n, i, p], &res);
                }
                let lhs = psi[n].mul_vec(ctx.bimodule.right.at(&[p, i]));
                let mut rhs = vec![qlinalg::q_zero(); dm];
                for k in 0..=n {
                    add_assign(
                        &mut rhs,
                        &ctx.bimodule.right.apply(&[&psi_basis[k][p], &phi_basis[n - k][i]]),
                        &qlinalg::q_one(),
                    );
                }
                let res = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&res) {
                    report.push("action-comp-right", &[n, p, i], &res);
                }
            }
        }
        // sum phi_i(T_j(u_p)) = sum T'_i(psi_j(u_p))
        for p in 0..dm {
            let mut lhs = vec![qlinalg::q_zero(); da];
            let mut rhs = vec![qlinalg::q_zero(); da];
            for k in 0..=n {
                let t_j = d.map(n - k).mul_vec(&basis_vec(dm, p));
                add_assign(&mut lhs, &phi[k].mul_vec(&t_j), &qlinalg::q_one());
                add_assign(
                    &mut rhs,
                    &d2.map(k).mul_vec(&psi_basis[n - k][p]),
                    &qlinalg::q_one(),
                );
            }
            let res = sub_vec(&lhs, &rhs);
            if !is_zero_vec(&res) {
                report.push("t-comp", &[n, p], &res);
            }
        }
    }
    if report.passed() && n_max >= 1 {
        let t1 = d.map(1).sub(&d2.map(1));
        let d_a = trb::d_t(ctx, &MultiLin::from_vector(w.a.clone()))?;
        let res = sub_vec(&MultiLin::from_matrix(&t1).flat().to_vec(), &d_a.flat().to_vec());
        if !is_zero_vec(&res) {
            report.push("infinitesimal-class", &[1], &res);
        }
    }
    Ok(report)
}

/// The rigidity construction: given a Nijenhuis element a, build
/// phi_t = id + t(ad^l_a - ad^r_a), psi_t = id + t(l_a - r_a + H(a,T-) -
/// H(T-,a)) and transport the deformation to T_t' = phi_t o T_t o psi_t^{-1},
/// truncated at the same order. When T_1 = d_T(a), the order-1 term of the
/// result vanishes.
pub fn rb_rigid_reduce(
    d: &TruncatedRBDeformation,
    a: &[Q],
) -> Result<TruncatedRBDeformation> {
    let ctx = &d.ctx;
    if a.len() != ctx.dim_a() {
        return Err(Error::ShapeMismatch("Nijenhuis element must live in A".into()));
    }
    let w = RBEquivalenceWitness::from_element(a.to_vec());
    let phi = w.phi_coeffs(ctx, d.order);
    let psi = w.psi_coeffs(ctx, d.order);
    let psi_inv = truncated_inverse(&psi)
        .ok_or_else(|| Error::ShapeMismatch("psi_t has singular constant term".into()))?;
    let mut maps = Vec::with_capacity(d.order + 1);
    for n in 0..=d.order {
        let mut acc = Matrix::zero(ctx.dim_a(), ctx.dim_m());
        for i in 0..=n {
            for j in 0..=(n - i) {
                let k = n - i - j;
                acc = acc.add(&phi[i].mul(&d.map(j)).mul(&psi_inv[k]));
            }
        }
        maps.push(acc);
    }
    let higher = maps[1..].to_vec();
    debug_assert_eq!(maps[0], ctx.operator);
    TruncatedRBDeformation::new(ctx.clone(), higher)
}

/// An order-N deformation of an NS-algebra, stored as tagged arity-2 terms
/// pi_0..pi_N with pi_0 the base multiplication.
#[derive(Debug, Clone)]
pub struct TruncatedNSDeformation {
    pub base: NSAlgebra,
    pub order: usize,
    pub terms: Vec<TaggedCochain>,
}

impl TruncatedNSDeformation {
    pub fn new(base: NSAlgebra, higher: Vec<TaggedCochain>) -> Result<Self> {
        for t in &higher {
            if t.arity != 2 || t.dim != base.dim {
                return Err(Error::ShapeMismatch("deformation terms must be arity-2 tagged cochains".into()));
            }
        }
        let pi0 = ns_to_multiplication(&base);
        if !is_multiplication(&pi0)? {
            return Err(Error::NotAMultiplication);
        }
        let order = higher.len();
        let mut terms = vec![pi0];
        terms.extend(higher);
        Ok(TruncatedNSDeformation { base, order, terms })
    }

    pub fn term(&self, i: usize) -> TaggedCochain {
        if i <= self.order {
            self.terms[i].clone()
        } else {
            TaggedCochain::zero(self.base.dim, 2)
        }
    }
}

/// Residual sum pi_i o_1 pi_j - pi_i o_2 pi_j over i + j = n, per order.
pub fn ns_deformation_residuals(d: &TruncatedNSDeformation) -> Result<Vec<TaggedCochain>> {
    let mut out = Vec::with_capacity(d.order + 1);
    for n in 0..=d.order {
        let mut res = TaggedCochain::zero(d.base.dim, 3);
        for i in 0..=n {
            let j = n - i;
            let one = partial_compose(&d.terms[i], &d.terms[j], 1)?;
            let two = partial_compose(&d.terms[i], &d.terms[j], 2)?;
            res = res.add(&one.sub(&two));
        }
        out.push(res);
    }
    Ok(out)
}

pub fn ns_is_valid(d: &TruncatedNSDeformation) -> Result<bool> {
    Ok(ns_deformation_residuals(d)?.iter().all(TaggedCochain::is_zero))
}

/// The infinitesimal pi_1 together with the verdict delta_pi(pi_1) = 0.
pub fn ns_infinitesimal(d: &TruncatedNSDeformation) -> Result<(TaggedCochain, bool)> {
    if d.order < 1 {
        return Err(Error::ShapeMismatch("deformation has no linear term".into()));
    }
    let pi1 = d.terms[1].clone();
    let verdict = delta_pi(&d.terms[0], &pi1)?.is_zero();
    Ok((pi1, verdict))
}

/// Obstruction cochain Ob = - sum_{i+j=N+1, i,j>=1} (pi_i o_1 pi_j -
/// pi_i o_2 pi_j), plus the verdict delta_pi(Ob) = 0.
pub fn ns_obstruction(d: &TruncatedNSDeformation) -> Result<(TaggedCochain, bool)> {
    let n1 = d.order + 1;
    let mut ob = TaggedCochain::zero(d.base.dim, 3);
    for i in 1..n1 {
        let j = n1 - i;
        let one = partial_compose(&d.terms[i], &d.terms[j], 1)?;
        let two = partial_compose(&d.terms[i], &d.terms[j], 2)?;
        ob = ob.sub(&one.sub(&two));
    }
    let verdict = delta_pi(&d.terms[0], &ob)?.is_zero();
    Ok((ob, verdict))
}

/// Solve the extension equation delta_pi(pi_{N+1}) = -Ob. `None` when the
/// obstruction class is nontrivial.
pub fn ns_extend(d: &TruncatedNSDeformation) -> Result<Option<TaggedCochain>> {
    let pi = &d.terms[0];
    let (ob, _) = ns_obstruction(d)?;
    let mat = delta_pi_matrix(pi, 2)?;
    let rhs: Vec<Q> = ob.flatten().iter().map(|c| -c).collect();
    Ok(qlinalg::solve(&mat, &rhs).map(|x| TaggedCochain::from_flat(d.base.dim, 2, &x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Bimodule};
    use crate::nsop::{check_ns, delta_pi_unchecked};
    use crate::qlinalg::{q_int, q_one, q_zero};
    use crate::sampling;

    fn nijenhuis_ctx() -> TRBContext {
        let mut mul = MultiLin::zero(vec![2, 2], 2);
        mul.set(&[0, 0], 1, q_one());
        let a_n = Algebra { dim: 2, mul };
        let mut left = MultiLin::zero(vec![2, 2], 2);
        left.set(&[0, 0], 1, q_one());
        let mut right = MultiLin::zero(vec![2, 2], 2);
        right.set(&[0, 0], 1, q_one());
        let m = Bimodule::new(2, 2, left, right).unwrap();
        let mut h = MultiLin::zero(vec![2, 2], 2);
        h.set(&[0, 0], 1, q_int(-1));
        TRBContext::new(a_n, m, h, Matrix::identity(2)).unwrap()
    }

    /// Strictly upper-triangular friendly 3-dim matrix algebra span
    /// {E11, E12, E22} with T(E11) = E12, H = 0, M the adjoint bimodule.
    fn ut2_ctx() -> TRBContext {
        let mut mul = MultiLin::zero(vec![3, 3], 3);
        mul.set(&[0, 0], 0, q_one()); // E11 E11 = E11
        mul.set(&[0, 1], 1, q_one()); // E11 E12 = E12
        mul.set(&[1, 2], 1, q_one()); // E12 E22 = E12
        mul.set(&[2, 2], 2, q_one()); // E22 E22 = E22
        let a = Algebra::new(3, mul).unwrap();
        let m = Bimodule::adjoint(&a);
        let h = MultiLin::zero(vec![3, 3], 3);
        let mut t = Matrix::zero(3, 3);
        t.set(1, 0, q_one()); // T(E11) = E12
        TRBContext::new(a, m, h, t).unwrap()
    }

    #[test]
    fn ut2_is_twisted_rb() {
        let ctx = ut2_ctx();
        assert!(ctx.validate().unwrap().passed());
    }

    #[test]
    fn trivial_rb_deformation() {
        let ctx = nijenhuis_ctx();
        let d = TruncatedRBDeformation::new(
            ctx.clone(),
            vec![Matrix::zero(2, 2), Matrix::zero(2, 2)],
        )
        .unwrap();
        assert!(rb_is_valid(&d));
        let w = RBEquivalenceWitness::trivial(&ctx);
        assert!(rb_check_equivalence(&d, &d, &w).unwrap().passed());
    }

    #[test]
    fn order_one_residual_is_minus_dt() {
        let ctx = nijenhuis_ctx();
        let mut rng = sampling::rng(111);
        for _ in 0..5 {
            let t1 = sampling::random_matrix(&mut rng, 2, 2, 2);
            let d = TruncatedRBDeformation::new(ctx.clone(), vec![t1.clone()]).unwrap();
            let res = rb_deformation_residuals(&d);
            assert!(res[0].is_zero());
            let dt = trb::d_t(&ctx, &MultiLin::from_matrix(&t1)).unwrap();
            assert_eq!(res[1], dt.neg());
        }
    }

    #[test]
    fn coboundary_generates_valid_linear_deformation() {
        let ctx = ut2_ctx();
        let a = basis_vec(3, 1); // E12
        let da = trb::d_t(&ctx, &MultiLin::from_vector(a)).unwrap();
        let t1 = da.to_matrix();
        let d = TruncatedRBDeformation::new(ctx, vec![t1]).unwrap();
        assert!(rb_is_valid(&d));
        let (_, is_cocycle) = rb_infinitesimal(&d).unwrap();
        assert!(is_cocycle);
    }

    fn ut2_cocycle() -> Matrix {
        // T_1(E22) = E12 spans a nonzero direction in Z^1
        let mut t1 = Matrix::zero(3, 3);
        t1.set(1, 2, q_one());
        t1
    }

    #[test]
    fn rigid_reduce_kills_order_one() {
        let ctx = ut2_ctx();
        // a = E12 passes all Nijenhuis conditions; its coboundary vanishes,
        // so the order-1 term T_1 = d_T(a) = 0 while phi_1, psi_1 != 0
        let a = basis_vec(3, 1);
        assert!(trb::is_nijenhuis_element(&ctx, &a).unwrap().passed());
        let t1 = trb::d_t(&ctx, &MultiLin::from_vector(a.clone())).unwrap().to_matrix();
        // pad with a nonzero cocycle at order 2 so the transported series
        // has real content
        let d = TruncatedRBDeformation::new(ctx.clone(), vec![t1, ut2_cocycle()]).unwrap();
        assert!(rb_is_valid(&d));
        let reduced = rb_rigid_reduce(&d, &a).unwrap();
        assert!(reduced.maps[1].is_zero(), "order-1 term should vanish");
        assert!(rb_is_valid(&reduced), "transported deformation stays valid");
        // and the construction is an equivalence witnessed by a
        let w = RBEquivalenceWitness::from_element(a);
        assert!(rb_check_equivalence(&d, &reduced, &w).unwrap().passed());
    }

    #[test]
    fn mismatched_witness_reports_failure() {
        let ctx = ut2_ctx();
        let d = TruncatedRBDeformation::new(ctx.clone(), vec![ut2_cocycle()]).unwrap();
        let d0 = TruncatedRBDeformation::new(ctx.clone(), vec![Matrix::zero(3, 3)]).unwrap();
        // the trivial witness does not relate d and the undeformed one
        let w = RBEquivalenceWitness::trivial(&ctx);
        let report = rb_check_equivalence(&d, &d0, &w).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn truncated_inverse_geometric_series() {
        let mut rng = sampling::rng(113);
        let b = sampling::random_matrix(&mut rng, 3, 3, 2);
        let series = vec![Matrix::identity(3), b.clone(), Matrix::zero(3, 3), Matrix::zero(3, 3)];
        let inv = truncated_inverse(&series).unwrap();
        // (id + tB)^{-1} = id - tB + t^2 B^2 - t^3 B^3
        assert_eq!(inv[0], Matrix::identity(3));
        assert_eq!(inv[1], b.scale(&q_int(-1)));
        assert_eq!(inv[2], b.mul(&b));
        assert_eq!(inv[3], b.mul(&b).mul(&b).scale(&q_int(-1)));
    }

    fn dendriform_line() -> NSAlgebra {
        let mut prec = MultiLin::zero(vec![1, 1], 1);
        prec.set(&[0, 0], 0, q_one());
        NSAlgebra::new(1, prec, MultiLin::zero(vec![1, 1], 1), MultiLin::zero(vec![1, 1], 1))
            .unwrap()
    }

    #[test]
    fn trivial_ns_deformation() {
        let base = dendriform_line();
        let d = TruncatedNSDeformation::new(base.clone(), vec![TaggedCochain::zero(1, 2)]).unwrap();
        assert!(ns_is_valid(&d).unwrap());
        let (ob, cocycle) = ns_obstruction(&d).unwrap();
        assert!(ob.is_zero());
        assert!(cocycle);
        let ext = ns_extend(&d).unwrap().unwrap();
        assert!(ext.is_zero());
    }

    #[test]
    fn ns_order_one_residual_is_minus_delta() {
        let base = dendriform_line();
        let pi = ns_to_multiplication(&base);
        let mut rng = sampling::rng(127);
        for _ in 0..5 {
            let components = (0..3)
                .map(|_| sampling::random_multilin(&mut rng, vec![1, 1], 1, 3))
                .collect();
            let pi1 = TaggedCochain::from_components(1, 2, components).unwrap();
            let d = TruncatedNSDeformation::new(base.clone(), vec![pi1.clone()]).unwrap();
            let res = ns_deformation_residuals(&d).unwrap();
            assert!(res[0].is_zero());
            let expect = delta_pi_unchecked(&pi, &pi1).unwrap().scale(&q_int(-1));
            assert_eq!(res[1], expect);
        }
    }

    #[test]
    fn ns_coboundary_deformation_and_extension() {
        let base = dendriform_line();
        let pi = ns_to_multiplication(&base);
        // pi_1 = delta of an arity-1 cochain is always a cocycle
        let mut phi1 = TaggedCochain::zero(1, 1);
        phi1.components[0] = MultiLin::from_matrix(&Matrix::from_fn(1, 1, |_, _| q_int(2)));
        let pi1 = delta_pi(&pi, &phi1).unwrap();
        let d = TruncatedNSDeformation::new(base.clone(), vec![pi1]).unwrap();
        assert!(ns_is_valid(&d).unwrap());
        let (pi1_back, verdict) = ns_infinitesimal(&d).unwrap();
        assert!(verdict);
        assert_eq!(pi1_back, d.terms[1]);
        let (_, ob_cocycle) = ns_obstruction(&d).unwrap();
        assert!(ob_cocycle);
        if let Some(next) = ns_extend(&d).unwrap() {
            let extended =
                TruncatedNSDeformation::new(base, vec![d.terms[1].clone(), next]).unwrap();
            assert!(ns_is_valid(&extended).unwrap());
        }
    }

    #[test]
    fn engineered_nontrivial_obstruction() {
        // zero base structure on a line: delta_pi = 0, so any nonzero
        // obstruction class is automatically nontrivial
        let base = NSAlgebra::zero(1);
        let mut prec1 = MultiLin::zero(vec![1, 1], 1);
        prec1.set(&[0, 0], 0, q_one());
        let succ1 = prec1.clone();
        let pi1 = TaggedCochain::from_components(
            1,
            2,
            vec![prec1, succ1, MultiLin::zero(vec![1, 1], 1)],
        )
        .unwrap();
        let ns1 = crate::nsop::multiplication_to_ns(&pi1).unwrap();
        assert!(!check_ns(&ns1).passed());
        let d = TruncatedNSDeformation::new(base, vec![pi1]).unwrap();
        assert!(ns_is_valid(&d).unwrap(), "order-1 equation holds over the zero base");
        let (ob, cocycle) = ns_obstruction(&d).unwrap();
        assert!(!ob.is_zero());
        assert!(cocycle);
        assert!(ns_extend(&d).unwrap().is_none());
        let _ = q_zero();
    }
}
