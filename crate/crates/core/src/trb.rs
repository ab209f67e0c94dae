//! Twisted Rota-Baxter operators: the defining identity, the induced
//! associative structure on M, the bimodule structure on A, the cohomology
//! differential and cohomology groups, gauge transformations, cocycle shifts,
//! Nijenhuis elements, morphisms and Reynolds operators.

use serde::Serialize;

use crate::algebra::{
    add_assign, add_vec, check_algebra, check_bimodule, check_two_cocycle, hochschild_delta,
    is_zero_vec, sub_vec, Algebra, Bimodule,
};
use crate::error::{Error, Result};
use crate::multilin::{basis_vec, multi_indices, sign, MultiLin};
use crate::qlinalg::{self, Matrix, Q};
use crate::report::CheckReport;

/// An algebra A, an A-bimodule M, a Hochschild 2-cocycle H: A x A -> M and a
/// candidate operator T: M -> A (stored as a dA x dM matrix).
///
/// Construction only checks shapes; `validate` runs every mathematical check,
/// including the twisted Rota-Baxter identity itself.
#[derive(Debug, Clone)]
pub struct TRBContext {
    pub algebra: Algebra,
    pub bimodule: Bimodule,
    pub cocycle: MultiLin,
    pub operator: Matrix,
    /// T applied to each M basis vector.
    t_basis: Vec<Vec<Q>>,
    /// Structure constants of u * v = u.T(v) + T(u).v + H(Tu, Tv) on M.
    star: MultiLin,
}

impl TRBContext {
    pub fn new(algebra: Algebra, bimodule: Bimodule, cocycle: MultiLin, operator: Matrix) -> Result<Self> {
        let da = algebra.dim;
        let dm = bimodule.dim;
        if bimodule.algebra_dim != da {
            return Err(Error::ShapeMismatch("bimodule is over a different algebra dimension".into()));
        }
        if cocycle.shape_in() != [da, da] || cocycle.dim_out() != dm {
            return Err(Error::ShapeMismatch("cocycle H must map A x A to M".into()));
        }
        if operator.rows != da || operator.cols != dm {
            return Err(Error::ShapeMismatch("operator T must map M to A".into()));
        }
        let t_basis: Vec<Vec<Q>> = (0..dm).map(|p| operator.mul_vec(&basis_vec(dm, p))).collect();
        let mut star = MultiLin::zero(vec![dm, dm], dm);
        for p in 0..dm {
            for q in 0..dm {
                let mut img = bimodule.right.apply_basis_with_vec(&[p], 1, &t_basis[q]);
                let tu_v = bimodule.left.apply_basis_with_vec(&[q], 0, &t_basis[p]);
                add_assign(&mut img, &tu_v, &qlinalg::q_one());
                let h_tt = cocycle.apply(&[&t_basis[p], &t_basis[q]]);
                add_assign(&mut img, &h_tt, &qlinalg::q_one());
                star.add_at(&[p, q], &img);
            }
        }
        Ok(TRBContext {
            algebra,
            bimodule,
            cocycle,
            operator,
            t_basis,
            star,
        })
    }

    pub fn dim_a(&self) -> usize {
        self.algebra.dim
    }

    pub fn dim_m(&self) -> usize {
        self.bimodule.dim
    }

    pub fn t_of_basis(&self, p: usize) -> &[Q] {
        &self.t_basis[p]
    }

    pub fn t_apply(&self, u: &[Q]) -> Vec<Q> {
        self.operator.mul_vec(u)
    }

    /// u * v = u.T(v) + T(u).v + H(Tu, Tv) on basis pair (p, q).
    pub fn star_basis(&self, p: usize, q: usize) -> &[Q] {
        self.star.at(&[p, q])
    }

    /// Everything at once: algebra associativity, bimodule axioms, cocycle
    /// condition and the twisted Rota-Baxter identity for T.
    pub fn validate(&self) -> Result<CheckReport> {
        let mut report = check_algebra(&self.algebra);
        report.merge(check_bimodule(&self.algebra, &self.bimodule));
        report.merge(check_two_cocycle(&self.algebra, &self.bimodule, &self.cocycle)?);
        report.merge(self.twisted_rb_report());
        Ok(report)
    }

    /// Residual of T(u)T(v) - T(u.T(v) + T(u).v + H(Tu, Tv)) on basis pairs.
    pub fn twisted_rb_report(&self) -> CheckReport {
        let mut report = CheckReport::new();
        for p in 0..self.dim_m() {
            for q in 0..self.dim_m() {
                let lhs = self.algebra.prod(&self.t_basis[p], &self.t_basis[q]);
                let rhs = self.t_apply(self.star_basis(p, q));
                let res = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&res) {
                    report.push("twisted-rota-baxter", &[p, q], &res);
                }
            }
        }
        report
    }

    pub fn is_twisted_rb(&self) -> bool {
        self.twisted_rb_report().passed()
    }
}

/// Shape-check and evaluate the twisted Rota-Baxter residual in one call.
pub fn is_twisted_rb(
    algebra: &Algebra,
    bimodule: &Bimodule,
    cocycle: &MultiLin,
    operator: &Matrix,
) -> Result<CheckReport> {
    let ctx = TRBContext::new(algebra.clone(), bimodule.clone(), cocycle.clone(), operator.clone())?;
    Ok(ctx.twisted_rb_report())
}

/// The induced associative algebra (M, *).
pub fn star_product(ctx: &TRBContext) -> Algebra {
    Algebra {
        dim: ctx.dim_m(),
        mul: ctx.star.clone(),
    }
}

/// Raw action tensors l_T(u, a) = T(u)a - T(u.a + H(Tu, a)) and
/// r_T(a, u) = aT(u) - T(a.u + H(a, Tu)), without axiom checks.
pub fn t_actions(ctx: &TRBContext) -> (MultiLin, MultiLin) {
    let da = ctx.dim_a();
    let dm = ctx.dim_m();
    let a = &ctx.algebra;
    let m = &ctx.bimodule;
    let h = &ctx.cocycle;
    let mut left = MultiLin::zero(vec![dm, da], da);
    let mut right = MultiLin::zero(vec![da, dm], da);
    for p in 0..dm {
        let tu = &ctx.t_basis[p];
        for i in 0..da {
            // l_T(u_p, e_i) = T(u)a - T(u.a + H(Tu, a))
            let mut img = a.mul.apply_basis_with_vec(&[i], 0, tu);
            let mut inner = m.right.at(&[p, i]).to_vec();
            let h_tu_a = h.apply_basis_with_vec(&[i], 0, tu);
            inner = add_vec(&inner, &h_tu_a);
            add_assign(&mut img, &ctx.t_apply(&inner), &sign(1));
            left.add_at(&[p, i], &img);
            // r_T(e_i, u_p) = aT(u) - T(a.u + H(a, Tu))
            let mut img = a.mul.apply_basis_with_vec(&[i], 1, tu);
            let mut inner = m.left.at(&[i, p]).to_vec();
            let h_a_tu = h.apply_basis_with_vec(&[i], 1, tu);
            inner = add_vec(&inner, &h_a_tu);
            add_assign(&mut img, &ctx.t_apply(&inner), &sign(1));
            right.add_at(&[i, p], &img);
        }
    }
    (left, right)
}

/// The (M, *)-bimodule structure on A. Fails with the offending triple when
/// the context is not actually twisted Rota-Baxter.
pub fn t_bimodule(ctx: &TRBContext) -> Result<Bimodule> {
    let (left, right) = t_actions(ctx);
    let bim = Bimodule {
        algebra_dim: ctx.dim_m(),
        dim: ctx.dim_a(),
        left,
        right,
    };
    let star = star_product(ctx);
    let report = check_bimodule(&star, &bim);
    if let Some(v) = report.violations.first() {
        return Err(Error::AxiomFailure(v.at.clone()));
    }
    Ok(bim)
}

/// The cohomology differential d_T on Hom(M^n, A): the Hochschild differential
/// of (M, *) with coefficients in A, times (-1)^n.
pub fn d_t(ctx: &TRBContext, f: &MultiLin) -> Result<MultiLin> {
    let n = f.arity();
    let delta = hoch_new_delta(ctx, f)?;
    Ok(delta.scale(&sign(n as i64)))
}

/// The Hochschild differential of (M, *) with coefficients in the bimodule
/// (l_T, r_T) on A, written directly from T, H and the original actions.
pub fn hoch_new_delta(ctx: &TRBContext, f: &MultiLin) -> Result<MultiLin> {
    let n = f.arity();
    let da = ctx.dim_a();
    let dm = ctx.dim_m();
    if f.shape_in().iter().any(|&s| s != dm) || f.dim_out() != da {
        return Err(Error::ShapeMismatch("cochain must map M^n to A".into()));
    }
    let a = &ctx.algebra;
    let m = &ctx.bimodule;
    let h = &ctx.cocycle;
    let mut out = MultiLin::zero(vec![dm; n + 1], da);
    for multi in multi_indices(&vec![dm; n + 1]) {
        let mut acc = vec![qlinalg::q_zero(); da];
        let u1 = multi[0];
        let tail = f.at(&multi[1..]).to_vec();
        // T(u1) f(...) - T(u1 . f(...)) - T H(Tu1, f(...))
        add_assign(&mut acc, &a.mul.apply(&[&ctx.t_basis[u1], &tail]), &sign(0));
        let u1_f = m.right.apply_basis_with_vec(&[u1], 1, &tail);
        add_assign(&mut acc, &ctx.t_apply(&u1_f), &sign(1));
        let h_t_f = h.apply(&[&ctx.t_basis[u1], &tail]);
        add_assign(&mut acc, &ctx.t_apply(&h_t_f), &sign(1));
        // sum (-1)^i f(..., u_i * u_{i+1}, ...)
        for i in 1..=n {
            let starred = ctx.star_basis(multi[i - 1], multi[i]).to_vec();
            let mut rest: Vec<usize> = Vec::with_capacity(n - 1);
            rest.extend_from_slice(&multi[..i - 1]);
            rest.extend_from_slice(&multi[i + 1..]);
            let term = f.apply_basis_with_vec(&rest, i - 1, &starred);
            add_assign(&mut acc, &term, &sign(i as i64));
        }
        // (-1)^{n+1} [ f(...) T(u_{n+1}) - T(f(...) . u_{n+1}) - T H(f(...), Tu_{n+1}) ]
        let un1 = multi[n];
        let head = f.at(&multi[..n]).to_vec();
        let s = sign(n as i64 + 1);
        add_assign(&mut acc, &a.mul.apply(&[&head, &ctx.t_basis[un1]]), &s);
        let f_u = m.left.apply_basis_with_vec(&[un1], 0, &head);
        add_assign(&mut acc, &ctx.t_apply(&f_u), &(-s.clone()));
        let h_f_t = h.apply(&[&head, &ctx.t_basis[un1]]);
        add_assign(&mut acc, &ctx.t_apply(&h_f_t), &(-s));
        out.add_at(&multi, &acc);
    }
    Ok(out)
}

/// Matrix of d_T from Hom(M^n, A) to Hom(M^{n+1}, A) in the coordinate bases.
pub fn d_t_matrix(ctx: &TRBContext, n: usize) -> Result<Matrix> {
    let da = ctx.dim_a();
    let dm = ctx.dim_m();
    let cols = dm.pow(n as u32) * da;
    let rows = dm.pow(n as u32 + 1) * da;
    let mut out = Matrix::zero(rows, cols);
    for c in 0..cols {
        let mut flat = vec![qlinalg::q_zero(); cols];
        flat[c] = qlinalg::q_one();
        let f = MultiLin::from_flat(vec![dm; n], da, flat);
        let img = d_t(ctx, &f)?;
        for (r, v) in img.flat().iter().enumerate() {
            if !num::Zero::is_zero(v) {
                out.set(r, c, v.clone());
            }
        }
    }
    Ok(out)
}

/// Dimensions of the cohomology groups of T for 0 <= n <= n_max.
pub fn cohomology_dims(ctx: &TRBContext, n_max: usize) -> Result<Vec<usize>> {
    let mut dims = Vec::with_capacity(n_max + 1);
    let mut prev: Option<Matrix> = None;
    for n in 0..=n_max {
        let d_n = d_t_matrix(ctx, n)?;
        let cocycles = qlinalg::nullspace(&d_n);
        let coboundaries = match &prev {
            None => qlinalg::Subspace::zero(cocycles.ambient_dim),
            Some(d_prev) => qlinalg::column_space(d_prev),
        };
        dims.push(qlinalg::quotient_dim(&cocycles, &coboundaries)?);
        prev = Some(d_n);
    }
    Ok(dims)
}

/// Gauge transformation by a T-admissible Hochschild 1-cocycle B: A -> M.
///
/// Returns `None` when id + B o T is not invertible; errors when B is not a
/// 1-cocycle.
pub fn gauge_transform(ctx: &TRBContext, b: &Matrix) -> Result<Option<TRBContext>> {
    if b.rows != ctx.dim_m() || b.cols != ctx.dim_a() {
        return Err(Error::ShapeMismatch("B must map A to M".into()));
    }
    let b_cochain = MultiLin::from_matrix(b);
    let delta = hochschild_delta(&ctx.algebra, &ctx.bimodule, &b_cochain)?;
    if !delta.is_zero() {
        return Err(Error::NotACocycle);
    }
    let bt = b.mul(&ctx.operator);
    let map = Matrix::identity(ctx.dim_m()).add(&bt);
    let Some(inv) = qlinalg::inverse(&map) else {
        return Ok(None);
    };
    let t_b = ctx.operator.mul(&inv);
    Ok(Some(TRBContext::new(
        ctx.algebra.clone(),
        ctx.bimodule.clone(),
        ctx.cocycle.clone(),
        t_b,
    )?))
}

/// Shift the twist by an arbitrary 1-cochain h: the new context carries
/// H + delta h and the operator T (id - h o T)^{-1} when the latter exists.
pub fn cocycle_shift(ctx: &TRBContext, h: &Matrix) -> Result<Option<TRBContext>> {
    if h.rows != ctx.dim_m() || h.cols != ctx.dim_a() {
        return Err(Error::ShapeMismatch("h must map A to M".into()));
    }
    let h_cochain = MultiLin::from_matrix(h);
    let delta = hochschild_delta(&ctx.algebra, &ctx.bimodule, &h_cochain)?;
    let new_cocycle = ctx.cocycle.add(&delta);
    let ht = h.mul(&ctx.operator);
    let map = Matrix::identity(ctx.dim_m()).sub(&ht);
    let Some(inv) = qlinalg::inverse(&map) else {
        return Ok(None);
    };
    let t_new = ctx.operator.mul(&inv);
    Ok(Some(TRBContext::new(
        ctx.algebra.clone(),
        ctx.bimodule.clone(),
        new_cocycle,
        t_new,
    )?))
}

/// theta(v) = a.v - v.a + H(a, Tv) - H(Tv, a), the M-endomorphism generated
/// by a candidate Nijenhuis element; this is the degree-1 part of the
/// equivalence map psi_t.
pub fn theta_matrix(ctx: &TRBContext, a: &[Q]) -> Matrix {
    let dm = ctx.dim_m();
    let m = &ctx.bimodule;
    let h = &ctx.cocycle;
    let cols: Vec<Vec<Q>> = (0..dm)
        .map(|p| {
            let mut v = m.left.apply_basis_with_vec(&[p], 0, a);
            add_assign(&mut v, &m.right.apply_basis_with_vec(&[p], 1, a), &sign(1));
            add_assign(&mut v, &h.apply(&[a, &ctx.t_basis[p]]), &sign(0));
            add_assign(&mut v, &h.apply(&[&ctx.t_basis[p], a]), &sign(1));
            v
        })
        .collect();
    Matrix::from_fn(dm, dm, |i, j| cols[j][i].clone())
}

/// The A-endomorphism phi_1 = ad^l_a - ad^r_a, x -> ax - xa.
pub fn ad_matrix(ctx: &TRBContext, a: &[Q]) -> Matrix {
    let da = ctx.dim_a();
    let alg = &ctx.algebra;
    let cols: Vec<Vec<Q>> = (0..da)
        .map(|i| {
            let mut v = alg.mul.apply_basis_with_vec(&[i], 0, a);
            add_assign(&mut v, &alg.mul.apply_basis_with_vec(&[i], 1, a), &sign(1));
            v
        })
        .collect();
    Matrix::from_fn(da, da, |i, j| cols[j][i].clone())
}

/// Check all Nijenhuis-element conditions for a candidate a in A.
pub fn is_nijenhuis_element(ctx: &TRBContext, a: &[Q]) -> Result<CheckReport> {
    let da = ctx.dim_a();
    let dm = ctx.dim_m();
    if a.len() != da {
        return Err(Error::ShapeMismatch("candidate must live in A".into()));
    }
    let alg = &ctx.algebra;
    let m = &ctx.bimodule;
    let h = &ctx.cocycle;
    let mut report = CheckReport::new();
    let (l_t, r_t) = t_actions(ctx);
    let theta = theta_matrix(ctx, a);
    let comm: Vec<Vec<Q>> = (0..da)
        .map(|i| {
            let mut v = alg.mul.apply_basis_with_vec(&[i], 0, a);
            add_assign(&mut v, &alg.mul.apply_basis_with_vec(&[i], 1, a), &sign(1));
            v
        })
        .collect();
    // a (l_T(u,a) - r_T(a,u)) - (l_T(u,a) - r_T(a,u)) a = 0
    for p in 0..dm {
        let d = sub_vec(
            &l_t.apply_basis_with_vec(&[p], 1, a),
            &r_t.apply_basis_with_vec(&[p], 0, a),
        );
        let res = sub_vec(&alg.prod(a, &d), &alg.prod(&d, a));
        if !is_zero_vec(&res) {
            report.push("nij-commutator", &[p], &res);
        }
    }
    for i in 0..da {
        for j in 0..da {
            // (ab - ba)(ac - ca) = 0
            let res = alg.prod(&comm[i], &comm[j]);
            if !is_zero_vec(&res) {
                report.push("ref-t", &[i, j], &res);
            }
            // theta(H(b,c)) = H(ab - ba, c) + H(b, ac - ca)
            let lhs = theta.mul_vec(h.at(&[i, j]));
            let rhs = add_vec(
                &h.apply_basis_with_vec(&[j], 0, &comm[i]),
                &h.apply_basis_with_vec(&[i], 1, &comm[j]),
            );
            let res = sub_vec(&lhs, &rhs);
            if !is_zero_vec(&res) {
                report.push("ref-w-1", &[i, j], &res);
            }
            // H(ab - ba, ac - ca) = 0
            let res = h.apply(&[&comm[i], &comm[j]]);
            if !is_zero_vec(&res) {
                report.push("ref-w-2", &[i, j], &res);
            }
        }
    }
    for i in 0..da {
        for p in 0..dm {
            let theta_p: Vec<Q> = (0..dm).map(|r| theta.get(r, p).clone()).collect();
            // theta(b.u) = (ab - ba).u + b.theta(u)
            let bu = m.left.at(&[i, p]).to_vec();
            let lhs = theta.mul_vec(&bu);
            let rhs = add_vec(
                &m.left.apply_basis_with_vec(&[p], 0, &comm[i]),
                &m.left.apply_basis_with_vec(&[i], 1, &theta_p),
            );
            let res = sub_vec(&lhs, &rhs);
            if !is_zero_vec(&res) {
                report.push("ref-u-1", &[i, p], &res);
            }
            // (ab - ba) . theta(u) = 0
            let res = m.left.apply(&[&comm[i], &theta_p]);
            if !is_zero_vec(&res) {
                report.push("ref-u-2", &[i, p], &res);
            }
            // theta(u.b) = u.(ab - ba) + theta(u).b
            let ub = m.right.at(&[p, i]).to_vec();
            let lhs = theta.mul_vec(&ub);
            let rhs = add_vec(
                &m.right.apply_basis_with_vec(&[p], 1, &comm[i]),
                &m.right.apply_basis_with_vec(&[i], 0, &theta_p),
            );
            let res = sub_vec(&lhs, &rhs);
            if !is_zero_vec(&res) {
                report.push("ref-v-1", &[i, p], &res);
            }
            // theta(u) . (ab - ba) = 0
            let res = m.right.apply(&[&theta_p, &comm[i]]);
            if !is_zero_vec(&res) {
                report.push("ref-v-2", &[i, p], &res);
            }
        }
    }
    Ok(report)
}

/// Morphism conditions from (A, M, H, T) to (A', M', H', T') for a pair
/// phi: A -> A' (checked to be an algebra morphism) and psi: M -> M'.
pub fn is_trb_morphism(
    ctx: &TRBContext,
    ctx2: &TRBContext,
    phi: &Matrix,
    psi: &Matrix,
) -> Result<CheckReport> {
    if phi.cols != ctx.dim_a() || phi.rows != ctx2.dim_a() {
        return Err(Error::ShapeMismatch("phi must map A to A'".into()));
    }
    if psi.cols != ctx.dim_m() || psi.rows != ctx2.dim_m() {
        return Err(Error::ShapeMismatch("psi must map M to M'".into()));
    }
    let mut report = CheckReport::new();
    let da = ctx.dim_a();
    let dm = ctx.dim_m();
    let phi_basis: Vec<Vec<Q>> = (0..da).map(|i| phi.mul_vec(&basis_vec(da, i))).collect();
    let psi_basis: Vec<Vec<Q>> = (0..dm).map(|p| psi.mul_vec(&basis_vec(dm, p))).collect();
    for i in 0..da {
        for j in 0..da {
            let lhs = phi.mul_vec(ctx.algebra.prod_basis(i, j));
            let rhs = ctx2.algebra.prod(&phi_basis[i], &phi_basis[j]);
            let res = sub_vec(&lhs, &rhs);
            if !is_zero_vec(&res) {
                report.push("phi-algebra-morphism", &[i, j], &res);
            }
            let lhs = psi.mul_vec(ctx.cocycle.at(&[i, j]));
            let rhs = ctx2.cocycle.apply(&[&phi_basis[i], &phi_basis[j]]);
            let res = sub_vec(&lhs, &rhs);
            if !is_zero_vec(&res) {
                report.push("h-comp", &[i, j], &res);
            }
        }
    }
    for i in 0..da {
        for p in 0..dm {
            let lhs = psi.mul_vec(ctx.bimodule.left.at(&[i, p]));
            let rhs = ctx2.bimodule.left.apply(&[&phi_basis[i], &psi_basis[p]]);
            let res = sub_vec(&lhs, &rhs);
            if !is_zero_vec(&res) {
                report.push("action-comp-left", &[i, p], &res);
            }
            let lhs = psi.mul_vec(ctx.bimodule.right.at(&[p, i]));
            let rhs = ctx2.bimodule.right.apply(&[&psi_basis[p], &phi_basis[i]]);
            let res = sub_vec(&lhs, &rhs);
            if !is_zero_vec(&res) {
                report.push("action-comp-right", &[p, i], &res);
            }
        }
    }
    for p in 0..dm {
        let lhs = phi.mul_vec(ctx.t_of_basis(p));
        let rhs = ctx2.operator.mul_vec(&psi_basis[p]);
        let res = sub_vec(&lhs, &rhs);
        if !is_zero_vec(&res) {
            report.push("t-comp", &[p], &res);
        }
    }
    Ok(report)
}

/// View a Reynolds candidate R: A -> A as a twisted context: M is the adjoint
/// bimodule and the twist is H = -mu.
pub fn reynolds_context(algebra: &Algebra, r: &Matrix) -> Result<TRBContext> {
    if r.rows != algebra.dim || r.cols != algebra.dim {
        return Err(Error::ShapeMismatch("R must be an endomorphism of A".into()));
    }
    let bimodule = Bimodule::adjoint(algebra);
    let cocycle = algebra.mul.neg();
    TRBContext::new(algebra.clone(), bimodule, cocycle, r.clone())
}

/// Certificate-style rigidity check: do the coboundaries of the supplied
/// verified Nijenhuis elements span the whole space of 1-cocycles?
#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub z1_dim: usize,
    pub span_dim: usize,
    pub spans: bool,
}

pub fn nijenhuis_spans_z1(ctx: &TRBContext, members: &[Vec<Q>]) -> Result<RigidityReport> {
    let d1 = d_t_matrix(ctx, 1)?;
    let z1 = qlinalg::nullspace(&d1);
    let mut images = Vec::new();
    for a in members {
        let f = MultiLin::from_vector(a.clone());
        let img = d_t(ctx, &f)?;
        images.push(img.flat().to_vec());
    }
    let span = qlinalg::Subspace::span(z1.ambient_dim, images);
    for v in &span.basis {
        if !z1.contains(v) {
            return Err(Error::ContainmentViolation);
        }
    }
    Ok(RigidityReport {
        z1_dim: z1.dim(),
        span_dim: span.dim(),
        spans: span.dim() == z1.dim(),
    })
}
