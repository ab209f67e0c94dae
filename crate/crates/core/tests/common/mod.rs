#![allow(dead_code)] // each test binary uses a different subset of the oracles

//! Independent oracles for the integration suites: everything here is written
//! against a different route than the implementation it checks (generic
//! Hochschild differentials, literal term-by-term display evaluation), so
//! agreement is meaningful evidence.

use trb_core::algebra::{hochschild_delta, Bimodule};
use trb_core::multilin::{basis_vec, multi_indices, sign, MultiLin};
use trb_core::nsop::{ns_to_multiplication, theta, NSAlgebra, TaggedCochain};
use trb_core::qlinalg::{self, Matrix, Q};
use trb_core::trb::{self, TRBContext};

/// d_T via the generic Hochschild machinery: the differential of the algebra
/// (M, *) with coefficients in the bimodule (l_T, r_T) on A, times (-1)^n.
/// The implementation writes the same map directly from T and H, so this is
/// an independent route.
pub fn naive_d_t(ctx: &TRBContext, f: &MultiLin) -> MultiLin {
    let star_alg = trb::star_product(ctx);
    let module = trb::t_bimodule(ctx).expect("valid context");
    let delta = hochschild_delta(&star_alg, &module, f).expect("shapes");
    delta.scale(&sign(f.arity() as i64))
}

fn add_assign(acc: &mut [Q], v: &[Q], c: &Q) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b * c;
    }
}

/// Literal evaluation of the displayed expansion of [[T, f]]: the outer
/// (-1)^n prefactor, the two boundary groups and the alternating sum over
/// merged adjacent slots u_i . Tu_{i+1} + Tu_i . u_{i+1}.
pub fn display_tf(ctx: &TRBContext, f: &MultiLin) -> MultiLin {
    let n = f.arity();
    let (da, dm) = (ctx.dim_a(), ctx.dim_m());
    let m = &ctx.bimodule;
    let mut out = MultiLin::zero(vec![dm; n + 1], da);
    let pre = sign(n as i64);
    for multi in multi_indices(&vec![dm; n + 1]) {
        let mut acc = vec![qlinalg::q_zero(); da];
        let tail = f.at(&multi[1..]).to_vec();
        let tu1 = ctx.t_of_basis(multi[0]).to_vec();
        add_assign(&mut acc, &ctx.algebra.mul.apply(&[&tu1, &tail]), &qlinalg::q_one());
        let u1_f = m.right.apply_basis_with_vec(&[multi[0]], 1, &tail);
        add_assign(&mut acc, &ctx.t_apply(&u1_f), &sign(1));
        for i in 1..=n {
            let (p, q) = (multi[i - 1], multi[i]);
            let mut merged = m.right.apply_basis_with_vec(&[p], 1, ctx.t_of_basis(q));
            add_assign(
                &mut merged,
                &m.left.apply_basis_with_vec(&[q], 0, ctx.t_of_basis(p)),
                &qlinalg::q_one(),
            );
            let mut rest: Vec<usize> = Vec::with_capacity(n - 1);
            rest.extend_from_slice(&multi[..i - 1]);
            rest.extend_from_slice(&multi[i + 1..]);
            add_assign(
                &mut acc,
                &f.apply_basis_with_vec(&rest, i - 1, &merged),
                &sign(i as i64),
            );
        }
        let head = f.at(&multi[..n]).to_vec();
        let tun1 = ctx.t_of_basis(multi[n]).to_vec();
        add_assign(&mut acc, &ctx.algebra.mul.apply(&[&head, &tun1]), &sign(n as i64 + 1));
        let f_u = m.left.apply_basis_with_vec(&[multi[n]], 0, &head);
        add_assign(&mut acc, &ctx.t_apply(&f_u), &sign(n as i64));
        for a in acc.iter_mut() {
            *a *= &pre;
        }
        out.add_at(&multi, &acc);
    }
    out
}

/// Literal evaluation of the displayed expansion of [[T, T, f]]: prefactor
/// -2 (-1)^n, the two T H boundary terms and the alternating H-merged sum.
pub fn display_ttf(ctx: &TRBContext, f: &MultiLin) -> MultiLin {
    let n = f.arity();
    let (da, dm) = (ctx.dim_a(), ctx.dim_m());
    let h = &ctx.cocycle;
    let mut out = MultiLin::zero(vec![dm; n + 1], da);
    let pre = sign(n as i64) * qlinalg::q_int(-2);
    for multi in multi_indices(&vec![dm; n + 1]) {
        let mut acc = vec![qlinalg::q_zero(); da];
        let tail = f.at(&multi[1..]).to_vec();
        let h1 = h.apply(&[ctx.t_of_basis(multi[0]), &tail]);
        add_assign(&mut acc, &ctx.t_apply(&h1), &sign(1));
        let head = f.at(&multi[..n]).to_vec();
        let h2 = h.apply(&[&head, ctx.t_of_basis(multi[n])]);
        add_assign(&mut acc, &ctx.t_apply(&h2), &sign(n as i64));
        for i in 1..=n {
            let (p, q) = (multi[i - 1], multi[i]);
            let merged = h.apply(&[ctx.t_of_basis(p), ctx.t_of_basis(q)]);
            let mut rest: Vec<usize> = Vec::with_capacity(n - 1);
            rest.extend_from_slice(&multi[..i - 1]);
            rest.extend_from_slice(&multi[i + 1..]);
            add_assign(
                &mut acc,
                &f.apply_basis_with_vec(&rest, i - 1, &merged),
                &sign(i as i64),
            );
        }
        for a in acc.iter_mut() {
            *a *= &pre;
        }
        out.add_at(&multi, &acc);
    }
    out
}

/// Residual of the displayed first-order deformation condition for a linear
/// map f : M -> A:
/// T(u) f(v) + f(u) T(v)
///   - f(u . Tv + Tu . v + H(Tu, Tv))
///   - T(u . f(v) + f(u) . v + H(Tu, f(v)) + H(f(u), Tv)).
pub fn first_order_display_residual(ctx: &TRBContext, f: &Matrix) -> MultiLin {
    let (da, dm) = (ctx.dim_a(), ctx.dim_m());
    let m = &ctx.bimodule;
    let h = &ctx.cocycle;
    let mut out = MultiLin::zero(vec![dm, dm], da);
    for p in 0..dm {
        for q in 0..dm {
            let fu = f.mul_vec(&basis_vec(dm, p));
            let fv = f.mul_vec(&basis_vec(dm, q));
            let tu = ctx.t_of_basis(p).to_vec();
            let tv = ctx.t_of_basis(q).to_vec();
            let mut acc = ctx.algebra.prod(&tu, &fv);
            add_assign(&mut acc, &ctx.algebra.prod(&fu, &tv), &qlinalg::q_one());
            let mut star = m.right.apply_basis_with_vec(&[p], 1, &tv);
            add_assign(&mut star, &m.left.apply_basis_with_vec(&[q], 0, &tu), &qlinalg::q_one());
            add_assign(&mut star, &h.apply(&[&tu, &tv]), &qlinalg::q_one());
            add_assign(&mut acc, &f.mul_vec(&star), &sign(1));
            let mut inner = m.right.apply_basis_with_vec(&[p], 1, &fv);
            add_assign(&mut inner, &m.left.apply_basis_with_vec(&[q], 0, &fu), &qlinalg::q_one());
            add_assign(&mut inner, &h.apply(&[&tu, &fv]), &qlinalg::q_one());
            add_assign(&mut inner, &h.apply(&[&fu, &tv]), &qlinalg::q_one());
            add_assign(&mut acc, &ctx.t_apply(&inner), &sign(1));
            out.add_at(&[p, q], &acc);
        }
    }
    out
}

/// Classical Hochschild differential of Theta(f) in the star algebra of an
/// NS-structure, with adjoint coefficients — the target of the chain-map
/// comparison for Theta.
pub fn naive_theta_delta(ns: &NSAlgebra, f: &TaggedCochain) -> MultiLin {
    let star_alg = ns.star_algebra();
    let module = Bimodule::adjoint(&star_alg);
    hochschild_delta(&star_alg, &module, &theta(f)).expect("shapes")
}

/// Matrix of the ordinary Hochschild differential on 1-cochains Hom(A, M),
/// used to enumerate gauge parameters.
pub fn hochschild_one_cocycles(ctx: &TRBContext) -> Vec<Matrix> {
    let (da, dm) = (ctx.dim_a(), ctx.dim_m());
    let cols = da * dm;
    let mut mat_cols: Vec<Vec<Q>> = Vec::with_capacity(cols);
    for i in 0..cols {
        let mut flat = vec![qlinalg::q_zero(); cols];
        flat[i] = qlinalg::q_one();
        let f = MultiLin::from_flat(vec![da], dm, flat);
        let delta = hochschild_delta(&ctx.algebra, &ctx.bimodule, &f).expect("shapes");
        mat_cols.push(delta.flat().to_vec());
    }
    let rows = mat_cols[0].len();
    let big = Matrix::from_fn(rows, cols, |r, c| mat_cols[c][r].clone());
    qlinalg::nullspace(&big)
        .basis
        .iter()
        .map(|flat| MultiLin::from_flat(vec![da], dm, flat.clone()).to_matrix())
        .collect()
}

/// The multiplication cochain of an NS corpus structure.
pub fn multiplication_of(ns: &NSAlgebra) -> TaggedCochain {
    ns_to_multiplication(ns)
}

/// A random tagged cochain with small integer coefficients.
pub fn random_tagged(
    rng: &mut rand_chacha::ChaCha8Rng,
    dim: usize,
    arity: usize,
    bound: i64,
) -> TaggedCochain {
    let components = (0..trb_core::nsop::tag_count(arity))
        .map(|_| trb_core::sampling::random_multilin(rng, vec![dim; arity], dim, bound))
        .collect();
    TaggedCochain::from_components(dim, arity, components).expect("shapes")
}
