//! The graded-algebraic engine: Gerstenhaber bracket on multilinear maps of
//! A (+) M, the derived binary bracket on Hom(M^n, A), the twist-dependent
//! ternary bracket, Maurer-Cartan residuals, the twisted structure maps and
//! numerical verification of the higher Jacobi identities at low arity.
//!
//! Degree convention: Hom(M^n, A) sits in degree n, so degree-1 elements are
//! linear maps M -> A and Maurer-Cartan elements are exactly the candidates
//! for twisted Rota-Baxter operators.

use crate::algebra::{add_assign, twisted_semidirect_unchecked, Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::multilin::{multi_indices, sign, MultiLin};
use crate::qlinalg::{q_ratio, q_zero, Q};
use crate::trb::TRBContext;

/// Lift an element of Hom(M^n, A) to a multilinear map on A (+) M:
/// the lift eats only the M-components and lands in the A-summand.
/// Coordinates on A (+) M: A first (0..da), then M (da..da+dm).
pub fn lift(da: usize, dm: usize, e: &MultiLin) -> MultiLin {
    let n = e.arity();
    let d = da + dm;
    let mut out = MultiLin::zero(vec![d; n], d);
    for multi in multi_indices(&vec![dm; n]) {
        let mixed: Vec<usize> = multi.iter().map(|&u| da + u).collect();
        let img = e.at(&multi);
        for (k, c) in img.iter().enumerate() {
            out.set(&mixed, k, c.clone());
        }
    }
    out
}

/// The multiplication mu + l + r on A (+) M, i.e. the semidirect product with
/// zero twist, as an arity-2 mixed cochain.
pub fn mu_lift(a: &Algebra, m: &Bimodule) -> MultiLin {
    let h0 = MultiLin::zero(vec![a.dim, a.dim], m.dim);
    twisted_semidirect_unchecked(a, m, &h0).mul
}

/// f composed-over g: sum over insertion positions with the Gerstenhaber
/// signs. Arity-0 arguments are supported (insertion of a constant; an
/// arity-0 f has no slots, giving 0).
pub fn comp_bar(f: &MultiLin, g: &MultiLin) -> MultiLin {
    let m = f.arity();
    let n = g.arity();
    assert!(m + n >= 1, "composition needs at least one slot overall");
    let d = f.dim_out();
    let out_arity = m + n - 1;
    let mut out = MultiLin::zero(vec![d; out_arity], d);
    if m == 0 {
        return out;
    }
    for multi in multi_indices(&vec![d; out_arity]) {
        let mut acc = vec![q_zero(); d];
        for i in 1..=m {
            let g_val = g.at(&multi[i - 1..i - 1 + n]);
            let mut rest: Vec<usize> = Vec::with_capacity(m - 1);
            rest.extend_from_slice(&multi[..i - 1]);
            rest.extend_from_slice(&multi[i - 1 + n..]);
            let term = f.apply_basis_with_vec(&rest, i - 1, g_val);
            let s = sign((i as i64 - 1) * (n as i64 - 1));
            add_assign(&mut acc, &term, &s);
        }
        out.add_at(&multi, &acc);
    }
    out
}

/// The classical Gerstenhaber bracket [f, g] = f comp g -+ g comp f on
/// multilinear maps of a single space.
pub fn gerstenhaber(f: &MultiLin, g: &MultiLin) -> MultiLin {
    let m = f.arity() as i64;
    let n = g.arity() as i64;
    let fg = comp_bar(f, g);
    let gf = comp_bar(g, f);
    fg.sub(&gf.scale(&sign((m - 1) * (n - 1))))
}

fn check_graded_shape(dm: usize, da: usize, e: &MultiLin, what: &str) -> Result<()> {
    if e.shape_in().iter().any(|&s| s != dm) || e.dim_out() != da {
        return Err(Error::ShapeMismatch(format!("{what} must map M^n to A")));
    }
    Ok(())
}

/// The derived bracket [[P, Q]] = (-1)^p [[mu + l + r, P], Q] restricted back
/// to Hom(M^(p+q), A). The restriction is checked: a nonzero M-component at
/// all-M inputs signals an implementation bug.
pub fn derived_bracket(
    a: &Algebra,
    m: &Bimodule,
    p: &MultiLin,
    q: &MultiLin,
) -> Result<MultiLin> {
    let da = a.dim;
    let dm = m.dim;
    check_graded_shape(dm, da, p, "P")?;
    check_graded_shape(dm, da, q, "Q")?;
    let mu = mu_lift(a, m);
    let b1 = gerstenhaber(&mu, &lift(da, dm, p));
    let b2 = gerstenhaber(&b1, &lift(da, dm, q));
    let out_arity = p.arity() + q.arity();
    let mut out = MultiLin::zero(vec![dm; out_arity], da);
    let s = sign(p.arity() as i64);
    for multi in multi_indices(&vec![dm; out_arity]) {
        let mixed: Vec<usize> = multi.iter().map(|&u| da + u).collect();
        let img = b2.at(&mixed);
        for k in 0..da {
            out.set(&multi, k, &img[k] * &s);
        }
        if img[da..].iter().any(|c| !num::Zero::is_zero(c)) {
            return Err(Error::RestrictionFailure);
        }
    }
    Ok(out)
}

/// The degree -1 ternary bracket built from the 2-cocycle H. Six groups of
/// insertions of H applied to pairs of the arguments, with the displayed
/// signs; graded skew-symmetric. Arity-0 arguments are supported.
pub fn ternary_bracket(
    a: &Algebra,
    m: &Bimodule,
    h: &MultiLin,
    p: &MultiLin,
    q: &MultiLin,
    r: &MultiLin,
) -> Result<MultiLin> {
    let da = a.dim;
    let dm = m.dim;
    check_graded_shape(dm, da, p, "P")?;
    check_graded_shape(dm, da, q, "Q")?;
    check_graded_shape(dm, da, r, "R")?;
    if h.shape_in() != [da, da] || h.dim_out() != dm {
        return Err(Error::ShapeMismatch("H must map A x A to M".into()));
    }
    let (pp, qq, rr) = (p.arity() as i64, q.arity() as i64, r.arity() as i64);
    if pp + qq + rr == 0 {
        return Err(Error::ShapeMismatch("ternary bracket needs positive total arity".into()));
    }
    let out_arity = (pp + qq + rr - 1) as usize;
    let mut out = MultiLin::zero(vec![dm; out_arity], da);
    let pref = sign(pp * qq * rr);
    // (coefficient, outer, first-inside-H, second-inside-H, per-insertion degree)
    let groups: [(Q, &MultiLin, &MultiLin, &MultiLin, i64); 6] = [
        (&pref * &sign(0), p, q, r, qq),
        (&pref * &sign(qq * rr + 1), p, r, q, rr),
        (&pref * &sign(pp * qq + 1), q, p, r, pp),
        (&pref * &sign(pp * (qq + rr)), q, r, p, rr),
        (&pref * &sign(pp * qq + qq * rr + rr * pp + 1), r, q, p, qq),
        (&pref * &sign((pp + qq) * rr), r, p, q, pp),
    ];
    let tuples = multi_indices(&vec![dm; out_arity]);
    for (coeff, outer, x, y, per_i) in groups {
        if num::Zero::is_zero(&coeff) {
            continue;
        }
        let m_out = outer.arity();
        let nx = x.arity();
        let ny = y.arity();
        for i in 1..=m_out {
            let s = &coeff * &sign((i as i64 - 1) * per_i);
            for multi in &tuples {
                let x_val = x.at(&multi[i - 1..i - 1 + nx]);
                let y_val = y.at(&multi[i - 1 + nx..i - 1 + nx + ny]);
                let h_val = h.apply(&[x_val, y_val]);
                let mut rest: Vec<usize> = Vec::with_capacity(m_out - 1);
                rest.extend_from_slice(&multi[..i - 1]);
                rest.extend_from_slice(&multi[i - 1 + nx + ny..]);
                let term = outer.apply_basis_with_vec(&rest, i - 1, &h_val);
                let mut acc = vec![q_zero(); da];
                add_assign(&mut acc, &term, &s);
                out.add_at(multi, &acc);
            }
        }
    }
    Ok(out)
}

/// Maurer-Cartan residual 1/2 [[T, T]] - 1/6 [[T, T, T]] of an arity-1
/// candidate; zero exactly when T is twisted Rota-Baxter.
pub fn mc_residual(
    a: &Algebra,
    m: &Bimodule,
    h: &MultiLin,
    t: &MultiLin,
) -> Result<MultiLin> {
    if t.arity() != 1 {
        return Err(Error::ShapeMismatch("Maurer-Cartan candidates have degree 1".into()));
    }
    let tt = derived_bracket(a, m, t, t)?;
    let ttt = ternary_bracket(a, m, h, t, t, t)?;
    Ok(tt.scale(&q_ratio(1, 2)).sub(&ttt.scale(&q_ratio(1, 6))))
}

/// An L-infinity structure on the graded space (+)_n Hom(M^n, A) exposed as
/// black-box brackets. Structure maps beyond l3 vanish; `l` returns the zero
/// map of the right shape for k > 3.
pub trait LInfty {
    fn dim_a(&self) -> usize;
    fn dim_m(&self) -> usize;
    fn l(&self, k: usize, args: &[&MultiLin]) -> Result<MultiLin>;

    /// Output arity of l_k: sum of input degrees plus (2 - k).
    fn out_arity(&self, k: usize, args: &[&MultiLin]) -> usize {
        let total: usize = args.iter().map(|a| a.arity()).sum();
        (total as i64 + 2 - k as i64).max(0) as usize
    }

    fn zero_of(&self, k: usize, args: &[&MultiLin]) -> MultiLin {
        MultiLin::zero(vec![self.dim_m(); self.out_arity(k, args)], self.dim_a())
    }
}

/// The bare structure (0, [[.,.]], [[.,.,.]]) whose Maurer-Cartan elements are
/// the twisted Rota-Baxter operators for H.
pub struct Untwisted {
    pub algebra: Algebra,
    pub bimodule: Bimodule,
    pub cocycle: MultiLin,
}

impl LInfty for Untwisted {
    fn dim_a(&self) -> usize {
        self.algebra.dim
    }

    fn dim_m(&self) -> usize {
        self.bimodule.dim
    }

    fn l(&self, k: usize, args: &[&MultiLin]) -> Result<MultiLin> {
        if k >= 1 && args.len() != k {
            return Err(Error::ShapeMismatch(format!("l_{k} takes {k} arguments")));
        }
        match k {
            2 => derived_bracket(&self.algebra, &self.bimodule, args[0], args[1]),
            3 => ternary_bracket(&self.algebra, &self.bimodule, &self.cocycle, args[0], args[1], args[2]),
            _ => Ok(self.zero_of(k, args)),
        }
    }
}

/// The structure twisted by a Maurer-Cartan element T:
/// l1 = d_T, l2 = [[.,.]] - [[T,.,.]], l3 = [[.,.,.]].
pub struct Twisted {
    pub ctx: TRBContext,
}

impl Twisted {
    fn t_element(&self) -> MultiLin {
        MultiLin::from_matrix(&self.ctx.operator)
    }
}

impl LInfty for Twisted {
    fn dim_a(&self) -> usize {
        self.ctx.dim_a()
    }

    fn dim_m(&self) -> usize {
        self.ctx.dim_m()
    }

    fn l(&self, k: usize, args: &[&MultiLin]) -> Result<MultiLin> {
        if k >= 1 && args.len() != k {
            return Err(Error::ShapeMismatch(format!("l_{k} takes {k} arguments")));
        }
        let a = &self.ctx.algebra;
        let m = &self.ctx.bimodule;
        let h = &self.ctx.cocycle;
        let t = self.t_element();
        match k {
            1 => twisted_differential(&self.ctx, args[0]),
            2 => {
                let binary = derived_bracket(a, m, args[0], args[1])?;
                let correction = ternary_bracket(a, m, h, &t, args[0], args[1])?;
                Ok(binary.sub(&correction))
            }
            3 => ternary_bracket(a, m, h, args[0], args[1], args[2]),
            _ => Ok(self.zero_of(k, args)),
        }
    }
}

/// The differential d_T(f) = [[T, f]] - 1/2 [[T, T, f]] along the bracket
/// route; an independent route from the direct Hochschild-style formula.
pub fn twisted_differential(ctx: &TRBContext, f: &MultiLin) -> Result<MultiLin> {
    let t = MultiLin::from_matrix(&ctx.operator);
    let a = &ctx.algebra;
    let m = &ctx.bimodule;
    let tf = derived_bracket(a, m, &t, f)?;
    let ttf = ternary_bracket(a, m, &ctx.cocycle, &t, &t, f)?;
    Ok(tf.sub(&ttf.scale(&q_ratio(1, 2))))
}

pub fn twisted_structure(ctx: &TRBContext) -> Twisted {
    Twisted { ctx: ctx.clone() }
}

/// All (i, n-i) unshuffles of 0..n as index lists (chosen block, complement).
fn unshuffles(n: usize, i: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), 0usize)];
    while let Some((chosen, next)) = stack.pop() {
        if chosen.len() == i {
            let comp: Vec<usize> = (0..n).filter(|k| !chosen.contains(k)).collect();
            out.push((chosen, comp));
            continue;
        }
        for k in next..n {
            let mut c = chosen.clone();
            c.push(k);
            stack.push((c, k + 1));
        }
    }
    out
}

/// Combined sign (-1)^sigma epsilon(sigma) for the permutation that sends
/// 1..n to `perm`, with Koszul sign computed from the element degrees:
/// every adjacent swap of elements of degrees x, y contributes
/// (-1)^(1 + x y).
fn unshuffle_sign(perm: &[usize], degrees: &[usize]) -> Q {
    let mut arr = perm.to_vec();
    let mut exp: i64 = 0;
    for pass in 0..arr.len() {
        for k in 0..arr.len().saturating_sub(1 + pass) {
            if arr[k] > arr[k + 1] {
                exp += 1 + (degrees[arr[k]] * degrees[arr[k + 1]]) as i64;
                arr.swap(k, k + 1);
            }
        }
    }
    sign(exp)
}

/// Residual of the n-th higher Jacobi identity evaluated on concrete
/// arguments; zero for a genuine L-infinity structure.
pub fn linfty_jacobi_residual(
    structure: &dyn LInfty,
    n: usize,
    args: &[MultiLin],
) -> Result<MultiLin> {
    assert_eq!(args.len(), n);
    assert!((1..=5).contains(&n));
    let degrees: Vec<usize> = args.iter().map(|a| a.arity()).collect();
    let total: usize = degrees.iter().sum();
    // residual degree: total + (2 - i) + (2 - j) with i + j = n + 1
    let res_arity = (total as i64 + 3 - n as i64).max(0) as usize;
    let mut out = MultiLin::zero(vec![structure.dim_m(); res_arity], structure.dim_a());
    for i in 1..=n {
        let j = n + 1 - i;
        if i > 3 && j > 3 {
            continue;
        }
        for (chosen, comp) in unshuffles(n, i) {
            let perm: Vec<usize> = chosen.iter().chain(comp.iter()).copied().collect();
            let s = &unshuffle_sign(&perm, &degrees) * &sign((i * (j - 1)) as i64);
            let inner_args: Vec<&MultiLin> = chosen.iter().map(|&k| &args[k]).collect();
            let inner = structure.l(i, &inner_args)?;
            let mut outer_args: Vec<&MultiLin> = vec![&inner];
            outer_args.extend(comp.iter().map(|&k| &args[k]));
            let term = structure.l(j, &outer_args)?;
            out = out.add(&term.scale(&s));
        }
    }
    Ok(out)
}
