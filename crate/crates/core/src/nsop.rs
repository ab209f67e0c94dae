//! NS-algebras and their cohomology through a tagged non-symmetric operad:
//! partial compositions, multiplications, the differential delta_pi,
//! cohomology dimensions, the component-sum morphism to the endomorphism
//! operad, the dendriform suboperad and the twisted-Rota-Baxter functor.

use crate::algebra::{add_assign, add_vec, is_zero_vec, sub_vec, Algebra};
use crate::error::{Error, Result};
use crate::multilin::{multi_indices, sign, MultiLin};
use crate::qlinalg::{self, Matrix, Q};
use crate::report::CheckReport;
use crate::trb::TRBContext;

/// Number of tags at a given arity: one for arity 1, arity + 1 otherwise.
pub fn tag_count(arity: usize) -> usize {
    if arity == 1 {
        1
    } else {
        arity + 1
    }
}

/// An element of the tagged operad: one Hom(A^n, A) tensor per tag.
/// Tags are 1-based in the math; `components[r - 1]` stores tag [r].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedCochain {
    pub dim: usize,
    pub arity: usize,
    pub components: Vec<MultiLin>,
}

impl TaggedCochain {
    pub fn zero(dim: usize, arity: usize) -> Self {
        assert!(arity >= 1);
        let components = (0..tag_count(arity))
            .map(|_| MultiLin::zero(vec![dim; arity], dim))
            .collect();
        TaggedCochain {
            dim,
            arity,
            components,
        }
    }

    pub fn from_components(dim: usize, arity: usize, components: Vec<MultiLin>) -> Result<Self> {
        if components.len() != tag_count(arity) {
            return Err(Error::ShapeMismatch(format!(
                "arity {arity} needs {} tag components",
                tag_count(arity)
            )));
        }
        for c in &components {
            if c.shape_in() != vec![dim; arity] || c.dim_out() != dim {
                return Err(Error::ShapeMismatch("tag component has wrong shape".into()));
            }
        }
        Ok(TaggedCochain {
            dim,
            arity,
            components,
        })
    }

    /// The operad identity: id([1]; a) = a.
    pub fn identity(dim: usize) -> Self {
        TaggedCochain {
            dim,
            arity: 1,
            components: vec![MultiLin::from_matrix(&Matrix::identity(dim))],
        }
    }

    /// Tag component, 1-based; tags beyond the existing range count as zero.
    pub fn component(&self, r: usize) -> MultiLin {
        assert!(r >= 1);
        if r <= self.components.len() {
            self.components[r - 1].clone()
        } else {
            MultiLin::zero(vec![self.dim; self.arity], self.dim)
        }
    }

    /// Sum of all tag components ("g([1] + ... + [n+1]; ...)").
    pub fn tag_sum(&self) -> MultiLin {
        let mut out = MultiLin::zero(vec![self.dim; self.arity], self.dim);
        for c in &self.components {
            out = out.add(c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiLin::is_zero)
    }

    pub fn add(&self, other: &TaggedCochain) -> TaggedCochain {
        assert_eq!((self.dim, self.arity), (other.dim, other.arity));
        TaggedCochain {
            dim: self.dim,
            arity: self.arity,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &TaggedCochain) -> TaggedCochain {
        self.add(&other.scale(&qlinalg::q_int(-1)))
    }

    pub fn scale(&self, c: &Q) -> TaggedCochain {
        TaggedCochain {
            dim: self.dim,
            arity: self.arity,
            components: self.components.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// Flat coefficient vector: components concatenated in tag order. The
    /// coordinates used by the differential matrices.
    pub fn flatten(&self) -> Vec<Q> {
        let mut out = Vec::new();
        for c in &self.components {
            out.extend_from_slice(c.flat());
        }
        out
    }

    pub fn from_flat(dim: usize, arity: usize, flat: &[Q]) -> Self {
        let comp_size = dim.pow(arity as u32) * dim;
        assert_eq!(flat.len(), tag_count(arity) * comp_size);
        let components = (0..tag_count(arity))
            .map(|t| {
                MultiLin::from_flat(
                    vec![dim; arity],
                    dim,
                    flat[t * comp_size..(t + 1) * comp_size].to_vec(),
                )
            })
            .collect();
        TaggedCochain {
            dim,
            arity,
            components,
        }
    }
}

/// Partial composition of the endomorphism operad: f with g substituted into
/// slot i (1-based), no signs.
pub fn endo_compose(f: &MultiLin, g: &MultiLin, i: usize) -> MultiLin {
    let m = f.arity();
    let n = g.arity();
    assert!((1..=m).contains(&i));
    let d = f.dim_out();
    let out_arity = m + n - 1;
    let mut out = MultiLin::zero(vec![d; out_arity], d);
    for multi in multi_indices(&vec![d; out_arity]) {
        let g_val = g.at(&multi[i - 1..i - 1 + n]);
        let mut rest: Vec<usize> = Vec::with_capacity(m - 1);
        rest.extend_from_slice(&multi[..i - 1]);
        rest.extend_from_slice(&multi[i - 1 + n..]);
        let term = f.apply_basis_with_vec(&rest, i - 1, g_val);
        out.add_at(&multi, &term);
    }
    out
}

/// Partial composition of the tagged operad, implementing the tag-case
/// formula. Missing tag components (arity-1 factors) count as zero and tag
/// sums run over the tags that exist; these conventions are forced by the
/// unit laws, which the tests verify.
pub fn partial_compose(
    f: &TaggedCochain,
    g: &TaggedCochain,
    i: usize,
) -> Result<TaggedCochain> {
    if f.dim != g.dim {
        return Err(Error::ShapeMismatch("operad elements over different spaces".into()));
    }
    let (m, n) = (f.arity, g.arity);
    if i < 1 || i > m {
        return Err(Error::IndexOutOfRange(format!(
            "composition slot {i} outside 1..={m}"
        )));
    }
    let out_arity = m + n - 1;
    let g_sum = g.tag_sum();
    let mut components = Vec::with_capacity(tag_count(out_arity));
    for r in 1..=tag_count(out_arity) {
        let comp = if out_arity == 1 {
            // m = n = 1: plain composition of linear maps
            endo_compose(&f.component(1), &g.component(1), 1)
        } else if r <= i - 1 {
            endo_compose(&f.component(r), &g_sum, i)
        } else if r <= i + n - 1 {
            endo_compose(&f.component(i), &g.component(r - i + 1), i)
        } else if r <= m + n - 1 {
            endo_compose(&f.component(r - n + 1), &g_sum, i)
        } else {
            // r = m + n
            endo_compose(&f.component(i), &g.component(n + 1), i)
                .add(&endo_compose(&f.component(m + 1), &g_sum, i))
        };
        components.push(comp);
    }
    TaggedCochain::from_components(f.dim, out_arity, components)
}

/// An NS-algebra: three bilinear operations whose tag-wise bundle is a
/// multiplication in the tagged operad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSAlgebra {
    pub dim: usize,
    pub prec: MultiLin,
    pub succ: MultiLin,
    pub vee: MultiLin,
}

impl NSAlgebra {
    pub fn new(dim: usize, prec: MultiLin, succ: MultiLin, vee: MultiLin) -> Result<Self> {
        for (t, name) in [(&prec, "prec"), (&succ, "succ"), (&vee, "vee")] {
            if t.shape_in() != [dim, dim] || t.dim_out() != dim {
                return Err(Error::ShapeMismatch(format!("{name} must be bilinear on A")));
            }
        }
        Ok(NSAlgebra {
            dim,
            prec,
            succ,
            vee,
        })
    }

    pub fn zero(dim: usize) -> Self {
        NSAlgebra {
            dim,
            prec: MultiLin::zero(vec![dim, dim], dim),
            succ: MultiLin::zero(vec![dim, dim], dim),
            vee: MultiLin::zero(vec![dim, dim], dim),
        }
    }

    /// The total product a * b = a < b + a > b + a v b.
    pub fn star(&self) -> MultiLin {
        self.prec.add(&self.succ).add(&self.vee)
    }

    pub fn star_algebra(&self) -> Algebra {
        Algebra {
            dim: self.dim,
            mul: self.star(),
        }
    }
}

/// Check the four NS-algebra axioms on all basis triples.
pub fn check_ns(ns: &NSAlgebra) -> CheckReport {
    let d = ns.dim;
    let star = ns.star();
    let mut report = CheckReport::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                // (a < b) < c - a < (b * c)
                let r1 = sub_vec(
                    &ns.prec.apply_basis_with_vec(&[k], 0, ns.prec.at(&[i, j])),
                    &ns.prec.apply_basis_with_vec(&[i], 1, star.at(&[j, k])),
                );
                if !is_zero_vec(&r1) {
                    report.push("ns-1", &[i, j, k], &r1);
                }
                // (a > b) < c - a > (b < c)
                let r2 = sub_vec(
                    &ns.prec.apply_basis_with_vec(&[k], 0, ns.succ.at(&[i, j])),
                    &ns.succ.apply_basis_with_vec(&[i], 1, ns.prec.at(&[j, k])),
                );
                if !is_zero_vec(&r2) {
                    report.push("ns-2", &[i, j, k], &r2);
                }
                // (a * b) > c - a > (b > c)
                let r3 = sub_vec(
                    &ns.succ.apply_basis_with_vec(&[k], 0, star.at(&[i, j])),
                    &ns.succ.apply_basis_with_vec(&[i], 1, ns.succ.at(&[j, k])),
                );
                if !is_zero_vec(&r3) {
                    report.push("ns-3", &[i, j, k], &r3);
                }
                // (a v b) < c + (a * b) v c - a > (b v c) - a v (b * c)
                let mut r4 = ns.prec.apply_basis_with_vec(&[k], 0, ns.vee.at(&[i, j]));
                add_assign(
                    &mut r4,
                    &ns.vee.apply_basis_with_vec(&[k], 0, star.at(&[i, j])),
                    &sign(0),
                );
                add_assign(
                    &mut r4,
                    &ns.succ.apply_basis_with_vec(&[i], 1, ns.vee.at(&[j, k])),
                    &sign(1),
                );
                add_assign(
                    &mut r4,
                    &ns.vee.apply_basis_with_vec(&[i], 1, star.at(&[j, k])),
                    &sign(1),
                );
                if !is_zero_vec(&r4) {
                    report.push("ns-4", &[i, j, k], &r4);
                }
            }
        }
    }
    report
}

/// Bundle (prec, succ, vee) as the arity-2 tagged element pi.
pub fn ns_to_multiplication(ns: &NSAlgebra) -> TaggedCochain {
    TaggedCochain {
        dim: ns.dim,
        arity: 2,
        components: vec![ns.prec.clone(), ns.succ.clone(), ns.vee.clone()],
    }
}

pub fn multiplication_to_ns(pi: &TaggedCochain) -> Result<NSAlgebra> {
    if pi.arity != 2 {
        return Err(Error::ShapeMismatch("a multiplication has arity 2".into()));
    }
    NSAlgebra::new(pi.dim, pi.component(1), pi.component(2), pi.component(3))
}

/// The multiplication residual pi o_1 pi - pi o_2 pi; tag [r] of the result
/// is exactly the defect of NS-axiom r.
pub fn multiplication_residual(pi: &TaggedCochain) -> Result<TaggedCochain> {
    let left = partial_compose(pi, pi, 1)?;
    let right = partial_compose(pi, pi, 2)?;
    Ok(left.sub(&right))
}

pub fn is_multiplication(pi: &TaggedCochain) -> Result<bool> {
    Ok(multiplication_residual(pi)?.is_zero())
}

/// The differential induced by a multiplication pi.
pub fn delta_pi(pi: &TaggedCochain, f: &TaggedCochain) -> Result<TaggedCochain> {
    if !is_multiplication(pi)? {
        return Err(Error::NotAMultiplication);
    }
    delta_pi_unchecked(pi, f)
}

pub(crate) fn delta_pi_unchecked(pi: &TaggedCochain, f: &TaggedCochain) -> Result<TaggedCochain> {
    let n = f.arity as i64;
    let mut out = TaggedCochain::zero(f.dim, f.arity + 1);
    for i in 1..=2usize {
        let term = partial_compose(pi, f, i)?;
        out = out.add(&term.scale(&sign((i as i64 - 1) * (n - 1))));
    }
    // minus sign of the second group folded into the exponent
    for i in 1..=f.arity {
        let term = partial_compose(f, pi, i)?;
        out = out.add(&term.scale(&sign(n + i as i64 - 1)));
    }
    Ok(out.scale(&sign(n - 1)))
}

/// Matrix of delta_pi from arity-n to arity-(n+1) tagged cochains in the
/// flattened coordinates.
pub fn delta_pi_matrix(pi: &TaggedCochain, n: usize) -> Result<Matrix> {
    let d = pi.dim;
    let comp = d.pow(n as u32) * d;
    let cols = tag_count(n) * comp;
    let rows = tag_count(n + 1) * d.pow(n as u32 + 1) * d;
    let mut out = Matrix::zero(rows, cols);
    for c in 0..cols {
        let mut flat = vec![qlinalg::q_zero(); cols];
        flat[c] = qlinalg::q_one();
        let f = TaggedCochain::from_flat(d, n, &flat);
        let img = delta_pi_unchecked(pi, &f)?;
        for (r, v) in img.flatten().iter().enumerate() {
            if !num::Zero::is_zero(v) {
                out.set(r, c, v.clone());
            }
        }
    }
    Ok(out)
}

/// Dimensions of the NS-cohomology groups for arities 1..=n_max.
pub fn ns_cohomology_dims(ns: &NSAlgebra, n_max: usize) -> Result<Vec<usize>> {
    let pi = ns_to_multiplication(ns);
    if !is_multiplication(&pi)? {
        return Err(Error::NotAMultiplication);
    }
    let mut dims = Vec::with_capacity(n_max);
    let mut prev: Option<Matrix> = None;
    for n in 1..=n_max {
        let d_n = delta_pi_matrix(&pi, n)?;
        let cocycles = qlinalg::nullspace(&d_n);
        let coboundaries = match &prev {
            None => qlinalg::Subspace::zero(cocycles.ambient_dim),
            Some(m) => qlinalg::column_space(m),
        };
        dims.push(qlinalg::quotient_dim(&cocycles, &coboundaries)?);
        prev = Some(d_n);
    }
    Ok(dims)
}

/// The component-sum morphism to the endomorphism operad.
pub fn theta(f: &TaggedCochain) -> MultiLin {
    f.tag_sum()
}

/// Dendriform suboperad membership: last tag component zero (arity 1 always).
pub fn is_dendriform_element(f: &TaggedCochain) -> bool {
    f.arity == 1 || f.components[f.arity].is_zero()
}

/// The NS-algebra on M induced by a twisted Rota-Baxter operator:
/// u < v = u.T(v), u > v = T(u).v, u v v = H(Tu, Tv).
pub fn trb_to_ns(ctx: &TRBContext) -> NSAlgebra {
    let dm = ctx.dim_m();
    let m = &ctx.bimodule;
    let mut prec = MultiLin::zero(vec![dm, dm], dm);
    let mut succ = MultiLin::zero(vec![dm, dm], dm);
    let mut vee = MultiLin::zero(vec![dm, dm], dm);
    for p in 0..dm {
        for q in 0..dm {
            prec.add_at(&[p, q], &m.right.apply_basis_with_vec(&[p], 1, ctx.t_of_basis(q)));
            succ.add_at(&[p, q], &m.left.apply_basis_with_vec(&[q], 0, ctx.t_of_basis(p)));
            vee.add_at(&[p, q], &ctx.cocycle.apply(&[ctx.t_of_basis(p), ctx.t_of_basis(q)]));
        }
    }
    NSAlgebra {
        dim: dm,
        prec,
        succ,
        vee,
    }
}

/// The four NS-axiom defects evaluated directly on a basis triple; used to
/// cross-check the tag-wise residual identification.
pub fn ns_defects(ns: &NSAlgebra, i: usize, j: usize, k: usize) -> [Vec<Q>; 4] {
    let star = ns.star();
    let d1 = sub_vec(
        &ns.prec.apply_basis_with_vec(&[k], 0, ns.prec.at(&[i, j])),
        &ns.prec.apply_basis_with_vec(&[i], 1, star.at(&[j, k])),
    );
    let d2 = sub_vec(
        &ns.prec.apply_basis_with_vec(&[k], 0, ns.succ.at(&[i, j])),
        &ns.succ.apply_basis_with_vec(&[i], 1, ns.prec.at(&[j, k])),
    );
    let d3 = sub_vec(
        &ns.succ.apply_basis_with_vec(&[k], 0, star.at(&[i, j])),
        &ns.succ.apply_basis_with_vec(&[i], 1, ns.succ.at(&[j, k])),
    );
    let d4 = sub_vec(
        &add_vec(
            &ns.prec.apply_basis_with_vec(&[k], 0, ns.vee.at(&[i, j])),
            &ns.vee.apply_basis_with_vec(&[k], 0, star.at(&[i, j])),
        ),
        &add_vec(
            &ns.succ.apply_basis_with_vec(&[i], 1, ns.vee.at(&[j, k])),
            &ns.vee.apply_basis_with_vec(&[i], 1, star.at(&[j, k])),
        ),
    );
    [d1, d2, d3, d4]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q_int, q_one};
    use crate::sampling;

    fn random_tagged(rng: &mut rand_chacha::ChaCha8Rng, dim: usize, arity: usize, bound: i64) -> TaggedCochain {
        let components = (0..tag_count(arity))
            .map(|_| sampling::random_multilin(rng, vec![dim; arity], dim, bound))
            .collect();
        TaggedCochain::from_components(dim, arity, components).unwrap()
    }

    /// NS structure from the Nijenhuis operator N(x) = x e on K[e]/(e^2).
    fn nijenhuis_ns() -> NSAlgebra {
        let mut prec = MultiLin::zero(vec![2, 2], 2);
        prec.set(&[0, 0], 1, q_one()); // 1 N(1) = e
        let mut succ = MultiLin::zero(vec![2, 2], 2);
        succ.set(&[0, 0], 1, q_one()); // N(1) 1 = e
        let mut vee = MultiLin::zero(vec![2, 2], 2);
        vee.set(&[0, 0], 1, q_int(-1)); // -N(1*1) = -e
        NSAlgebra::new(2, prec, succ, vee).unwrap()
    }

    /// Dendriform structure on K: a < b = ab, > = v = 0.
    fn dendriform_line() -> NSAlgebra {
        let mut prec = MultiLin::zero(vec![1, 1], 1);
        prec.set(&[0, 0], 0, q_one());
        NSAlgebra::new(1, prec, MultiLin::zero(vec![1, 1], 1), MultiLin::zero(vec![1, 1], 1))
            .unwrap()
    }

    #[test]
    fn unit_laws() {
        let mut rng = sampling::rng(71);
        for arity in 1..=3usize {
            let d = 2;
            let f = random_tagged(&mut rng, d, arity, 2);
            let id = TaggedCochain::identity(d);
            for i in 1..=arity {
                assert_eq!(partial_compose(&f, &id, i).unwrap(), f, "f o_{i} id");
            }
            assert_eq!(partial_compose(&id, &f, 1).unwrap(), f, "id o_1 f");
        }
    }

    #[test]
    fn zero_composition() {
        let mut rng = sampling::rng(73);
        let f = random_tagged(&mut rng, 2, 2, 2);
        let z = TaggedCochain::zero(2, 2);
        assert!(partial_compose(&f, &z, 1).unwrap().is_zero());
        assert!(partial_compose(&z, &f, 2).unwrap().is_zero());
    }

    #[test]
    fn out_of_range_slot() {
        let f = TaggedCochain::zero(2, 2);
        assert!(matches!(
            partial_compose(&f, &f, 3),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn sequential_and_parallel_axioms_sampled() {
        let mut rng = sampling::rng(79);
        let d = 2;
        for _ in 0..4 {
            let f = random_tagged(&mut rng, d, 2, 2);
            let g = random_tagged(&mut rng, d, 2, 2);
            let h = random_tagged(&mut rng, d, 2, 2);
            // sequential: (f o_i g) o_{i+j-1} h = f o_i (g o_j h)
            for i in 1..=2usize {
                for j in 1..=2usize {
                    let lhs = partial_compose(&partial_compose(&f, &g, i).unwrap(), &h, i + j - 1)
                        .unwrap();
                    let rhs =
                        partial_compose(&f, &partial_compose(&g, &h, j).unwrap(), i).unwrap();
                    assert_eq!(lhs, rhs, "sequential i={i} j={j}");
                }
            }
            // parallel: (f o_i g) o_{j+n-1} h = (f o_j h) o_i g for i < j
            let (i, j, n) = (1usize, 2usize, 2usize);
            let lhs = partial_compose(&partial_compose(&f, &g, i).unwrap(), &h, j + n - 1).unwrap();
            let rhs = partial_compose(&partial_compose(&f, &h, j).unwrap(), &g, i).unwrap();
            assert_eq!(lhs, rhs, "parallel");
        }
    }

    #[test]
    fn ns_examples_pass_axioms() {
        assert!(check_ns(&NSAlgebra::zero(2)).passed());
        assert!(check_ns(&dendriform_line()).passed());
        assert!(check_ns(&nijenhuis_ns()).passed());
        // the sum product of the Nijenhuis NS structure is the deformed
        // product 1 *_N 1 = e
        let star = nijenhuis_ns().star();
        assert_eq!(star.at(&[0, 0]), &[qlinalg::q_zero(), q_one()][..]);
    }

    #[test]
    fn multiplication_iff_ns() {
        let ns = nijenhuis_ns();
        let pi = ns_to_multiplication(&ns);
        assert!(is_multiplication(&pi).unwrap());
        let back = multiplication_to_ns(&pi).unwrap();
        assert_eq!(back, ns);

        // a random pi is (generically) not a multiplication, and its residual
        // tags match the four NS defects
        let mut rng = sampling::rng(83);
        let bad = random_tagged(&mut rng, 2, 2, 2);
        let res = multiplication_residual(&bad).unwrap();
        let bad_ns = multiplication_to_ns(&bad).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let defects = ns_defects(&bad_ns, i, j, k);
                    for (t, defect) in defects.iter().enumerate() {
                        assert_eq!(
                            res.components[t].at(&[i, j, k]),
                            &defect[..],
                            "tag {} at ({i},{j},{k})",
                            t + 1
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn delta_pi_basics() {
        let ns = nijenhuis_ns();
        let pi = ns_to_multiplication(&ns);
        let zero = TaggedCochain::zero(2, 1);
        assert!(delta_pi(&pi, &zero).unwrap().is_zero());
        // delta_pi(pi) = 0 because pi o_1 pi = pi o_2 pi
        assert!(delta_pi(&pi, &pi).unwrap().is_zero());
    }

    #[test]
    fn delta_pi_squares_to_zero() {
        let ns = nijenhuis_ns();
        let pi = ns_to_multiplication(&ns);
        let mut rng = sampling::rng(89);
        for arity in 1..=2usize {
            for _ in 0..3 {
                let f = random_tagged(&mut rng, 2, arity, 2);
                let once = delta_pi(&pi, &f).unwrap();
                let twice = delta_pi(&pi, &once).unwrap();
                assert!(twice.is_zero(), "delta^2 != 0 at arity {arity}");
            }
        }
    }

    #[test]
    fn delta_pi_rejects_non_multiplication() {
        let mut rng = sampling::rng(97);
        let bad = random_tagged(&mut rng, 2, 2, 2);
        let f = TaggedCochain::zero(2, 1);
        assert!(matches!(delta_pi(&bad, &f), Err(Error::NotAMultiplication)));
    }

    #[test]
    fn cohomology_dims_zero_structure_line() {
        let ns = NSAlgebra::zero(1);
        assert_eq!(ns_cohomology_dims(&ns, 3).unwrap(), vec![1, 3, 4]);
    }

    #[test]
    fn cohomology_dims_zero_structure_plane() {
        // all differentials vanish: full cochain space dims d^2, 3 d^3
        let ns = NSAlgebra::zero(2);
        assert_eq!(ns_cohomology_dims(&ns, 2).unwrap(), vec![4, 24]);
    }

    #[test]
    fn theta_is_operad_morphism() {
        let mut rng = sampling::rng(101);
        let d = 2;
        assert_eq!(
            theta(&TaggedCochain::identity(d)),
            MultiLin::from_matrix(&Matrix::identity(d))
        );
        for _ in 0..4 {
            let f = random_tagged(&mut rng, d, 2, 2);
            let g = random_tagged(&mut rng, d, 2, 2);
            for i in 1..=2usize {
                let lhs = theta(&partial_compose(&f, &g, i).unwrap());
                let rhs = endo_compose(&theta(&f), &theta(&g), i);
                assert_eq!(lhs, rhs, "slot {i}");
            }
        }
        // Theta_2(pi) = *
        let ns = nijenhuis_ns();
        assert_eq!(theta(&ns_to_multiplication(&ns)), ns.star());
    }

    #[test]
    fn dendriform_closure() {
        let mut rng = sampling::rng(103);
        let d = 2;
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            let mut f = random_tagged(&mut rng, d, m, 2);
            let mut g = random_tagged(&mut rng, d, n, 2);
            let last_f = f.components.len() - 1;
            f.components[last_f] = MultiLin::zero(vec![d; m], d);
            let last_g = g.components.len() - 1;
            g.components[last_g] = MultiLin::zero(vec![d; n], d);
            assert!(is_dendriform_element(&f));
            for i in 1..=m {
                let comp = partial_compose(&f, &g, i).unwrap();
                assert!(is_dendriform_element(&comp), "arity ({m},{n}) slot {i}");
            }
        }
    }

    #[test]
    fn trb_to_ns_matches_star_product() {
        // the Nijenhuis twisted Rota-Baxter context induces the Nijenhuis NS
        // structure on M
        let mut mul = MultiLin::zero(vec![2, 2], 2);
        mul.set(&[0, 0], 1, q_one());
        let a_n = Algebra { dim: 2, mul };
        let mut left = MultiLin::zero(vec![2, 2], 2);
        left.set(&[0, 0], 1, q_one());
        let mut right = MultiLin::zero(vec![2, 2], 2);
        right.set(&[0, 0], 1, q_one());
        let m = crate::algebra::Bimodule::new(2, 2, left, right).unwrap();
        let mut h = MultiLin::zero(vec![2, 2], 2);
        h.set(&[0, 0], 1, q_int(-1));
        let ctx = TRBContext::new(a_n, m, h, Matrix::identity(2)).unwrap();
        let ns = trb_to_ns(&ctx);
        assert!(check_ns(&ns).passed());
        assert_eq!(ns.star(), crate::trb::star_product(&ctx).mul);
        assert_eq!(ns, nijenhuis_ns());
    }
}
