//! The bundled instance corpus: small worked examples used by the test suite
//! and shipped as JSON files under `corpus/`. Every entry is constructed
//! programmatically here; the files on disk are the canonical serializations
//! (see `examples/gen_corpus.rs` to regenerate them).

use crate::algebra::{dual_numbers, ground_field, Algebra, Bimodule};
use crate::deform::{TruncatedNSDeformation, TruncatedRBDeformation};
use crate::instance::InstanceFile;
use crate::multilin::MultiLin;
use crate::nsop::{delta_pi, ns_to_multiplication, NSAlgebra, TaggedCochain};
use crate::qlinalg::{q_int, q_one, Matrix};
use crate::trb::{self, TRBContext};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub instance: InstanceFile,
}

/// Zero operator on the dual numbers, adjoint bimodule, H = 0.
pub fn zero_operator_ctx() -> TRBContext {
    let a = dual_numbers();
    let m = Bimodule::adjoint(&a);
    let h = MultiLin::zero(vec![2, 2], 2);
    TRBContext::new(a, m, h, Matrix::zero(2, 2)).unwrap()
}

/// The Nijenhuis-operator example: the deformed product on K[e]/(e^2) with
/// N(x) = xe, actions through N, H(a,b) = -N(ab) and T = id.
pub fn nijenhuis_ctx() -> TRBContext {
    let mut mul = MultiLin::zero(vec![2, 2], 2);
    mul.set(&[0, 0], 1, q_one());
    let a_n = Algebra::new(2, mul).unwrap();
    let mut left = MultiLin::zero(vec![2, 2], 2);
    left.set(&[0, 0], 1, q_one());
    let mut right = MultiLin::zero(vec![2, 2], 2);
    right.set(&[0, 0], 1, q_one());
    let m = Bimodule::new(2, 2, left, right).unwrap();
    let mut h = MultiLin::zero(vec![2, 2], 2);
    h.set(&[0, 0], 1, q_int(-1));
    TRBContext::new(a_n, m, h, Matrix::identity(2)).unwrap()
}

/// The multiplication map mu : A (x) A -> A as a twisted Rota-Baxter
/// operator, at dim A = 2 with a noncommutative product. M = A (x) A carries
/// a . (b (x) c) = ab (x) c, (b (x) c) . a = b (x) ca, and H(a,b) = -a (x) b.
pub fn mult_map_ctx() -> TRBContext {
    // e1 e1 = e1, e1 e2 = e2, e2 e1 = 0, e2 e2 = 0
    let mut mul = MultiLin::zero(vec![2, 2], 2);
    mul.set(&[0, 0], 0, q_one());
    mul.set(&[0, 1], 1, q_one());
    let a = Algebra::new(2, mul).unwrap();
    // M basis: e1(x)e1, e1(x)e2, e2(x)e1, e2(x)e2 in row-major order
    let pair = |b: usize, c: usize| 2 * b + c;
    let mut left = MultiLin::zero(vec![2, 4], 4);
    let mut right = MultiLin::zero(vec![4, 2], 4);
    for i in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                // e_i . (e_b (x) e_c) = (e_i e_b) (x) e_c
                let prod = a.prod_basis(i, b);
                for (k, v) in prod.iter().enumerate() {
                    left.set(&[i, pair(b, c)], pair(k, c), v.clone());
                }
                // (e_b (x) e_c) . e_i = e_b (x) (e_c e_i)
                let prod = a.prod_basis(c, i);
                for (k, v) in prod.iter().enumerate() {
                    right.set(&[pair(b, c), i], pair(b, k), v.clone());
                }
            }
        }
    }
    let m = Bimodule::new(2, 4, left, right).unwrap();
    let mut h = MultiLin::zero(vec![2, 2], 4);
    for i in 0..2 {
        for j in 0..2 {
            h.set(&[i, j], pair(i, j), q_int(-1));
        }
    }
    // T(e_b (x) e_c) = e_b e_c
    let mut t = Matrix::zero(2, 4);
    for b in 0..2 {
        for c in 0..2 {
            let prod = a.prod_basis(b, c);
            for (k, v) in prod.iter().enumerate() {
                t.set(k, pair(b, c), v.clone());
            }
        }
    }
    TRBContext::new(a, m, h, t).unwrap()
}

/// Reynolds operator R = lambda on the ground field; valid for lambda in {0,1}.
pub fn reynolds_ctx(lambda: i64) -> TRBContext {
    let a = ground_field();
    let mut r = Matrix::zero(1, 1);
    r.set(0, 0, q_int(lambda));
    trb::reynolds_context(&a, &r).unwrap()
}

/// Weight-zero Rota-Baxter operator on the upper-triangular 2x2 matrices:
/// span {E11, E12, E22}, T(E11) = E12, H = 0, adjoint bimodule. Its element
/// a = E12 satisfies all the Nijenhuis conditions.
pub fn ut2_ctx() -> TRBContext {
    let mut mul = MultiLin::zero(vec![3, 3], 3);
    mul.set(&[0, 0], 0, q_one());
    mul.set(&[0, 1], 1, q_one());
    mul.set(&[1, 2], 1, q_one());
    mul.set(&[2, 2], 2, q_one());
    let a = Algebra::new(3, mul).unwrap();
    let m = Bimodule::adjoint(&a);
    let h = MultiLin::zero(vec![3, 3], 3);
    let mut t = Matrix::zero(3, 3);
    t.set(1, 0, q_one());
    TRBContext::new(a, m, h, t).unwrap()
}

/// Dendriform (vee = 0) NS-algebra on a line: a < b = ab, the rest zero.
pub fn dendriform_line_ns() -> NSAlgebra {
    let mut prec = MultiLin::zero(vec![1, 1], 1);
    prec.set(&[0, 0], 0, q_one());
    NSAlgebra::new(
        1,
        prec,
        MultiLin::zero(vec![1, 1], 1),
        MultiLin::zero(vec![1, 1], 1),
    )
    .unwrap()
}

/// The zero NS structure on a line; its cohomology dims count the tags.
pub fn zero_ns_dim1() -> NSAlgebra {
    NSAlgebra::zero(1)
}

/// Order-1 deformation of the ut2 operator along the 1-cocycle
/// T_1(E22) = E12 (a nonzero element of Z^1).
pub fn rb_deformation_order1() -> TruncatedRBDeformation {
    let ctx = ut2_ctx();
    let mut t1 = Matrix::zero(3, 3);
    t1.set(1, 2, q_one());
    TruncatedRBDeformation::new(ctx, vec![t1]).unwrap()
}

/// Order-1 deformation of the dendriform line along a coboundary cocycle.
pub fn ns_deformation_order1() -> TruncatedNSDeformation {
    let base = dendriform_line_ns();
    let pi = ns_to_multiplication(&base);
    let mut phi1 = TaggedCochain::zero(1, 1);
    phi1.components[0] = MultiLin::from_matrix(&Matrix::from_fn(1, 1, |_, _| q_int(2)));
    let pi1 = delta_pi(&pi, &phi1).unwrap();
    TruncatedNSDeformation::new(base, vec![pi1]).unwrap()
}

/// Every bundled instance, in a stable order.
pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "zero_operator",
            description: "zero operator on the dual numbers, adjoint bimodule, H = 0",
            instance: InstanceFile::from_trb_context(&zero_operator_ctx()),
        },
        CorpusEntry {
            name: "nijenhuis",
            description: "Nijenhuis operator N(x) = xe on K[e]/(e^2), T = id, H(a,b) = -N(ab)",
            instance: InstanceFile::from_trb_context(&nijenhuis_ctx()),
        },
        CorpusEntry {
            name: "mult_map",
            description: "multiplication map on M = A (x) A at dim A = 2, H(a,b) = -a (x) b",
            instance: InstanceFile::from_trb_context(&mult_map_ctx()),
        },
        CorpusEntry {
            name: "reynolds_l0",
            description: "Reynolds operator lambda = 0 on the ground field",
            instance: InstanceFile::from_trb_context(&reynolds_ctx(0)),
        },
        CorpusEntry {
            name: "reynolds_l1",
            description: "Reynolds operator lambda = 1 on the ground field",
            instance: InstanceFile::from_trb_context(&reynolds_ctx(1)),
        },
        CorpusEntry {
            name: "ut2",
            description: "weight-zero Rota-Baxter operator on upper-triangular 2x2 matrices",
            instance: InstanceFile::from_trb_context(&ut2_ctx()),
        },
        CorpusEntry {
            name: "dendriform_line",
            description: "dendriform (vee = 0) NS-algebra on a line",
            instance: InstanceFile::empty().with_ns(&dendriform_line_ns()),
        },
        CorpusEntry {
            name: "zero_ns_dim1",
            description: "zero NS structure on a line",
            instance: InstanceFile::empty().with_ns(&zero_ns_dim1()),
        },
        CorpusEntry {
            name: "deform_rb_order1",
            description: "order-1 deformation of the ut2 operator along a coboundary",
            instance: InstanceFile::empty().with_rb_deformation(&rb_deformation_order1()),
        },
        CorpusEntry {
            name: "deform_ns_order1",
            description: "order-1 deformation of the dendriform line along a coboundary",
            instance: InstanceFile::empty().with_ns_deformation(&ns_deformation_order1()),
        },
    ]
}

/// The twisted Rota-Baxter contexts of the corpus, for randomized audits.
pub fn trb_corpus() -> Vec<(&'static str, TRBContext)> {
    vec![
        ("zero_operator", zero_operator_ctx()),
        ("nijenhuis", nijenhuis_ctx()),
        ("mult_map", mult_map_ctx()),
        ("reynolds_l0", reynolds_ctx(0)),
        ("reynolds_l1", reynolds_ctx(1)),
        ("ut2", ut2_ctx()),
    ]
}

/// The NS-algebras of the corpus (including those induced from operators).
pub fn ns_corpus() -> Vec<(&'static str, NSAlgebra)> {
    let mut out = vec![
        ("dendriform_line", dendriform_line_ns()),
        ("zero_ns_dim1", zero_ns_dim1()),
    ];
    for (name, ctx) in trb_corpus() {
        out.push((name, crate::nsop::trb_to_ns(&ctx)));
    }
    out
}

/// Directory holding the serialized corpus files.
pub fn corpus_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform;
    use crate::nsop::check_ns;

    #[test]
    fn all_trb_instances_are_valid() {
        for (name, ctx) in trb_corpus() {
            assert!(ctx.validate().unwrap().passed(), "{name} fails validation");
        }
    }

    #[test]
    fn all_ns_instances_are_valid() {
        for (name, ns) in ns_corpus() {
            assert!(check_ns(&ns).passed(), "{name} fails NS axioms");
        }
    }

    #[test]
    fn deformations_are_valid() {
        assert!(deform::rb_is_valid(&rb_deformation_order1()));
        assert!(deform::ns_is_valid(&ns_deformation_order1()).unwrap());
    }

    #[test]
    fn instances_round_trip_through_json() {
        for entry in corpus() {
            let text = entry.instance.to_canonical_string().unwrap();
            let parsed = InstanceFile::parse(&text).unwrap();
            assert_eq!(
                parsed.to_canonical_string().unwrap(),
                text,
                "{} round trip",
                entry.name
            );
        }
    }

    #[test]
    fn files_on_disk_match_constructors() {
        for entry in corpus() {
            let path = corpus_dir().join(format!("{}.json", entry.name));
            let on_disk = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("missing corpus file {}: {e}", path.display()));
            assert_eq!(
                on_disk,
                entry.instance.to_canonical_string().unwrap(),
                "{} differs from its constructor; regenerate with the gen_corpus example",
                entry.name
            );
        }
    }
}
