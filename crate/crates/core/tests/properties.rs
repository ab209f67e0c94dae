//! Structural property tests across the corpus: graph characterization,
//! gauge orbits, dendriform closure, and linear-algebra invariants.

mod common;

use proptest::prelude::*;
use trb_core::algebra::{is_subalgebra, twisted_semidirect};
use trb_core::corpus;
use trb_core::multilin::basis_vec;
use trb_core::nsop::{
    self, delta_pi, is_dendriform_element, partial_compose, TaggedCochain,
};
use trb_core::qlinalg::{self, q_int, q_ratio, Matrix, Q};
use trb_core::sampling;
use trb_core::trb::{self, TRBContext};

/// The graph {(Tu, u)} is a subalgebra of the twisted semidirect product
/// exactly when T is a twisted Rota-Baxter operator.
fn graph_is_subalgebra(ctx: &TRBContext) -> bool {
    let total = twisted_semidirect(&ctx.algebra, &ctx.bimodule, &ctx.cocycle).unwrap();
    let (da, dm) = (ctx.dim_a(), ctx.dim_m());
    let vectors: Vec<Vec<Q>> = (0..dm)
        .map(|p| {
            let mut v = ctx.t_of_basis(p).to_vec();
            v.extend(basis_vec(dm, p));
            let _ = da;
            v
        })
        .collect();
    is_subalgebra(&total, &vectors)
}

#[test]
fn graph_characterization() {
    let mut rng = sampling::rng(31);
    for (name, ctx) in corpus::trb_corpus() {
        assert!(graph_is_subalgebra(&ctx), "{name} graph");
        assert!(ctx.is_twisted_rb(), "{name} operator");
        // perturbed operators must fail both sides together
        for _ in 0..10 {
            let delta = sampling::random_matrix(&mut rng, ctx.dim_a(), ctx.dim_m(), 2);
            let cand = TRBContext::new(
                ctx.algebra.clone(),
                ctx.bimodule.clone(),
                ctx.cocycle.clone(),
                ctx.operator.add(&delta),
            )
            .unwrap();
            assert_eq!(
                graph_is_subalgebra(&cand),
                cand.is_twisted_rb(),
                "{name} graph criterion under perturbation"
            );
        }
    }
}

#[test]
fn gauge_orbit_stays_twisted_rb() {
    for (name, ctx) in corpus::trb_corpus() {
        for b in common::hochschild_one_cocycles(&ctx) {
            match trb::gauge_transform(&ctx, &b).unwrap() {
                Some(ctx2) => {
                    assert!(
                        ctx2.validate().unwrap().passed(),
                        "{name} gauge by a 1-cocycle must stay twisted Rota-Baxter"
                    );
                }
                None => {} // id + BT singular: transform undefined, fine
            }
        }
        // non-cocycles are rejected up front
        let mut bad = Matrix::zero(ctx.dim_m(), ctx.dim_a());
        bad.set(0, 0, q_int(1));
        let delta = trb_core::algebra::hochschild_delta(
            &ctx.algebra,
            &ctx.bimodule,
            &trb_core::multilin::MultiLin::from_matrix(&bad),
        )
        .unwrap();
        if !delta.is_zero() {
            assert!(trb::gauge_transform(&ctx, &bad).is_err(), "{name} rejects non-cocycle");
        }
    }
}

#[test]
fn cocycle_shift_preserves_twisted_rb() {
    let mut rng = sampling::rng(37);
    for (name, ctx) in corpus::trb_corpus() {
        for _ in 0..10 {
            let h = sampling::random_matrix(&mut rng, ctx.dim_m(), ctx.dim_a(), 1);
            if let Some(ctx2) = trb::cocycle_shift(&ctx, &h).unwrap() {
                assert!(
                    ctx2.validate().unwrap().passed(),
                    "{name} shifted context must stay twisted Rota-Baxter"
                );
            }
        }
    }
}

#[test]
fn dendriform_elements_close_under_composition() {
    let mut rng = sampling::rng(41);
    for round in 0..30 {
        let d = 2;
        let m = 2 + round % 2; // alternate arity 2 and 3
        let n = 2;
        let mk = |arity: usize, rng: &mut _| {
            let mut components: Vec<_> = (0..nsop::tag_count(arity))
                .map(|_| sampling::random_multilin(rng, vec![d; arity], d, 2))
                .collect();
            // force the last tag to zero: dendriform condition
            let last = components.len() - 1;
            if arity != 1 {
                components[last] = trb_core::multilin::MultiLin::zero(vec![d; arity], d);
            }
            TaggedCochain::from_components(d, arity, components).unwrap()
        };
        let f = mk(m, &mut rng);
        let g = mk(n, &mut rng);
        assert!(is_dendriform_element(&f) && is_dendriform_element(&g));
        for i in 1..=m {
            let comp = partial_compose(&f, &g, i).unwrap();
            assert!(is_dendriform_element(&comp), "composite stays dendriform");
        }
    }
}

#[test]
fn delta_pi_squares_to_zero_on_corpus() {
    let mut rng = sampling::rng(43);
    for (name, ns) in corpus::ns_corpus() {
        let pi = common::multiplication_of(&ns);
        for arity in 1..=2 {
            for _ in 0..10 {
                let components = (0..nsop::tag_count(arity))
                    .map(|_| sampling::random_multilin(&mut rng, vec![ns.dim; arity], ns.dim, 3))
                    .collect();
                let f = TaggedCochain::from_components(ns.dim, arity, components).unwrap();
                let dd = delta_pi(&pi, &delta_pi(&pi, &f).unwrap()).unwrap();
                assert!(dd.is_zero(), "{name} delta^2 at arity {arity}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(entries in proptest::collection::vec(-5i64..=5, 12)) {
        let m = Matrix::from_fn(3, 4, |i, j| q_int(entries[4 * i + j]));
        let rank = qlinalg::rank(&m);
        let null = qlinalg::nullspace(&m).dim();
        prop_assert_eq!(rank + null, 4);
        prop_assert_eq!(qlinalg::column_space(&m).dim(), rank);
    }

    #[test]
    fn solve_agrees_with_column_space(
        entries in proptest::collection::vec(-4i64..=4, 9),
        rhs in proptest::collection::vec(-4i64..=4, 3),
    ) {
        let m = Matrix::from_fn(3, 3, |i, j| q_int(entries[3 * i + j]));
        let b: Vec<Q> = rhs.iter().map(|&x| q_int(x)).collect();
        let solvable = qlinalg::column_space(&m).contains(&b);
        match qlinalg::solve(&m, &b) {
            Some(x) => {
                prop_assert!(solvable);
                prop_assert_eq!(m.mul_vec(&x), b);
            }
            None => prop_assert!(!solvable),
        }
    }

    #[test]
    fn inverse_round_trip(entries in proptest::collection::vec(-3i64..=3, 9)) {
        let m = Matrix::from_fn(3, 3, |i, j| q_ratio(entries[3 * i + j], 2));
        match qlinalg::inverse(&m) {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(3));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(3));
            }
            None => prop_assert!(qlinalg::rank(&m) < 3),
        }
    }

    #[test]
    fn span_is_idempotent(entries in proptest::collection::vec(-3i64..=3, 8)) {
        let vectors: Vec<Vec<Q>> = entries.chunks(4).map(|c| c.iter().map(|&x| q_int(x)).collect()).collect();
        let s = qlinalg::Subspace::span(4, vectors.clone());
        for v in &vectors {
            prop_assert!(s.contains(v));
        }
        let again = qlinalg::Subspace::span(4, s.basis.clone());
        prop_assert_eq!(again.dim(), s.dim());
    }
}
