mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toricdef_core::deformation::{build_ambient, build_deformation, kodaira_spencer_check, verify_fiber};
use toricdef_core::linalg::{dot, IntVector};
use toricdef_core::minkowski::{
    divisor_from_summand, kodaira_spencer_span, lattice_decompositions, summand_cone, tilde_t1,
};
use toricdef_core::polyhedral::{normal_form, unimodular_equivalent, LatticePolytope};
use toricdef_core::t1::{SampleOptions, T1Context};

use common::*;

fn polygon(seed: u64, n: usize) -> LatticePolytope {
    random_primitive_polygon(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn n_minus_three_law(seed in any::<u64>(), n in 3usize..=8) {
        let q = polygon(seed, n);
        let c = cone(&q);
        let ctx = T1Context::new(&c);
        let gd = ctx.gorenstein().cloned().unwrap();
        prop_assert_eq!(gd.g, 1);
        prop_assert_eq!(ctx.general(&gd.r_star).unwrap().dim, n - 3);
        prop_assert_eq!(tilde_t1(&q).dim, n - 3);
        let report = ctx.rigidity_report(&SampleOptions::default()).unwrap();
        prop_assert!(report.consistent);
    }

    #[test]
    fn formulas_agree_on_random_degrees(seed in any::<u64>(), n in 3usize..=7) {
        let q = polygon(seed, n);
        let c = cone(&q);
        let ctx = T1Context::new(&c);
        let gd = ctx.gorenstein().cloned().unwrap();
        for r in sample_degrees(&c, &gd.r_star, 12, seed) {
            let a = ctx.general(&r).unwrap().dim;
            prop_assert_eq!(a, ctx.codim2(&r).unwrap().dim, "R = {:?}", r);
            prop_assert_eq!(a, ctx.via_face_polytope(&gd, &r).unwrap(), "R = {:?}", r);
            if c.rays().iter().any(|x| dot(x, &r) >= 2) {
                prop_assert_eq!(a, 0);
            }
        }
    }

    #[test]
    fn summand_cone_matches_tilde_t1(seed in any::<u64>(), n in 3usize..=8) {
        let q = polygon(seed, n);
        prop_assert_eq!(summand_cone(&q).dim(), tilde_t1(&q).dim + 1);
    }

    #[test]
    fn decompositions_sum_back(seed in any::<u64>(), n in 3usize..=8) {
        let q = polygon(seed, n);
        for d in lattice_decompositions(&q).unwrap() {
            let sum = d.summands.iter().skip(1).fold(d.summands[0].clone(), |acc, s| acc.minkowski_sum(s).unwrap());
            prop_assert!(unimodular_equivalent(&sum, &q).unwrap().is_some());
            prop_assert_eq!(normal_form(&sum).unwrap(), normal_form(&q).unwrap());
            let ks = kodaira_spencer_span(&q, &d).unwrap();
            prop_assert!(ks.dim < d.blocks.len());
            if d.extremal {
                prop_assert_eq!(ks.dim, d.blocks.len() - 1);
            }
            for s in &d.summands {
                let h = divisor_from_summand(&q, s).unwrap();
                prop_assert!(h.is_cartier() && h.is_nef());
            }
        }
    }

    #[test]
    fn total_spaces_restrict_to_the_cone(seed in any::<u64>(), n in 4usize..=7) {
        let q = polygon(seed, n);
        let c = cone(&q);
        let slice = build_ambient(&c, &[0, 0, 1]).unwrap();
        for d in lattice_decompositions(&q).unwrap() {
            let dd = build_deformation(&slice, &d.summands).unwrap();
            prop_assert!(verify_fiber(&dd).holds());
            let vertices: usize = dd.summands.iter().map(|s| s.vertices().len()).sum();
            prop_assert_eq!(dd.total_cone.rays().len(), vertices);
            for r in &dd.functionals {
                prop_assert!(dd.total_cone.rays().iter().all(|a| dot(a, r) >= 0));
            }
            let m = dd.parameters();
            prop_assert_eq!(kodaira_spencer_check(&dd, &q).unwrap().span_dim <= m, true);
        }
    }
}

#[test]
fn three_dimensional_summand_cones() {
    let expected = [
        (cube(), 2),
        (triangular_prism(), 1),
        (hexagonal_prism(), 4),
        (square_pyramid(), 0),
        (octahedron(), 0),
        (unit_simplex(), 0),
        (wide_simplex(), 0),
    ];
    for (p, t) in expected {
        assert_eq!(tilde_t1(&p).dim, t);
        assert_eq!(summand_cone(&p).dim(), t + 1);
    }
}

#[test]
fn corpus_decomposition_counts() {
    let counts: Vec<usize> = catalog()
        .iter()
        .map(|q| lattice_decompositions(q).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 0, 0, 1, 5]);
    let dims: Vec<usize> = catalog().iter().map(|q| tilde_t1(q).dim).collect();
    assert_eq!(dims, vec![1, 0, 1, 2, 3]);
}

#[test]
fn random_polygons_are_deterministic() {
    let a: Vec<BTreeSet<IntVector>> = random_polygons(7, 2)
        .iter()
        .map(|q| q.int_vertices().unwrap().into_iter().collect())
        .collect();
    let b: Vec<BTreeSet<IntVector>> = random_polygons(7, 2)
        .iter()
        .map(|q| q.int_vertices().unwrap().into_iter().collect())
        .collect();
    assert_eq!(a, b);
}
