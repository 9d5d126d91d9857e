//! Formula consistency for the bound calculus: the isolated-singularity and
//! zero-dimensional-locus radii agree when grade = depth, the countable
//! CM-type bound is an exact minimum with a real infinity sentinel, radius
//! arithmetic is exact, and bounds are monotone in their inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singbound_core::bounds::{
    bound_pipeline, countable_cm_bound, dimsing0_radius, dimsing1_radius, filtration,
    liu_radius, star, BallExpr, Category, Generator, LoewyLength, PipelineInput, Strategy,
};
use singbound_core::groebner::Caps;
use singbound_core::ideal::IdealData;
use singbound_core::invariants::{grade_koszul, loewy_length, mu, Attestations, IdealKind};
use singbound_core::poly::{parse_polynomial, PolyRing, Polynomial};
use singbound_core::resolution::depth_graded;
use singbound_core::ring::{Ring, RingPresentation};
use singbound_core::FieldSpec;

fn present(vars: &[&str], weights: Vec<u64>, rels: &[&str]) -> Ring {
    let ambient = PolyRing::new(
        FieldSpec::Rational,
        vars.iter().map(|s| s.to_string()).collect(),
        weights,
    )
    .unwrap();
    let rels: Vec<Polynomial> = rels
        .iter()
        .map(|s| parse_polynomial(&ambient, s).unwrap())
        .collect();
    RingPresentation::new(ambient, rels, Caps::default()).unwrap()
}

fn ideal(ring: &Ring, gens: &[&str]) -> IdealData {
    let gens: Vec<Polynomial> = gens
        .iter()
        .map(|s| parse_polynomial(&ring.ambient, s).unwrap())
        .collect();
    IdealData::new(ring.clone(), gens, Caps::default()).unwrap()
}

/// Five Cohen-Macaulay instances with an ideal whose grade equals the depth
/// of the ring (maximal-ideal-primary regular sequences of powers).
fn cm_instances() -> Vec<(Ring, IdealData)> {
    let mut out = Vec::new();
    let r1 = present(&["x"], vec![1], &[]);
    let i1 = ideal(&r1, &["x^3"]);
    out.push((r1, i1));
    let r2 = present(&["x", "y"], vec![1, 1], &[]);
    let i2 = ideal(&r2, &["x", "y"]);
    out.push((r2, i2));
    let r3 = present(&["x", "y"], vec![1, 1], &[]);
    let i3 = ideal(&r3, &["x^2", "y^3"]);
    out.push((r3, i3));
    let r4 = present(&["x", "y", "z"], vec![1, 1, 1], &[]);
    let i4 = ideal(&r4, &["x^2", "y^2", "z^2"]);
    out.push((r4, i4));
    let r5 = present(&["x", "y", "z"], vec![1, 1, 1], &["x*y - z^2"]);
    let i5 = ideal(&r5, &["x", "y", "z"]);
    out.push((r5, i5));
    out
}

#[test]
fn liu_equals_dimsing0_when_grade_is_depth() {
    let caps = Caps::default();
    let instances = cm_instances();
    assert!(instances.len() >= 5);
    for (ring, i) in instances {
        let m = mu(&i, caps).unwrap();
        let g = grade_koszul(&i, caps).unwrap();
        let d = depth_graded(&ring, caps).unwrap();
        assert_eq!(g, d, "instances are chosen with grade = depth");
        let ll = loewy_length(&i, caps).unwrap();
        assert_eq!(
            liu_radius(m, d, ll).unwrap(),
            dimsing0_radius(m, g, ll).unwrap()
        );
    }
}

#[test]
fn countable_cm_is_exact_min_with_infinity_sentinel() {
    // Non-artinian R/I: the first operand is infinite, the second wins.
    let (bound, which) =
        countable_cm_bound(2, 1, 2, LoewyLength::Infinite, 4, 0).unwrap();
    assert_eq!(which, 1);
    assert_eq!(bound, dimsing1_radius(2, 1, 4, 0).unwrap() - 1);
    assert_eq!(bound, 15);

    // Artinian R/I with grade = dim: the operands compare honestly.
    let (b2, w2) = countable_cm_bound(3, 2, 2, LoewyLength::Finite(2), 2, 0).unwrap();
    let op1 = (2u64 + 1) * (3 - 2 + 1) as u64 - 1; // 5
    let op2 = dimsing1_radius(3, 2, 2, 0).unwrap() - 1; // 7
    assert_eq!(b2, op1.min(op2));
    assert_eq!(w2, 0);
}

#[test]
fn radius_arithmetic_and_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..200 {
        let mu_v = rng.gen_range(1u32..8);
        let grade_v = rng.gen_range(0..=mu_v);
        let ll = rng.gen_range(1u32..6);
        let n_s = rng.gen_range(1u32..6);
        let r0 = dimsing0_radius(mu_v, grade_v, ll).unwrap();
        let r1 = dimsing1_radius(mu_v, grade_v, n_s, 0).unwrap();
        // dim bound + 1 = radius always.
        assert_eq!(r0 - 1 + 1, r0);
        // Monotone in mu.
        assert!(dimsing0_radius(mu_v + 1, grade_v, ll).unwrap() >= r0);
        assert!(dimsing1_radius(mu_v + 1, grade_v, n_s, 0).unwrap() >= r1);
        // Monotone in the Loewy length and nilpotency index.
        assert!(dimsing0_radius(mu_v, grade_v, ll + 1).unwrap() >= r0);
        assert!(dimsing1_radius(mu_v, grade_v, n_s + 1, 0).unwrap() >= r1);
        if grade_v <= mu_v {
            let depth = grade_v;
            assert!(liu_radius(mu_v + 1, depth, ll).unwrap() >= liu_radius(mu_v, depth, ll).unwrap());
        }
    }
}

#[test]
fn star_and_filtration_compose_exactly() {
    let ambient = PolyRing::standard(FieldSpec::Rational, &["x", "y"]);
    let cat = Category::DerivedBounded("R/I".to_string());
    let a = BallExpr {
        category: cat.clone(),
        generator: Generator::ResidueField,
        radius: 3,
        provenance: vec!["test".into()],
    };
    let b = BallExpr {
        category: cat.clone(),
        generator: Generator::Cyclic(vec![parse_polynomial(&ambient, "x").unwrap()]),
        radius: 3,
        provenance: vec!["test".into()],
    };
    let s = star(&ambient, &a, &b).unwrap();
    assert_eq!(s.radius, 6);
    assert_eq!(s.generator.render(&ambient), "k \u{2295} R/(x)");

    // Duplicate summands collapse without changing the radius.
    let aa = star(&ambient, &a, &a).unwrap();
    assert_eq!(aa.radius, 6);
    assert_eq!(aa.generator.render(&ambient), "k");

    let f = filtration(4, &b).unwrap();
    assert_eq!(f.radius, 12);
    assert_eq!(f.generator, b.generator);

    // Degenerate inputs are rejected.
    let zero = BallExpr {
        category: cat.clone(),
        generator: Generator::ResidueField,
        radius: 0,
        provenance: vec!["test".into()],
    };
    assert!(star(&ambient, &a, &zero).is_err());
    assert!(filtration(0, &b).is_err());
    let other = BallExpr {
        category: Category::Singularity,
        generator: Generator::ResidueField,
        radius: 1,
        provenance: vec!["test".into()],
    };
    assert!(star(&ambient, &a, &other).is_err());
}

#[test]
fn complete_intersection_floor() {
    // mu = grade collapses the multiplier to one: a radius-one derived ball
    // gives dimension bound zero.
    use singbound_core::bounds::compose_singularity_ball;
    let dbs = BallExpr {
        category: Category::DerivedBounded("R/I".to_string()),
        generator: Generator::ResidueField,
        radius: 1,
        provenance: vec!["test".into()],
    };
    let composed = compose_singularity_ball(&dbs, 2, 2).unwrap();
    assert_eq!(composed.radius, 1);
    assert_eq!(composed.radius - 1, 0);
}

#[test]
fn types_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<singbound_core::ring::RingPresentation>();
    assert_send_sync::<IdealData>();
    assert_send_sync::<Polynomial>();
    assert_send_sync::<BallExpr>();
}

#[test]
fn pipeline_dim_bound_is_radius_minus_one() {
    // Across every worked pipeline the invariant dim_bound + 1 = radius holds.
    let caps = Caps::default();
    let cases: Vec<(Ring, IdealKind, IdealData, Attestations)> = {
        let r1 = present(
            &["X", "Y", "Z", "W"],
            vec![1, 1, 1, 1],
            &["X^2*Z", "X^2*W", "Y*Z", "Y*W"],
        );
        let jac1 = singbound_core::invariants::jacobian_ideal(&r1, caps).unwrap();
        let r2 = present(&["X", "Y", "Z", "W"], vec![1, 1, 1, 1], &["X*Y", "Y*Z", "Z*X"]);
        let jac2 = singbound_core::invariants::jacobian_ideal(&r2, caps).unwrap();
        let r3 = present(&["x", "y"], vec![1, 1], &["x^3", "x^2*y"]);
        let soc3 = singbound_core::invariants::socle(&r3, caps).unwrap();
        vec![
            (
                r1,
                IdealKind::Jacobian,
                jac1,
                Attestations {
                    half_cm_local: true,
                    ..Default::default()
                },
            ),
            (r2, IdealKind::Jacobian, jac2, Attestations::default()),
            (r3, IdealKind::Socle, soc3, Attestations::default()),
        ]
    };
    for (ring, kind, i, att) in cases {
        let report = bound_pipeline(&PipelineInput {
            ring: ring.clone(),
            kind,
            ideal: i,
            strategy: Strategy::Auto,
            derived_radius: None,
            radical_candidates: None,
            nil_cap: 64,
            attestations: att,
            caps,
        })
        .unwrap();
        let ball = report.ball.expect("numeric bound");
        assert_eq!(report.dim_bound, Some(ball.radius - 1));
    }
}
