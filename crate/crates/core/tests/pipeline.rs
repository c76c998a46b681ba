//! End-to-end checks of the construction and its certificates.

use hjpoly::certify::{
    certify_realization, check_facet_certificate, distance_functional, facet_certificate_of,
    verify_bundle, CertifyError,
};
use hjpoly::hj::hj_hypergraph;
use hjpoly::ratlin::{surd_sign, Surd};
use hjpoly::realize::{
    base_drawing, choose_epsilon, parabola_value, realize_pipeline, snap, surd_perturb,
    surd_stage_check, veronese, DrawingConfig, RealizeError,
};
use hjpoly::{RVec, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rat(rng: &mut impl Rng, max: i64) -> Rat {
    Rat::new(BigInt::from(rng.gen_range(-max..=max)), BigInt::from(rng.gen_range(1..=max)))
}

fn random_pos(rng: &mut impl Rng, max: i64) -> Rat {
    Rat::new(BigInt::from(rng.gen_range(1..=max)), BigInt::from(rng.gen_range(1..=max)))
}

#[test]
fn delta_rule_agrees_with_surd_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    let mut each_side = [0usize; 2];
    while checked < 1000 {
        let delta = random_rat(&mut rng, 40);
        if delta.is_zero() {
            continue;
        }
        let eps = random_pos(&mut rng, 40);
        let x = random_pos(&mut rng, 40);
        // (δ + √(εx))² − εx = δ² + 2δ√(εx)
        let value = Surd::new(&delta * &delta, &delta * Rat::from_integer(BigInt::from(2)), &eps * &x).unwrap();
        let rule = delta.is_positive() || &delta * &delta > Rat::from_integer(BigInt::from(4)) * &eps * &x;
        assert_eq!(surd_sign(&value) == 1, rule, "δ={delta} ε={eps} x={x}");
        each_side[usize::from(rule)] += 1;
        checked += 1;
    }
    assert!(each_side[0] > 50 && each_side[1] > 50, "{each_side:?}");
}

#[test]
fn distance_functional_identity_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..1000 {
        let p = (random_rat(&mut rng, 1000), random_rat(&mut rng, 1000));
        let q = (random_rat(&mut rng, 1000), random_rat(&mut rng, 1000));
        let g = distance_functional(&p, 5).unwrap();
        // the stored functional is a positive multiple of g_p; x² has coefficient 1 in g_p
        let scale = Rat::from_integer(g.normal()[0].clone());
        let dist = (&q.0 - &p.0) * (&q.0 - &p.0) + (&q.1 - &p.1) * (&q.1 - &p.1);
        assert_eq!(g.eval(&veronese(&q)).unwrap(), dist * scale);
    }
}

#[test]
fn parabolas_vanish_on_their_lines_at_the_surd_stage() {
    for (d, n) in [(5, 2), (6, 2), (5, 3), (7, 2)] {
        let drawing = base_drawing(&DrawingConfig::new(d, n, 1)).unwrap();
        for line in &drawing.lines {
            for &q in &line.members {
                assert!(line.residual(&drawing.points[q]).is_zero());
            }
        }
        let eps = choose_epsilon(&drawing);
        let surds = surd_perturb(&drawing, &eps).unwrap();
        for line in &drawing.lines {
            for (q, point) in surds.points.iter().enumerate() {
                let sign = parabola_value(line, &eps, point).unwrap().sign();
                assert_eq!(sign, if line.members.contains(&q) { 0 } else { 1 }, "({d},{n})");
            }
        }
        surd_stage_check(&drawing, &surds).unwrap();
    }
}

#[test]
fn too_large_epsilon_is_caught_before_rounding() {
    let drawing = base_drawing(&DrawingConfig::new(5, 2, 1)).unwrap();
    let surds = surd_perturb(&drawing, &Rat::from_integer(BigInt::from(1000))).unwrap();
    assert!(matches!(surd_stage_check(&drawing, &surds), Err(RealizeError::SurdStage { .. })));
}

fn check_certified(d: usize, n: usize, seed: u64) {
    let built = realize_pipeline(&DrawingConfig::new(d, n, seed)).unwrap();
    let real = &built.realization;
    let hj = hj_hypergraph(d, n).unwrap();
    assert_eq!(real.points.len(), d.pow(n as u32));
    assert!(real.points.iter().all(|p| p.len() == d));
    assert_eq!(real.line_sets(), hj.hypergraph.edges());
    assert_eq!(built.certificates.lines.len(), hj.hypergraph.edge_count());
    for cert in &built.certificates.lines {
        assert!(cert.min_slack.is_positive());
        assert_eq!(cert.on_set.len(), d);
        check_facet_certificate(&real.points, cert).unwrap();
    }
    assert_eq!(built.certificates.vertices.len(), real.points.len());
    for (i, p) in real.points.iter().enumerate() {
        let head = RVec::new(p.as_slice()[..5].to_vec());
        assert_eq!(head, veronese(&real.planar_point(i)));
        if d > 5 {
            let bound = Rat::new(BigInt::one(), BigInt::from(256));
            assert!(p.as_slice()[5..].iter().all(|z| z.abs() <= bound));
        }
    }
    verify_bundle(real, &built.certificates).unwrap();
    assert!(real.precision_bits < 2048);

    let again = realize_pipeline(&DrawingConfig::new(d, n, seed)).unwrap();
    assert_eq!(again, built);
}

#[test]
fn certified_at_five_two() {
    check_certified(5, 2, 1);
}

#[test]
fn certified_at_six_two() {
    check_certified(6, 2, 1);
}

#[test]
fn certified_for_other_seeds() {
    check_certified(5, 2, 7);
    check_certified(6, 2, 99);
}

#[test]
fn degenerate_and_small_inputs_are_rejected() {
    assert!(matches!(
        realize_pipeline(&DrawingConfig::new(5, 1, 1)),
        Err(RealizeError::DegenerateSize { .. })
    ));
    assert!(matches!(
        realize_pipeline(&DrawingConfig::new(3, 2, 1)),
        Err(RealizeError::InvalidConfig(_))
    ));
}

#[test]
fn tampering_is_detected() {
    let built = realize_pipeline(&DrawingConfig::new(5, 2, 1)).unwrap();
    let mut real = built.realization.clone();
    // push one point of the first line off its hyperplane
    let v = real.lines[0].1[0];
    let mut coords = real.points[v].clone().into_inner();
    coords[0] += Rat::new(BigInt::one(), BigInt::from(1u64 << 40));
    real.points[v] = RVec::new(coords);
    assert!(verify_bundle(&real, &built.certificates).is_err());
    assert!(certify_realization(&real).is_err());

    let mut bundle = built.certificates.clone();
    bundle.lines.swap(0, 1);
    assert!(verify_bundle(&built.realization, &bundle).is_err());
}

#[test]
fn a_non_line_subset_is_not_supporting() {
    let built = realize_pipeline(&DrawingConfig::new(5, 2, 1)).unwrap();
    // words 11, 12, 21, 33, 55 do not form a line
    let err = facet_certificate_of(&built.realization.points, &[0, 1, 5, 12, 24]).unwrap_err();
    assert!(matches!(err, CertifyError::NotSupporting { .. }), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn snap_stays_close_and_is_seeded(seed in any::<u64>(), bits in 16u32..200) {
        let drawing = base_drawing(&DrawingConfig::new(5, 2, seed)).unwrap();
        let eps = choose_epsilon(&drawing);
        let surds = surd_perturb(&drawing, &eps).unwrap();
        let a = snap(&surds, bits, seed, true).unwrap();
        prop_assert_eq!(&a, &snap(&surds, bits, seed, true).unwrap());
        let bound = Rat::new(BigInt::one(), BigInt::one() << bits);
        for ((x, y), (xh, yh)) in surds.points.iter().zip(&a) {
            prop_assert!((xh - x).abs() <= bound);
            // |ŷ − y| ≤ 2^-bits, decided exactly
            prop_assert!(surd_sign(&y.neg().add_rational(&(yh + &bound))) >= 0);
            prop_assert!(surd_sign(&y.neg().add_rational(&(yh - &bound))) <= 0);
        }
        let mut xs: Vec<&Rat> = a.iter().map(|p| &p.0).collect();
        xs.sort();
        xs.dedup();
        prop_assert_eq!(xs.len(), a.len());
    }
}
