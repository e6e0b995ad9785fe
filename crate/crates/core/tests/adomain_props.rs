use std::f64::consts::PI;

use proptest::prelude::*;
use sepack::adomain::{approximate_by_adomain, b_measure, bulge_window, construct_adomain, ADomain, BoundaryArc};
use sepack::construction::{csep_formula, max_separable_contact_packing};
use sepack::geom::{hausdorff_distance, ConicArc, ConvexBody, CurvedBoundary, Mat2, Vec2};
use sepack::normed::auerbach_basis;
use sepack::TAU;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn adomain() -> impl Strategy<Value = ADomain> {
    (0.05f64..0.75, 0.0f64..1.0, 0.0..PI, 1.0f64..2.0, 0.5f64..2.0).prop_map(|(phi, u, t, s, r)| {
        let (lo, hi) = bulge_window(phi);
        let a = construct_adomain(r, phi, lo + u * (hi - lo)).unwrap();
        a.with_frame(Mat2::rotation(t) * Mat2::diag(s, 1.0)).unwrap()
    })
}

fn arc() -> impl Strategy<Value = BoundaryArc> {
    (-PI..PI, 0.0..2.0 * PI).prop_map(|(start, sweep)| BoundaryArc::new(start, sweep))
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn b_measure_is_additive(a in adomain(), x in arc(), cuts in prop::collection::vec(0.0f64..1.0, 1..5)) {
        let mut cuts: Vec<f64> = cuts.into_iter().map(|c| c * x.sweep).collect();
        cuts.push(0.0);
        cuts.push(x.sweep);
        cuts.sort_by(f64::total_cmp);
        let parts: f64 = cuts
            .windows(2)
            .map(|w| b_measure(&a, BoundaryArc::new(x.start + w[0], w[1] - w[0])))
            .sum();
        prop_assert!((parts - b_measure(&a, x)).abs() <= 10.0 * TAU, "{parts} vs {}", b_measure(&a, x));
    }

    #[test]
    fn b_measure_is_symmetric(a in adomain(), x in arc()) {
        prop_assert!((b_measure(&a, x) - b_measure(&a, x.negated())).abs() <= 10.0 * TAU);
        prop_assert!((b_measure(&a, BoundaryArc::full()) - 2.0 * PI).abs() <= 10.0 * TAU);
    }
}

proptest! {
    #![proptest_config(config(10))]

    /// The Auerbach basis sits on the circular pieces, so lattice packings reach the formula.
    #[test]
    fn auerbach_basis_lies_in_pieces(a in adomain(), n in 2usize..60) {
        let body = ConvexBody::ADomain(a.clone());
        let basis = auerbach_basis(&body).unwrap();
        let inv = a.frame().inverse().unwrap();
        for e in [basis.e1, basis.e2, -basis.e1, -basis.e2] {
            let theta = (inv * e).angle();
            prop_assert!(a.piece_of(theta).is_some(), "{e} at canonical angle {theta} misses the pieces");
        }
        let c = max_separable_contact_packing(&body, n).unwrap();
        prop_assert_eq!(c.contacts.edge_count() as i64, csep_formula(n as i64).unwrap());
    }
}

/// Smooth symmetric targets: ellipses and four-arc rounded squares, in random frames.
fn target() -> impl Strategy<Value = ConvexBody> {
    let frame = (1.0f64..1.5, 0.0..PI).prop_map(|(a, t)| Mat2::rotation(t) * Mat2::diag(a, 1.0));
    (frame, prop_oneof![Just(None), (0.8f64..0.95).prop_map(Some)]).prop_map(|(m, w)| {
        let base = match w {
            None => ConvexBody::disk(1.0).unwrap(),
            Some(w) => {
                let (e, n) = (Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0));
                let q = |a: Vec2, b: Vec2| ConicArc::new(a, a + b, b, w);
                let arcs = vec![q(e, n), q(n, -e), q(-e, -n), q(-n, e)];
                ConvexBody::Conic(CurvedBoundary::new(arcs).unwrap())
            }
        };
        base.linear_image(m).unwrap()
    })
}

proptest! {
    #![proptest_config(config(6))]

    /// Reported approximation quality matches an independent recomputation.
    #[test]
    fn approximations_verify_themselves(k in target(), eps in prop_oneof![Just(0.02), Just(0.05)]) {
        let approx = approximate_by_adomain(&k, eps, 0.9).unwrap();
        prop_assert!(approx.hausdorff <= eps && approx.overlap_fraction >= 0.9);
        let body = ConvexBody::ADomain(approx.adomain.clone());
        let d = hausdorff_distance(&body, &k);
        prop_assert!(d <= eps, "recomputed {d}");
        prop_assert!((d - approx.hausdorff).abs() <= 1e-12);
        prop_assert!(approx.adomain.check_invariants().is_ok());
    }
}
