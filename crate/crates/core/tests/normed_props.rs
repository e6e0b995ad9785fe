use std::f64::consts::PI;

use proptest::prelude::*;
use sepack::adomain::{bulge_window, construct_adomain};
use sepack::geom::{ConvexBody, Mat2, Vec2};
use sepack::normed::{auerbach_basis, birkhoff_orthogonal, max_separable_point_set};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn rotated_ellipse() -> impl Strategy<Value = ConvexBody> {
    (1.0f64..2.5, 0.0..PI).prop_map(|(a, t)| {
        ConvexBody::disk(1.0).unwrap().linear_image(Mat2::rotation(t) * Mat2::diag(a, 1.0)).unwrap()
    })
}

fn adomain() -> impl Strategy<Value = ConvexBody> {
    (0.1f64..0.7, 0.05f64..0.95, 0.0..PI, 1.0f64..1.5).prop_map(|(phi, u, t, s)| {
        let (lo, hi) = bulge_window(phi);
        let a = construct_adomain(1.0, phi, lo + u * (hi - lo)).unwrap();
        ConvexBody::ADomain(a.with_frame(Mat2::rotation(t) * Mat2::diag(s, 1.0)).unwrap())
    })
}

fn smooth_body() -> impl Strategy<Value = ConvexBody> {
    prop_oneof![rotated_ellipse(), adomain()]
}

proptest! {
    #![proptest_config(config(64))]

    /// On an ellipse `x ⊣ y` exactly when `y` is parallel to the tangent at `x/‖x‖`.
    #[test]
    fn birkhoff_on_ellipse_is_tangency(a in 0.5f64..3.0, b in 0.5f64..3.0, t in 0.0..2.0 * PI, s in 0.1f64..5.0,
                                        scale in prop_oneof![Just(1.0), Just(-1.0)], off in 1e-3..PI - 1e-3) {
        let (a, b) = (a.max(b), a.min(b));
        let k = ConvexBody::ellipse(a, b).unwrap();
        let x = Vec2::new(a * t.cos(), b * t.sin()) * s;
        let normal = Vec2::new(t.cos() / a, t.sin() / b);
        let tangent = normal.perp() * scale;
        prop_assert!(birkhoff_orthogonal(&k, x, tangent).unwrap());
        let tilted = Mat2::rotation(off) * tangent;
        prop_assert!(!birkhoff_orthogonal(&k, x, tilted).unwrap());
    }

    #[test]
    fn birkhoff_on_disk_is_symmetric(r in 0.1f64..3.0, t in 0.0..2.0 * PI, u in 0.0..2.0 * PI, orth in any::<bool>()) {
        let k = ConvexBody::disk(r).unwrap();
        let x = Vec2::from_angle(t);
        let y = if orth { x.perp() * 2.0 } else { Vec2::from_angle(u) };
        prop_assert_eq!(birkhoff_orthogonal(&k, x, y).unwrap(), birkhoff_orthogonal(&k, y, x).unwrap());
    }
}

proptest! {
    #![proptest_config(config(12))]

    /// Auerbach basis vectors are unit and mutually Birkhoff orthogonal, checked
    /// against the body's outer normals.
    #[test]
    fn auerbach_vectors_are_mutually_orthogonal(k in smooth_body()) {
        let basis = auerbach_basis(&k).unwrap();
        for (e, f) in [(basis.e1, basis.e2), (basis.e2, basis.e1)] {
            prop_assert!((k.gauge(e).unwrap() - 1.0).abs() <= 1e-9);
            let n = k.outer_normal(e).unwrap();
            prop_assert!(n.dot(f).abs() <= 1e-6 * f.norm(), "residual {}", n.dot(f));
        }
        prop_assert!(basis.e1.cross(basis.e2) > 0.0);
    }

    /// Smooth bodies admit exactly four separable boundary points, surrounding the origin.
    #[test]
    fn separable_sets_have_four_points(k in smooth_body()) {
        let set = max_separable_point_set(&k, 180).unwrap();
        prop_assert_eq!(set.len(), 4);
        let mut angles: Vec<f64> = set.iter().map(|p| p.point.angle()).collect();
        angles.sort_by(f64::total_cmp);
        let gaps = angles.windows(2).map(|w| w[1] - w[0]).chain([angles[0] + 2.0 * PI - angles[3]]);
        for g in gaps {
            prop_assert!(g <= PI + 1e-9, "origin outside the hull, gap {g}");
        }
    }
}
