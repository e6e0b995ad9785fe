//! A-domains: o-symmetric domains whose boundary contains four mutually
//! orthogonal circular pieces, and the boundary measure they carry.
//!
//! An [`ADomain`] is stored in a canonical frame, where the pieces lie on the
//! circle of radius `r` about the origin, together with a linear `frame` map.
//! The body it represents is `frame · canonical`.

mod approx;
mod measure;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::geom::conic::{ConicArc, CurvedBoundary};
use crate::geom::vec2::{Mat2, Vec2};

pub use approx::{approximate_by_adomain, Approximation};
pub use measure::{
    b_measure, polygon_angle_sum, verify_b_measure, AngleMeasureReport, BMeasureReport, BoundaryArc,
};

/// Connector curvature ceiling, in units of `1/r`, defining the upper end of the bulge window.
pub const MAX_CONNECTOR_CURVATURE: f64 = 100.0;


#[derive(Clone, Debug, PartialEq)]
pub struct ADomain {
    r: f64,
    pieces: [[f64; 2]; 4],
    bulge: Option<f64>,
    canonical: CurvedBoundary,
    frame: Mat2,
    world: CurvedBoundary,
}

/// Admissible bulge weights `[lo, hi]` for connectors of a symmetric A-domain.
///
/// At `lo` the connector is the circular arc itself, so the domain contains the
/// disk of radius `r`. `hi` is the largest weight whose connector curvature stays
/// below [`MAX_CONNECTOR_CURVATURE`]` / r`.
pub fn bulge_window(phi: f64) -> (f64, f64) {
    let lo = (FRAC_PI_4 - phi).cos();
    let curvature = |w: f64| {
        let c = connector(1.0, phi, 0, w);
        (0..=200)
            .map(|k| c.sampled_curvature(k as f64 / 200.0, 1e-4))
            .fold(0.0, f64::max)
    };
    let (mut a, mut b) = (lo, lo.max(1.0));
    while curvature(b) <= MAX_CONNECTOR_CURVATURE {
        a = b;
        b *= 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if curvature(mid) <= MAX_CONNECTOR_CURVATURE {
            a = mid;
        } else {
            b = mid;
        }
    }
    (lo, a)
}

/// Default bulge for half-width `phi`: parabolic connectors (weight 1) clamped
/// into [`bulge_window`], which only binds for pieces close to `π/4`.
pub fn neutral_bulge(phi: f64) -> f64 {
    let (lo, hi) = bulge_window(phi);
    1.0f64.clamp(lo, hi)
}

/// Connector from the end of piece `k` to the start of piece `k + 1`.
fn connector(r: f64, phi: f64, k: usize, w: f64) -> ConicArc {
    let base = k as f64 * FRAC_PI_2;
    ConicArc::new(
        Vec2::from_angle(base + phi) * r,
        Vec2::from_angle(base + FRAC_PI_4) * (r / (FRAC_PI_4 - phi).cos()),
        Vec2::from_angle(base + FRAC_PI_2 - phi) * r,
        w,
    )
}

/// Symmetric A-domain: pieces `[-φ, φ] + kπ/2` on the circle of radius `r`,
/// joined by conic connectors of weight `bulge`.
pub fn construct_adomain(r: f64, phi: f64, bulge: f64) -> Result<ADomain> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidBody(format!("radius must be positive, got {r}")));
    }
    if !(phi > 0.0 && phi < FRAC_PI_4) {
        return Err(Error::InvalidBody(format!(
            "piece half-width must lie in (0, π/4), got {phi}"
        )));
    }
    let (lo, hi) = bulge_window(phi);
    if !(bulge >= lo && bulge <= hi) {
        return Err(Error::BulgeOutOfWindow { bulge, lo, hi });
    }
    let mut arcs = Vec::with_capacity(8);
    for k in 0..4 {
        let c = k as f64 * FRAC_PI_2;
        arcs.push(ConicArc::circle(r, c - phi, c + phi));
        arcs.push(connector(r, phi, k, bulge));
    }
    let pieces = std::array::from_fn(|k| {
        let c = k as f64 * FRAC_PI_2;
        [c - phi, c + phi]
    });
    let mut a = ADomain::from_parts(r, pieces, arcs, Mat2::IDENTITY)?;
    a.bulge = Some(bulge);
    Ok(a)
}

impl ADomain {
    /// General A-domain from canonical-frame boundary arcs.
    ///
    /// `pieces[k]` must equal `pieces[0] + kπ/2` and the boundary must follow the
    /// circle of radius `r` over each piece.
    pub fn from_parts(r: f64, pieces: [[f64; 2]; 4], arcs: Vec<ConicArc>, frame: Mat2) -> Result<ADomain> {
        let canonical = CurvedBoundary::new(arcs)?;
        let world = canonical.linear_image(frame)?;
        let a = ADomain {
            r,
            pieces,
            bulge: None,
            canonical,
            frame,
            world,
        };
        a.check_invariants()?;
        Ok(a)
    }

    /// The same canonical domain under a different frame map.
    pub fn with_frame(&self, frame: Mat2) -> Result<ADomain> {
        let world = self.canonical.linear_image(frame)?;
        Ok(ADomain {
            world,
            frame,
            ..self.clone()
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Piece angle intervals in the canonical frame, counterclockwise from the first.
    pub fn pieces(&self) -> &[[f64; 2]; 4] {
        &self.pieces
    }

    /// Half the angular width of each piece.
    pub fn piece_halfwidth(&self) -> f64 {
        0.5 * (self.pieces[0][1] - self.pieces[0][0])
    }

    /// Connector weight for symmetric instances built by [`construct_adomain`].
    pub fn bulge(&self) -> Option<f64> {
        self.bulge
    }

    pub fn frame(&self) -> Mat2 {
        self.frame
    }

    pub fn canonical(&self) -> &CurvedBoundary {
        &self.canonical
    }

    /// Boundary of `frame · canonical`.
    pub fn world(&self) -> &CurvedBoundary {
        &self.world
    }

    /// True for instances fully described by `(r, φ, bulge)`.
    pub fn is_symmetric_form(&self) -> bool {
        self.bulge.is_some() && self.frame.is_identity()
    }

    /// Checks piece placement, o-symmetry and strict convexity of the canonical boundary.
    /// Closure and tangent continuity are enforced by [`CurvedBoundary::new`].
    pub fn check_invariants(&self) -> Result<()> {
        let r = self.r;
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidBody(format!("radius must be positive, got {r}")));
        }
        let [a, b] = self.pieces[0];
        if !(b > a && b - a < FRAC_PI_2) {
            return Err(Error::InvalidBody(format!("piece [{a}, {b}] has invalid width")));
        }
        for (k, p) in self.pieces.iter().enumerate() {
            let shift = k as f64 * FRAC_PI_2;
            if (p[0] - a - shift).abs() > 1e-12 || (p[1] - b - shift).abs() > 1e-12 {
                return Err(Error::InvalidBody(format!(
                    "piece {k} is not the first piece rotated by {k}·π/2"
                )));
            }
            for j in 0..=16 {
                let theta = p[0] + (p[1] - p[0]) * j as f64 / 16.0;
                let q = self.canonical.point_at_angle(theta);
                if (q.norm() - r).abs() > 1e-9 * r {
                    return Err(Error::InvalidBody(format!(
                        "piece {k} leaves the circle of radius {r} at angle {theta}"
                    )));
                }
            }
        }
        if !self.canonical.is_o_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for (i, arc) in self.canonical.arcs().iter().enumerate() {
            let min = (1..64)
                .map(|k| arc.sampled_curvature(k as f64 / 64.0, 1e-4))
                .fold(f64::INFINITY, f64::min);
            if min <= 1e-6 / r {
                return Err(Error::InvalidBody(format!("arc {i} is not strictly convex")));
            }
        }
        Ok(())
    }

    /// Index of the piece containing canonical angle `theta`, if any.
    pub fn piece_of(&self, theta: f64) -> Option<usize> {
        self.pieces.iter().position(|p| {
            let rel = (theta - p[0]).rem_euclid(2.0 * PI);
            rel <= p[1] - p[0]
        })
    }

    /// Canonical angle of the boundary point in world direction `dir`.
    pub(crate) fn canonical_angle(&self, dir: Vec2) -> f64 {
        let inv = self.frame.inverse().expect("frame is invertible");
        (inv * dir).angle()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::body::{hausdorff_distance, ConvexBody};

    #[test]
    fn near_circle_limit() {
        let a = construct_adomain(1.0, FRAC_PI_4 - 1e-6, neutral_bulge(FRAC_PI_4 - 1e-6)).unwrap();
        let d = hausdorff_distance(&ConvexBody::ADomain(a), &ConvexBody::disk(1.0).unwrap());
        assert!(d < 1e-3, "{d}");
    }

    #[test]
    fn neutral_instance_is_valid() {
        let a = construct_adomain(1.0, PI / 12.0, neutral_bulge(PI / 12.0)).unwrap();
        a.check_invariants().unwrap();
        assert_eq!(a.canonical().arcs().len(), 8);
        assert!(a.is_symmetric_form());
    }

    #[test]
    fn bulge_outside_window() {
        let phi = 0.4 * FRAC_PI_2;
        let (lo, hi) = bulge_window(phi);
        assert!(lo < 1.0 && 1.0 < hi);
        assert_eq!(neutral_bulge(phi), 1.0);
        match construct_adomain(1.0, phi, hi * 2.0) {
            Err(Error::BulgeOutOfWindow { lo: l, hi: h, .. }) => assert_eq!((l, h), (lo, hi)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            construct_adomain(1.0, phi, 0.5 * lo),
            Err(Error::BulgeOutOfWindow { .. })
        ));
    }

    #[test]
    fn piece_lookup() {
        let a = construct_adomain(2.0, 0.2, neutral_bulge(0.2)).unwrap();
        assert_eq!(a.piece_of(0.1), Some(0));
        assert_eq!(a.piece_of(-0.1), Some(0));
        assert_eq!(a.piece_of(FRAC_PI_4), None);
        assert_eq!(a.piece_of(PI + 0.19), Some(2));
        assert_eq!(a.piece_of(3.0 * FRAC_PI_2 + 0.2), Some(3));
    }

    #[test]
    fn frame_changes_world_only() {
        let a = construct_adomain(1.0, 0.3, neutral_bulge(0.3)).unwrap();
        let m = Mat2::new(2.0, 0.5, 0.0, 1.0);
        let b = a.with_frame(m).unwrap();
        assert_eq!(a.canonical(), b.canonical());
        let p = a.canonical().point_at_angle(0.0);
        assert!((b.world().gauge(m * p) - 1.0).abs() < 1e-12);
    }
}
