use std::f64::consts::PI;

use super::conic::CurvedBoundary;
use super::polygon::{minkowski_sum, Polygon};
use super::vec2::{Mat2, Vec2, TAU};
use crate::adomain::ADomain;
use crate::error::{Error, Result};

/// A planar convex domain.
///
/// Disks, ellipses and A-domains are centered at the origin. Smooth kinds are
/// never polygonized implicitly; use [`ConvexBody::polygonize`] for that.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexBody {
    Polygon(Polygon),
    Disk { r: f64 },
    /// Axis-aligned ellipse with semi-axes `a >= b` along x and y.
    Ellipse { a: f64, b: f64 },
    ADomain(ADomain),
    /// Smooth body bounded by a closed chain of conic arcs.
    Conic(CurvedBoundary),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BodyKind {
    Polygon,
    Disk,
    Ellipse,
    ADomain,
    Conic,
}

/// Value of the support function in a unit direction, with a boundary point attaining it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportEvaluation {
    pub direction: Vec2,
    pub value: f64,
    pub touch_point: Vec2,
}

impl ConvexBody {
    pub fn disk(r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidBody(format!("disk radius must be positive, got {r}")));
        }
        Ok(ConvexBody::Disk { r })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        if !(b > 0.0 && a >= b && a.is_finite()) {
            return Err(Error::InvalidBody(format!(
                "ellipse needs a >= b > 0, got a={a}, b={b}"
            )));
        }
        Ok(ConvexBody::Ellipse { a, b })
    }

    pub fn polygon(vertices: Vec<Vec2>) -> Result<Self> {
        Polygon::new(vertices).map(ConvexBody::Polygon)
    }

    /// The square `[-s, s]²`.
    pub fn square(s: f64) -> Result<Self> {
        Polygon::square(s).map(ConvexBody::Polygon)
    }

    /// Regular hexagon with unit circumradius and a vertex on the positive x-axis.
    pub fn regular_hexagon() -> Self {
        ConvexBody::Polygon(Polygon::regular(6, 1.0, 0.0).expect("regular hexagon is valid"))
    }

    pub fn kind(&self) -> BodyKind {
        match self {
            ConvexBody::Polygon(_) => BodyKind::Polygon,
            ConvexBody::Disk { .. } => BodyKind::Disk,
            ConvexBody::Ellipse { .. } => BodyKind::Ellipse,
            ConvexBody::ADomain(_) => BodyKind::ADomain,
            ConvexBody::Conic(_) => BodyKind::Conic,
        }
    }

    /// Smooth kinds have a unique supporting line at every boundary point.
    pub fn is_smooth(&self) -> bool {
        !matches!(self, ConvexBody::Polygon(_))
    }

    pub fn is_o_symmetric(&self) -> bool {
        match self {
            ConvexBody::Polygon(p) => p.is_o_symmetric(),
            ConvexBody::Disk { .. } | ConvexBody::Ellipse { .. } | ConvexBody::ADomain(_) => true,
            ConvexBody::Conic(c) => c.is_o_symmetric(),
        }
    }

    pub fn as_polygon(&self) -> Option<&Polygon> {
        match self {
            ConvexBody::Polygon(p) => Some(p),
            _ => None,
        }
    }

    fn curved(&self) -> Option<&CurvedBoundary> {
        match self {
            ConvexBody::ADomain(a) => Some(a.world()),
            ConvexBody::Conic(c) => Some(c),
            _ => None,
        }
    }

    /// Support function evaluated in a unit direction.
    pub fn support(&self, direction: Vec2) -> Result<SupportEvaluation> {
        if !direction.is_finite() || (direction.norm() - 1.0).abs() > TAU {
            return Err(Error::Contract(format!(
                "support direction {direction} is not a unit vector"
            )));
        }
        let (value, touch_point) = self.support_pair(direction);
        Ok(SupportEvaluation {
            direction,
            value,
            touch_point,
        })
    }

    /// `h_K(d)` for any vector `d` (positively homogeneous extension).
    pub fn support_value(&self, d: Vec2) -> f64 {
        self.support_pair(d).0
    }

    pub(crate) fn support_pair(&self, d: Vec2) -> (f64, Vec2) {
        match self {
            ConvexBody::Polygon(p) => p.support(d),
            ConvexBody::Disk { r } => {
                let n = d.norm();
                if n == 0.0 {
                    return (0.0, Vec2::new(*r, 0.0));
                }
                (r * n, d * (r / n))
            }
            ConvexBody::Ellipse { a, b } => {
                let h = ((a * d.x).powi(2) + (b * d.y).powi(2)).sqrt();
                if h == 0.0 {
                    return (0.0, Vec2::new(*a, 0.0));
                }
                (h, Vec2::new(a * a * d.x / h, b * b * d.y / h))
            }
            ConvexBody::ADomain(_) | ConvexBody::Conic(_) => {
                self.curved().expect("curved kind").support(d)
            }
        }
    }

    /// Minkowski gauge `‖x‖_K = inf{λ > 0 : x ∈ λK}` of an o-symmetric body.
    pub fn gauge(&self, x: Vec2) -> Result<f64> {
        if !self.is_o_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if let ConvexBody::Polygon(p) = self {
            if !p.contains_origin_strictly() {
                return Err(Error::NotSymmetric);
            }
        }
        Ok(self.gauge_unchecked(x))
    }

    /// Gauge without the symmetry check; valid whenever the origin is interior.
    pub fn gauge_unchecked(&self, x: Vec2) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.gauge(x),
            ConvexBody::Disk { r } => x.norm() / r,
            ConvexBody::Ellipse { a, b } => ((x.x / a).powi(2) + (x.y / b).powi(2)).sqrt(),
            ConvexBody::ADomain(_) | ConvexBody::Conic(_) => self.curved().expect("curved").gauge(x),
        }
    }

    /// Boundary point on the ray from the origin at angle `theta`.
    pub fn boundary_point(&self, theta: f64) -> Vec2 {
        let u = Vec2::from_angle(theta);
        match self {
            ConvexBody::ADomain(_) | ConvexBody::Conic(_) => {
                self.curved().expect("curved").point_at_angle(theta)
            }
            _ => u / self.gauge_unchecked(u),
        }
    }

    /// Euclidean outer unit normal at a boundary point.
    ///
    /// For polygons the point must lie in the relative interior of an edge.
    pub fn outer_normal(&self, p: Vec2) -> Result<Vec2> {
        match self {
            ConvexBody::Polygon(poly) => {
                let scale = poly.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
                if poly.vertex_near(p, TAU * scale.max(1.0)).is_some() {
                    return Err(Error::Contract(format!(
                        "{p} is a polygon vertex; the supporting line is not unique"
                    )));
                }
                let edges = poly.edges_through(p, TAU * scale.max(1.0));
                match edges.as_slice() {
                    [i] => Ok(poly.edge_normal(*i)),
                    _ => Err(Error::Contract(format!("{p} is not on the polygon boundary"))),
                }
            }
            ConvexBody::Disk { .. } => p
                .normalized()
                .ok_or_else(|| Error::Contract("zero boundary point".into())),
            ConvexBody::Ellipse { a, b } => Vec2::new(p.x / (a * a), p.y / (b * b))
                .normalized()
                .ok_or_else(|| Error::Contract("zero boundary point".into())),
            ConvexBody::ADomain(_) | ConvexBody::Conic(_) => {
                let c = self.curved().expect("curved");
                let dir = p
                    .normalized()
                    .ok_or_else(|| Error::Contract("zero boundary point".into()))?;
                Ok(c.normal(c.ray_shoot(dir)))
            }
        }
    }

    /// Image of the body under an invertible linear map.
    ///
    /// Disks and ellipses become [`ConvexBody::Conic`] unless the image is again
    /// axis-aligned; A-domains keep their kind with the map folded into their frame.
    pub fn linear_image(&self, m: Mat2) -> Result<ConvexBody> {
        if m.det().abs() <= f64::EPSILON || !m.det().is_finite() {
            return Err(Error::Contract("linear map must be invertible".into()));
        }
        match self {
            ConvexBody::Polygon(p) => p.linear_image(m).map(ConvexBody::Polygon),
            ConvexBody::Disk { r } => CurvedBoundary::ellipse_image(m * Mat2::diag(*r, *r)).map(ConvexBody::Conic),
            ConvexBody::Ellipse { a, b } => {
                CurvedBoundary::ellipse_image(m * Mat2::diag(*a, *b)).map(ConvexBody::Conic)
            }
            ConvexBody::ADomain(a) => a.with_frame(m * a.frame()).map(ConvexBody::ADomain),
            ConvexBody::Conic(c) => c.linear_image(m).map(ConvexBody::Conic),
        }
    }

    /// Boundary as conic arcs, for the smooth kinds.
    pub fn conic_boundary(&self) -> Option<CurvedBoundary> {
        match self {
            ConvexBody::Polygon(_) => None,
            ConvexBody::Disk { r } => CurvedBoundary::ellipse_image(Mat2::diag(*r, *r)).ok(),
            ConvexBody::Ellipse { a, b } => CurvedBoundary::ellipse_image(Mat2::diag(*a, *b)).ok(),
            ConvexBody::ADomain(a) => Some(a.world().clone()),
            ConvexBody::Conic(c) => Some(c.clone()),
        }
    }

    /// Inscribed polygon through `count` boundary points at equally spaced ray angles.
    pub fn polygonize(&self, count: usize) -> Result<Polygon> {
        if let ConvexBody::Polygon(p) = self {
            return Ok(p.clone());
        }
        if count < 3 {
            return Err(Error::Degenerate("polygonization needs at least 3 points".into()));
        }
        let pts = (0..count)
            .map(|k| self.boundary_point(2.0 * PI * k as f64 / count as f64))
            .collect();
        Polygon::new(pts)
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.perimeter(),
            ConvexBody::Disk { r } => 2.0 * PI * r,
            _ => self.conic_boundary().expect("smooth").perimeter(),
        }
    }

    /// Upper bound on the largest distance from the origin to the body (exact for polygons, disks, ellipses).
    pub fn radius(&self) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max),
            ConvexBody::Disk { r } => *r,
            ConvexBody::Ellipse { a, .. } => *a,
            // max |p| = max h(u); sampling u every π/128 undershoots by at most 1/cos(π/256).
            _ => {
                (0..256)
                    .map(|k| self.support_value(Vec2::from_angle(2.0 * PI * k as f64 / 256.0)))
                    .fold(0.0, f64::max)
                    / (PI / 256.0).cos()
            }
        }
    }
}

/// Minkowski symmetrization `½(K + (−K))`.
pub fn symmetrize(body: &ConvexBody) -> Result<ConvexBody> {
    match body {
        ConvexBody::Polygon(p) => {
            if p.is_o_symmetric() {
                return Ok(body.clone());
            }
            let sum = minkowski_sum(p, &p.reflect())?;
            Ok(ConvexBody::Polygon(sum.scale(0.5)))
        }
        ConvexBody::Disk { .. } | ConvexBody::Ellipse { .. } | ConvexBody::ADomain(_) => Ok(body.clone()),
        ConvexBody::Conic(c) => {
            if c.is_o_symmetric() {
                Ok(body.clone())
            } else {
                Err(Error::InvalidBody(
                    "symmetrization of non-symmetric curved bodies is not supported".into(),
                ))
            }
        }
    }
}

/// Number of uniformly spaced directions sampled by [`hausdorff_distance`].
pub const HAUSDORFF_GRID: usize = 4096;

/// Hausdorff distance as the sup-norm distance of support functions, sampled on
/// [`HAUSDORFF_GRID`] directions plus every polygon edge normal.
pub fn hausdorff_distance(k: &ConvexBody, l: &ConvexBody) -> f64 {
    let mut dirs: Vec<Vec2> = (0..HAUSDORFF_GRID)
        .map(|i| Vec2::from_angle(2.0 * PI * i as f64 / HAUSDORFF_GRID as f64))
        .collect();
    for body in [k, l] {
        if let ConvexBody::Polygon(p) = body {
            dirs.extend(p.edge_normals());
        }
    }
    crate::par::map(&dirs, |&d| (k.support_value(d) - l.support_value(d)).abs())
        .into_iter()
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> ConvexBody {
        ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn support_examples() {
        let disk = ConvexBody::disk(1.0).unwrap();
        let s = disk.support(Vec2::new(1.0, 0.0)).unwrap();
        assert_eq!(s.value, 1.0);
        assert_eq!(s.touch_point, Vec2::new(1.0, 0.0));

        let e = ConvexBody::ellipse(2.0, 1.0).unwrap();
        let s = e.support(Vec2::new(0.0, 1.0)).unwrap();
        assert_eq!(s.value, 1.0);
        assert_eq!(s.touch_point, Vec2::new(0.0, 1.0));

        // Oracle: maximum of p·d over the four vertices.
        let sq = ConvexBody::square(1.0).unwrap();
        let d = Vec2::from_angle(PI / 6.0);
        let brute = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]
            .iter()
            .map(|&(x, y)| Vec2::new(x, y).dot(d))
            .fold(f64::NEG_INFINITY, f64::max);
        let s = sq.support(d).unwrap();
        assert!((s.value - brute).abs() < 1e-15);
        assert!((s.value - 1.366_025_403_784_438_6).abs() < 1e-12);
        assert_eq!(s.touch_point, Vec2::new(1.0, 1.0));
    }

    #[test]
    fn support_rejects_non_unit_direction() {
        let disk = ConvexBody::disk(1.0).unwrap();
        assert!(matches!(disk.support(Vec2::new(2.0, 0.0)), Err(Error::Contract(_))));
    }

    #[test]
    fn symmetrize_examples() {
        let disk = ConvexBody::disk(1.0).unwrap();
        assert_eq!(symmetrize(&disk).unwrap(), disk);

        let sym = symmetrize(&tri()).unwrap();
        let p = sym.as_polygon().unwrap();
        assert_eq!(p.len(), 6);
        for v in [(0.5, 0.0), (-0.5, 0.0), (0.0, 0.5), (0.0, -0.5), (0.5, -0.5), (-0.5, 0.5)] {
            assert!(p.vertex_near(Vec2::new(v.0, v.1), 1e-12).is_some());
        }

        let unit = ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap();
        let s = symmetrize(&unit).unwrap();
        let p = s.as_polygon().unwrap();
        assert_eq!(p.len(), 4);
        for v in p.vertices() {
            assert!((v.x.abs() - 0.5).abs() < 1e-12 && (v.y.abs() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn gauge_examples() {
        assert_eq!(ConvexBody::disk(1.0).unwrap().gauge(Vec2::new(3.0, 4.0)).unwrap(), 5.0);
        assert_eq!(ConvexBody::ellipse(2.0, 1.0).unwrap().gauge(Vec2::new(2.0, 0.0)).unwrap(), 1.0);
        let g = ConvexBody::square(1.0).unwrap().gauge(Vec2::new(0.5, -0.25)).unwrap();
        assert!((g - 0.5).abs() < 1e-15);
        assert!(matches!(tri().gauge(Vec2::new(0.1, 0.1)), Err(Error::NotSymmetric)));
    }

    #[test]
    fn hausdorff_examples() {
        let d1 = ConvexBody::disk(1.0).unwrap();
        let d15 = ConvexBody::disk(1.5).unwrap();
        let sq = ConvexBody::square(1.0).unwrap();
        assert_eq!(hausdorff_distance(&d1, &d1), 0.0);
        assert!((hausdorff_distance(&d1, &d15) - 0.5).abs() < 1e-15);
        // The support gap √2 - 1 is attained on the diagonal, which is on the grid.
        assert!((hausdorff_distance(&d1, &sq) - (2f64.sqrt() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn linear_image_of_disk_matches_ellipse() {
        let e = ConvexBody::disk(1.0).unwrap().linear_image(Mat2::diag(2.0, 1.0)).unwrap();
        let reference = ConvexBody::ellipse(2.0, 1.0).unwrap();
        assert!(hausdorff_distance(&e, &reference) < 1e-12);
        assert_eq!(e.kind(), BodyKind::Conic);
    }

    #[test]
    fn normals() {
        let e = ConvexBody::ellipse(2.0, 1.0).unwrap();
        let n = e.outer_normal(Vec2::new(2.0, 0.0)).unwrap();
        assert!(n.approx_eq(Vec2::new(1.0, 0.0), 1e-15));
        let sq = ConvexBody::square(1.0).unwrap();
        assert!(sq.outer_normal(Vec2::new(1.0, 1.0)).is_err());
        let n = sq.outer_normal(Vec2::new(1.0, 0.3)).unwrap();
        assert!(n.approx_eq(Vec2::new(1.0, 0.0), 1e-15));
    }
}
