//! Piecewise rational-quadratic boundaries.
//!
//! Every smooth body in this crate that is not a plain disk or axis-aligned
//! ellipse is described by a closed chain of rational quadratic Bézier arcs.
//! Circular and elliptic arcs are exact in this family and it is closed under
//! linear maps (control points transform, weights are unchanged), which is
//! what A-domains and their affine images need.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::vec2::{Mat2, Vec2, TAU};
use crate::error::{Error, Result};

/// Rational quadratic Bézier arc with end weights 1 and middle weight `w`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConicArc {
    pub p0: Vec2,
    pub p1: Vec2,
    pub p2: Vec2,
    pub w: f64,
}

/// Location on a curved boundary: arc index and Bézier parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcPos {
    pub arc: usize,
    pub t: f64,
}

impl ConicArc {
    pub fn new(p0: Vec2, p1: Vec2, p2: Vec2, w: f64) -> Self {
        ConicArc { p0, p1, p2, w }
    }

    /// Exact circular arc of radius `r` about the origin from angle `a0` to `a1`
    /// (counterclockwise, `0 < a1 - a0 < π`).
    pub fn circle(r: f64, a0: f64, a1: f64) -> Self {
        debug_assert!(a1 > a0 && a1 - a0 < PI);
        let half = 0.5 * (a1 - a0);
        let mid = 0.5 * (a0 + a1);
        ConicArc {
            p0: Vec2::from_angle(a0) * r,
            p1: Vec2::from_angle(mid) * (r / half.cos()),
            p2: Vec2::from_angle(a1) * r,
            w: half.cos(),
        }
    }

    /// Arc joining `p0` (leaving along `t0`) to `p2` (arriving along `t2`), with the
    /// control point at the intersection of the two tangent lines.
    ///
    /// Returns `None` unless the tangent lines meet ahead of `p0` and behind `p2`.
    pub fn tangent_join(p0: Vec2, t0: Vec2, p2: Vec2, t2: Vec2, w: f64) -> Option<Self> {
        let det = t0.cross(t2);
        if det.abs() <= TAU * t0.norm() * t2.norm() {
            return None;
        }
        // p0 + s t0 = p2 - u t2
        let d = p2 - p0;
        let s = d.cross(t2) / det;
        let u = t0.cross(d) / det;
        let scale = d.norm();
        if s <= TAU * scale || u <= TAU * scale {
            return None;
        }
        Some(ConicArc::new(p0, p0 + t0 * s, p2, w))
    }

    fn denom(&self, t: f64) -> f64 {
        let s = 1.0 - t;
        s * s + 2.0 * self.w * s * t + t * t
    }

    fn numer(&self, t: f64) -> Vec2 {
        let s = 1.0 - t;
        self.p0 * (s * s) + self.p1 * (2.0 * self.w * s * t) + self.p2 * (t * t)
    }

    pub fn point(&self, t: f64) -> Vec2 {
        self.numer(t) / self.denom(t)
    }

    /// Derivative with respect to the Bézier parameter.
    pub fn derivative(&self, t: f64) -> Vec2 {
        let s = 1.0 - t;
        let n = self.numer(t);
        let d = self.denom(t);
        let dn = (self.p1 * self.w - self.p0) * (2.0 * s) + (self.p2 - self.p1 * self.w) * (2.0 * t);
        let dd = 2.0 * (t - s) + 2.0 * self.w * (s - t);
        (dn * d - n * dd) / (d * d)
    }

    /// Unit tangent in the direction of increasing parameter.
    pub fn tangent(&self, t: f64) -> Vec2 {
        if t <= 0.0 {
            return (self.p1 - self.p0).normalized().unwrap_or(Vec2::ZERO);
        }
        if t >= 1.0 {
            return (self.p2 - self.p1).normalized().unwrap_or(Vec2::ZERO);
        }
        self.derivative(t).normalized().unwrap_or(Vec2::ZERO)
    }

    /// Power-basis coefficients of the numerator: `N(t) = c0 + c1 t + c2 t²`.
    fn numer_coeffs(&self) -> (Vec2, Vec2, Vec2) {
        let c0 = self.p0;
        let c1 = (self.p1 * self.w - self.p0) * 2.0;
        let c2 = self.p0 - self.p1 * (2.0 * self.w) + self.p2;
        (c0, c1, c2)
    }

    /// Maximum of `p · d` over the arc and a point attaining it.
    pub fn support(&self, d: Vec2) -> (f64, Vec2) {
        let mut best = (self.p0.dot(d), self.p0);
        let v2 = self.p2.dot(d);
        if v2 > best.0 {
            best = (v2, self.p2);
        }
        // f = d·N = A t² + B t + C, g = a t² + b t + c; stationary where f'g - fg' = 0.
        let (c0, c1, c2) = self.numer_coeffs();
        let (fa, fb, fc) = (c2.dot(d), c1.dot(d), c0.dot(d));
        let (ga, gb, gc) = (2.0 - 2.0 * self.w, 2.0 * self.w - 2.0, 1.0);
        let qa = fa * gb - ga * fb;
        let qb = 2.0 * (fa * gc - ga * fc);
        let qc = fb * gc - fc * gb;
        for t in quadratic_roots(qa, qb, qc) {
            if (0.0..=1.0).contains(&t) {
                let p = self.point(t);
                let v = p.dot(d);
                if v > best.0 {
                    best = (v, p);
                }
            }
        }
        best
    }

    /// Parameter where the ray from the origin through `dir` meets the arc,
    /// assuming `dir` lies in the arc's angular wedge.
    fn ray_parameter(&self, dir: Vec2) -> f64 {
        let (c0, c1, c2) = self.numer_coeffs();
        let (a, b, c) = (dir.cross(c2), dir.cross(c1), dir.cross(c0));
        let f = |t: f64| a * t * t + b * t + c;
        let mut best: Option<f64> = None;
        for t in quadratic_roots(a, b, c) {
            if (-1e-9..=1.0 + 1e-9).contains(&t) && self.point(t.clamp(0.0, 1.0)).dot(dir) > 0.0 {
                let t = t.clamp(0.0, 1.0);
                best = Some(match best {
                    Some(prev) if f(prev).abs() <= f(t).abs() => prev,
                    _ => t,
                });
            }
        }
        let mut t = best.unwrap_or_else(|| {
            // Fall back to bisection on the sign change f(0) <= 0 <= f(1).
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if f(mid) <= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        });
        // One Newton polish step.
        let df = 2.0 * a * t + b;
        if df.abs() > f64::MIN_POSITIVE {
            let tn = t - f(t) / df;
            if (0.0..=1.0).contains(&tn) && f(tn).abs() < f(t).abs() {
                t = tn;
            }
        }
        t
    }

    pub fn linear_image(&self, m: Mat2) -> ConicArc {
        ConicArc::new(m * self.p0, m * self.p1, m * self.p2, self.w)
    }

    pub fn reversed(&self) -> ConicArc {
        ConicArc::new(self.p2, self.p1, self.p0, self.w)
    }

    pub fn negated(&self) -> ConicArc {
        ConicArc::new(-self.p0, -self.p1, -self.p2, self.w)
    }

    /// The piece of the arc between parameters `t0 < t1`, re-expressed in standard form.
    pub fn subarc(&self, t0: f64, t1: f64) -> ConicArc {
        // Blossom of the homogeneous curve.
        let h = [
            (self.p0, 1.0),
            (self.p1 * self.w, self.w),
            (self.p2, 1.0),
        ];
        let blossom = |s: f64, t: f64| -> (Vec2, f64) {
            let b0 = (1.0 - s) * (1.0 - t);
            let b1 = (1.0 - s) * t + s * (1.0 - t);
            let b2 = s * t;
            (
                h[0].0 * b0 + h[1].0 * b1 + h[2].0 * b2,
                h[0].1 * b0 + h[1].1 * b1 + h[2].1 * b2,
            )
        };
        let (q0, w0) = blossom(t0, t0);
        let (q1, w1) = blossom(t0, t1);
        let (q2, w2) = blossom(t1, t1);
        ConicArc::new(q0 / w0, q1 / w1, q2 / w2, w1 / (w0 * w2).sqrt())
    }

    /// Arc length by composite Gauss–Legendre quadrature on `[t0, t1]`.
    pub fn length_between(&self, t0: f64, t1: f64) -> f64 {
        const PANELS: usize = 8;
        let h = (t1 - t0) / PANELS as f64;
        (0..PANELS)
            .map(|k| {
                let a = t0 + k as f64 * h;
                gauss_legendre(|t| self.derivative(t).norm(), a, a + h)
            })
            .sum()
    }

    pub fn length(&self) -> f64 {
        self.length_between(0.0, 1.0)
    }

    /// Signed curvature at `t` estimated from second differences of sampled points.
    pub fn sampled_curvature(&self, t: f64, h: f64) -> f64 {
        let t = t.clamp(h, 1.0 - h);
        // Relative to p0, so short arcs keep their precision.
        let rel = ConicArc::new(Vec2::ZERO, self.p1 - self.p0, self.p2 - self.p0, self.w);
        let (a, b, c) = (rel.point(t - h), rel.point(t), rel.point(t + h));
        let d1 = (c - a) / (2.0 * h);
        let d2 = (c - b * 2.0 + a) / (h * h);
        d1.cross(d2) / d1.norm().powi(3)
    }
}

/// Real roots of `a t² + b t + c`, numerically stable form.
pub(crate) fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() <= 1e-14 * scale {
        if b.abs() <= 1e-14 * scale {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc > -1e-14 * b * b {
            return vec![-b / (2.0 * a)];
        }
        return Vec::new();
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

/// 10-point Gauss–Legendre rule on `[a, b]`.
pub(crate) fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const X: [f64; 5] = [
        0.148_874_338_981_631_2,
        0.433_395_394_129_247_2,
        0.679_409_568_299_024_4,
        0.865_063_366_688_984_5,
        0.973_906_528_517_171_7,
    ];
    const W: [f64; 5] = [
        0.295_524_224_714_752_9,
        0.269_266_719_309_996_4,
        0.219_086_362_515_982_1,
        0.149_451_349_150_580_6,
        0.066_671_344_308_688_1,
    ];
    let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
    X.iter()
        .zip(W.iter())
        .map(|(&x, &w)| w * (f(m - r * x) + f(m + r * x)))
        .sum::<f64>()
        * r
}

/// A closed, counterclockwise chain of conic arcs around the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvedBoundary {
    arcs: Vec<ConicArc>,
}

impl CurvedBoundary {
    /// Validates closure, counterclockwise orientation about an interior origin,
    /// tangent continuity at every junction and per-arc angular span below π.
    pub fn new(arcs: Vec<ConicArc>) -> Result<Self> {
        if arcs.len() < 2 {
            return Err(Error::InvalidBody("curved boundary needs at least two arcs".into()));
        }
        let scale = arcs
            .iter()
            .map(|a| a.p0.norm())
            .fold(0.0_f64, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut total = 0.0;
        for (i, a) in arcs.iter().enumerate() {
            if !(a.w > 0.0 && a.w.is_finite()) {
                return Err(Error::InvalidBody(format!("arc {i} has non-positive weight {}", a.w)));
            }
            if !(a.p0.is_finite() && a.p1.is_finite() && a.p2.is_finite()) {
                return Err(Error::InvalidBody(format!("arc {i} has non-finite control point")));
            }
            let turn = (a.p1 - a.p0).cross(a.p2 - a.p1);
            if turn <= 0.0 {
                return Err(Error::InvalidBody(format!("arc {i} is not convex counterclockwise")));
            }
            let span = a.p0.cross(a.p2).atan2(a.p0.dot(a.p2));
            if span <= 0.0 {
                return Err(Error::InvalidBody(format!(
                    "arc {i} does not advance counterclockwise around the origin"
                )));
            }
            total += span;
            let next = &arcs[(i + 1) % arcs.len()];
            if (a.p2 - next.p0).norm() > 1e-9 * scale {
                return Err(Error::InvalidBody(format!("arcs {i} and {} do not join", (i + 1) % arcs.len())));
            }
            let (t_out, t_in) = (a.tangent(1.0), next.tangent(0.0));
            if t_out.cross(t_in).abs() > 1e-7 || t_out.dot(t_in) <= 0.0 {
                return Err(Error::InvalidBody(format!(
                    "tangent discontinuity between arcs {i} and {}",
                    (i + 1) % arcs.len()
                )));
            }
        }
        if (total - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::InvalidBody("boundary does not wind once around the origin".into()));
        }
        Ok(CurvedBoundary { arcs })
    }

    /// Boundary of the ellipse `M · (unit circle)` as four arcs.
    pub fn ellipse_image(m: Mat2) -> Result<Self> {
        let quarter = |k: usize| ConicArc::circle(1.0, k as f64 * PI / 2.0, (k + 1) as f64 * PI / 2.0);
        let mut arcs: Vec<ConicArc> = (0..4).map(|k| quarter(k).linear_image(m)).collect();
        if m.det() < 0.0 {
            arcs = arcs.iter().rev().map(ConicArc::reversed).collect();
        }
        CurvedBoundary::new(arcs)
    }

    pub fn arcs(&self) -> &[ConicArc] {
        &self.arcs
    }

    pub fn linear_image(&self, m: Mat2) -> Result<CurvedBoundary> {
        if m.det().abs() <= f64::EPSILON {
            return Err(Error::Contract("linear map must be invertible".into()));
        }
        let mut arcs: Vec<ConicArc> = self.arcs.iter().map(|a| a.linear_image(m)).collect();
        if m.det() < 0.0 {
            arcs = arcs.iter().rev().map(ConicArc::reversed).collect();
        }
        CurvedBoundary::new(arcs)
    }

    pub fn point(&self, pos: ArcPos) -> Vec2 {
        self.arcs[pos.arc].point(pos.t)
    }

    pub fn tangent(&self, pos: ArcPos) -> Vec2 {
        self.arcs[pos.arc].tangent(pos.t)
    }

    /// Euclidean outer unit normal.
    pub fn normal(&self, pos: ArcPos) -> Vec2 {
        let t = self.tangent(pos);
        Vec2::new(t.y, -t.x)
    }

    pub fn support(&self, d: Vec2) -> (f64, Vec2) {
        self.arcs
            .iter()
            .map(|a| a.support(d))
            .fold((f64::NEG_INFINITY, Vec2::ZERO), |best, c| if c.0 > best.0 { c } else { best })
    }

    /// Index of the arc whose angular wedge contains direction `dir`.
    fn wedge_of(&self, dir: Vec2) -> usize {
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, a) in self.arcs.iter().enumerate() {
            let s0 = a.p0.cross(dir) / a.p0.norm();
            let s2 = dir.cross(a.p2) / a.p2.norm();
            let m = s0.min(s2);
            if m >= 0.0 {
                return i;
            }
            if m > best.0 {
                best = (m, i);
            }
        }
        best.1
    }

    /// Where the ray from the origin in direction `dir` leaves the body.
    pub fn ray_shoot(&self, dir: Vec2) -> ArcPos {
        let dir = dir.normalized().expect("ray direction must be nonzero");
        let arc = self.wedge_of(dir);
        ArcPos {
            arc,
            t: self.arcs[arc].ray_parameter(dir),
        }
    }

    /// Minkowski gauge of `x`.
    pub fn gauge(&self, x: Vec2) -> f64 {
        let n = x.norm();
        if n == 0.0 {
            return 0.0;
        }
        let p = self.point(self.ray_shoot(x));
        n / p.norm()
    }

    pub fn point_at_angle(&self, theta: f64) -> Vec2 {
        self.point(self.ray_shoot(Vec2::from_angle(theta)))
    }

    pub fn perimeter(&self) -> f64 {
        self.arcs.iter().map(ConicArc::length).sum()
    }

    pub fn is_o_symmetric(&self) -> bool {
        let m = self.arcs.len();
        let scale = self.arcs.iter().map(|a| a.p0.norm()).fold(0.0, f64::max);
        (0..32).all(|k| {
            let theta = 2.0 * PI * (k as f64 + 0.37) / 32.0;
            let p = self.point_at_angle(theta);
            let q = self.point_at_angle(theta + PI);
            (p + q).norm() <= 1e-9 * scale.max(1.0)
        }) && m > 0
    }

    /// Samples `count` points equally spaced in arc length.
    pub fn sample_by_length(&self, count: usize) -> Vec<(Vec2, ArcPos)> {
        let lengths: Vec<f64> = self.arcs.iter().map(ConicArc::length).collect();
        let total: f64 = lengths.iter().sum();
        let mut out = Vec::with_capacity(count);
        let mut arc = 0;
        let mut acc = 0.0;
        for k in 0..count {
            let target = total * k as f64 / count as f64;
            while arc + 1 < self.arcs.len() && acc + lengths[arc] <= target {
                acc += lengths[arc];
                arc += 1;
            }
            let t = self.param_at_length(arc, target - acc);
            let pos = ArcPos { arc, t };
            out.push((self.point(pos), pos));
        }
        out
    }

    /// Parameter on `arc` at arc length `s` from its start.
    fn param_at_length(&self, arc: usize, s: f64) -> f64 {
        let a = &self.arcs[arc];
        let (mut lo, mut hi) = (0.0, 1.0);
        if s <= 0.0 {
            return 0.0;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if a.length_between(0.0, mid) < s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The boundary piece from angle `a0` counterclockwise to `a1` as standard arcs.
    pub fn subcurve(&self, a0: f64, a1: f64) -> Vec<ConicArc> {
        let start = self.ray_shoot(Vec2::from_angle(a0));
        let end = self.ray_shoot(Vec2::from_angle(a1));
        let sweep = (a1 - a0).rem_euclid(2.0 * PI);
        let mut out = Vec::new();
        let mut push = |arc: usize, t0: f64, t1: f64| {
            if t1 - t0 > 1e-14 {
                out.push(self.arcs[arc].subarc(t0, t1));
            }
        };
        if start.arc == end.arc && end.t >= start.t && sweep < PI {
            push(start.arc, start.t, end.t);
            return out;
        }
        let m = self.arcs.len();
        push(start.arc, start.t, 1.0);
        let mut k = (start.arc + 1) % m;
        while k != end.arc {
            push(k, 0.0, 1.0);
            k = (k + 1) % m;
        }
        push(end.arc, 0.0, end.t);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_arc_points_lie_on_circle() {
        let a = ConicArc::circle(2.0, 0.1, 1.3);
        for k in 0..=20 {
            let p = a.point(k as f64 / 20.0);
            assert!((p.norm() - 2.0).abs() < 1e-14);
        }
        assert!((a.length() - 2.0 * 1.2).abs() < 1e-12);
    }

    #[test]
    fn circle_support_matches_radius() {
        let b = CurvedBoundary::ellipse_image(Mat2::diag(1.0, 1.0)).unwrap();
        for k in 0..50 {
            let d = Vec2::from_angle(k as f64 * 0.13);
            let (h, p) = b.support(d);
            assert!((h - 1.0).abs() < 1e-14, "h = {h}");
            assert!((p - d).norm() < 1e-7);
        }
    }

    #[test]
    fn ellipse_image_gauge() {
        let b = CurvedBoundary::ellipse_image(Mat2::diag(2.0, 1.0)).unwrap();
        let x = Vec2::new(0.7, -0.3);
        let expected = ((x.x / 2.0).powi(2) + x.y.powi(2)).sqrt();
        assert!((b.gauge(x) - expected).abs() < 1e-14);
        assert!((b.perimeter() - 9.688_448_220_547_675).abs() < 1e-10);
    }

    #[test]
    fn subarc_reproduces_points() {
        let a = ConicArc::new(Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0), Vec2::new(0.0, 1.0), 0.9);
        let s = a.subarc(0.2, 0.7);
        assert!((s.point(0.0) - a.point(0.2)).norm() < 1e-14);
        assert!((s.point(1.0) - a.point(0.7)).norm() < 1e-14);
        // Every point of the subarc is on the original curve.
        for k in 0..=10 {
            let p = s.point(k as f64 / 10.0);
            let t = a.ray_parameter(p.normalized().unwrap());
            assert!((a.point(t) - p).norm() < 1e-12);
        }
    }

    #[test]
    fn subcurve_wraps_around() {
        let b = CurvedBoundary::ellipse_image(Mat2::diag(1.5, 1.0)).unwrap();
        let pieces = b.subcurve(-0.3, 0.4);
        assert!(pieces.len() == 2);
        assert!((pieces[0].p0 - b.point_at_angle(-0.3)).norm() < 1e-13);
        assert!((pieces.last().unwrap().p2 - b.point_at_angle(0.4)).norm() < 1e-13);
    }

    #[test]
    fn tangent_join_rejects_wrong_side() {
        let p0 = Vec2::new(1.0, 0.0);
        let p2 = Vec2::new(0.0, 1.0);
        assert!(ConicArc::tangent_join(p0, Vec2::new(0.0, 1.0), p2, Vec2::new(-1.0, 0.0), 0.5).is_some());
        assert!(ConicArc::tangent_join(p0, Vec2::new(0.0, -1.0), p2, Vec2::new(-1.0, 0.0), 0.5).is_none());
    }
}
