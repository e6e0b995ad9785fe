use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ADomain;
use crate::geom::vec2::Vec2;
use crate::par;

const TWO_PI: f64 = 2.0 * PI;

/// Polygonal resolution used to compare the norm lengths of the two arcs between two points.
pub const ARC_LENGTH_SAMPLES: usize = 512;

/// Boundary interval swept counterclockwise by the ray from the origin, starting at
/// polar angle `start` (world coordinates) and turning by `sweep ∈ [0, 2π]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryArc {
    pub start: f64,
    pub sweep: f64,
}

impl BoundaryArc {
    pub fn new(start: f64, sweep: f64) -> Self {
        BoundaryArc { start, sweep }
    }

    /// Counterclockwise arc from the ray through `from` to the ray through `to`.
    pub fn between(from: Vec2, to: Vec2) -> Self {
        let a0 = from.angle();
        BoundaryArc::new(a0, (to.angle() - a0).rem_euclid(TWO_PI))
    }

    pub fn full() -> Self {
        BoundaryArc::new(0.0, TWO_PI)
    }

    /// The reflected arc `−X`.
    pub fn negated(&self) -> Self {
        BoundaryArc::new(self.start + PI, self.sweep)
    }

    pub fn end(&self) -> f64 {
        self.start + self.sweep
    }
}

/// Length of `[a, a + s] ∩ [p, p + w]` on the circle of angles.
fn circular_overlap(a: f64, s: f64, p: f64, w: f64) -> f64 {
    let p = a + (p - a).rem_euclid(TWO_PI);
    let seg = |lo: f64, hi: f64| (hi.min(a + s) - lo.max(a)).max(0.0);
    seg(p, p + w) + seg(p - TWO_PI, p - TWO_PI + w)
}

/// Angle measure of a boundary arc: the angular length of its intersection with
/// the circular pieces, normalized so that the pieces together measure 2π.
pub fn b_measure(a: &ADomain, arc: BoundaryArc) -> f64 {
    if arc.sweep <= 0.0 {
        return 0.0;
    }
    if arc.sweep >= TWO_PI {
        return TWO_PI;
    }
    let c0 = a.canonical_angle(Vec2::from_angle(arc.start));
    let c1 = a.canonical_angle(Vec2::from_angle(arc.end()));
    let (lo, hi) = if a.frame().det() > 0.0 { (c0, c1) } else { (c1, c0) };
    let sweep = (hi - lo).rem_euclid(TWO_PI);
    let width = a.pieces[0][1] - a.pieces[0][0];
    let covered: f64 = a
        .pieces
        .iter()
        .map(|p| circular_overlap(lo, sweep, p[0], width))
        .sum();
    TWO_PI * covered / (4.0 * width)
}

/// World-frame arc over canonical angles `[c0, c1]`.
fn world_arc(a: &ADomain, c0: f64, c1: f64) -> BoundaryArc {
    let f = a.frame();
    let (w0, w1) = (f * Vec2::from_angle(c0), f * Vec2::from_angle(c1));
    if f.det() > 0.0 {
        BoundaryArc::between(w0, w1)
    } else {
        BoundaryArc::between(w1, w0)
    }
}

/// Length of the boundary arc in the norm of the domain, by polygonal approximation.
fn norm_length(a: &ADomain, arc: BoundaryArc) -> f64 {
    let world = a.world();
    let pts: Vec<Vec2> = (0..=ARC_LENGTH_SAMPLES)
        .map(|k| world.point_at_angle(arc.start + arc.sweep * k as f64 / ARC_LENGTH_SAMPLES as f64))
        .collect();
    pts.windows(2).map(|w| world.gauge(w[1] - w[0])).sum()
}

/// The arc `[x, y]` of smaller norm length between two boundary points; ties go counterclockwise.
pub fn smaller_arc(a: &ADomain, x: Vec2, y: Vec2) -> BoundaryArc {
    let ccw = BoundaryArc::between(x, y);
    let cw = BoundaryArc::between(y, x);
    let (lc, lw) = (norm_length(a, ccw), norm_length(a, cw));
    if lw < lc - 1e-9 * (lc + lw) {
        cw
    } else {
        ccw
    }
}

/// Measures of the whole boundary, each piece, and the union of the connectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleMeasureReport {
    pub total: f64,
    pub per_piece: [f64; 4],
    pub complement: f64,
}

impl AngleMeasureReport {
    pub fn new(a: &ADomain) -> Self {
        let per_piece = a.pieces.map(|p| b_measure(a, world_arc(a, p[0], p[1])));
        let complement = (0..4)
            .map(|k| {
                let next = a.pieces[(k + 1) % 4][0] + if k == 3 { TWO_PI } else { 0.0 };
                b_measure(a, world_arc(a, a.pieces[k][1], next))
            })
            .sum();
        AngleMeasureReport {
            total: b_measure(a, BoundaryArc::full()),
            per_piece,
            complement,
        }
    }

    pub fn max_deviation(&self) -> f64 {
        let piece = self
            .per_piece
            .iter()
            .map(|m| (m - FRAC_PI_2).abs())
            .fold(0.0, f64::max);
        piece.max((self.total - TWO_PI).abs()).max(self.complement.abs())
    }
}

/// Outcome of checking the B-measure axioms on sampled boundary points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BMeasureReport {
    pub trials: usize,
    pub measures: AngleMeasureReport,
    /// Largest `|m([x, y]) − π/2|` over the orthogonal pairs tested.
    pub max_orthogonal_deviation: f64,
    /// Largest `|m(X) − m(−X)|` over the random arcs tested.
    pub max_symmetry_deviation: f64,
    /// Largest measure assigned to a single point.
    pub max_point_measure: f64,
    /// World points `x` whose orthogonal arc missed π/2 by more than the tolerance.
    pub failures: Vec<Vec2>,
    pub tolerance: f64,
}

impl BMeasureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.measures.max_deviation() <= self.tolerance
            && self.max_symmetry_deviation <= self.tolerance
            && self.max_point_measure <= self.tolerance
    }
}

/// Samples boundary points `x`, pairs each with both Birkhoff-orthogonal partners
/// `±y` (boundary points in the tangent direction at `x`) and checks that the
/// smaller arc `[x, y]` has measure π/2 within `tolerance`.
///
/// The first eight samples are the piece endpoints; the rest are uniform in polar angle.
pub fn verify_b_measure(a: &ADomain, trials: usize, seed: u64, tolerance: f64) -> BMeasureReport {
    let world = a.world();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<Vec2> = Vec::with_capacity(trials);
    for p in &a.pieces {
        for &c in p {
            if xs.len() < trials {
                xs.push(world.point(world.ray_shoot(a.frame() * Vec2::from_angle(c))));
            }
        }
    }
    while xs.len() < trials {
        xs.push(world.point_at_angle(rng.gen_range(0.0..TWO_PI)));
    }
    let arcs: Vec<BoundaryArc> = (0..trials)
        .map(|_| BoundaryArc::new(rng.gen_range(0.0..TWO_PI), rng.gen_range(0.0..TWO_PI)))
        .collect();

    let deviations = par::map(&xs, |&x| {
        let t = world.tangent(world.ray_shoot(x));
        let y = world.point(world.ray_shoot(t));
        [y, -y]
            .iter()
            .map(|&y| (b_measure(a, smaller_arc(a, x, y)) - FRAC_PI_2).abs())
            .fold(0.0, f64::max)
    });
    let failures = xs
        .iter()
        .zip(&deviations)
        .filter(|(_, &d)| d.is_nan() || d > tolerance)
        .map(|(&x, _)| x)
        .collect();
    let max_symmetry_deviation = arcs
        .iter()
        .map(|&arc| (b_measure(a, arc) - b_measure(a, arc.negated())).abs())
        .fold(0.0, f64::max);
    let max_point_measure = xs
        .iter()
        .map(|x| b_measure(a, BoundaryArc::new(x.angle(), 0.0)))
        .fold(0.0, f64::max);

    BMeasureReport {
        trials,
        measures: AngleMeasureReport::new(a),
        max_orthogonal_deviation: deviations.iter().copied().fold(0.0, f64::max),
        max_symmetry_deviation,
        max_point_measure,
        failures,
        tolerance,
    }
}

/// Sum of the interior angles of a simple polygon under the translation-invariant
/// extension of the measure: the angle at `v` is the measure of the boundary arc
/// swept counterclockwise from the outgoing edge direction to the reversed incoming one.
pub fn polygon_angle_sum(a: &ADomain, vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    let signed_area: f64 = (0..n)
        .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
        .sum();
    let ordered: Vec<Vec2> = if signed_area < 0.0 {
        vertices.iter().rev().copied().collect()
    } else {
        vertices.to_vec()
    };
    (0..n)
        .map(|i| {
            let v = ordered[i];
            let out = ordered[(i + 1) % n] - v;
            let back = ordered[(i + n - 1) % n] - v;
            b_measure(a, BoundaryArc::between(out, back))
        })
        .sum()
}
