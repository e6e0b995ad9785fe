use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use serde::Serialize;

use super::ADomain;
use crate::error::{Error, Result};
use crate::geom::body::{hausdorff_distance, ConvexBody};
use crate::geom::conic::{ConicArc, CurvedBoundary};
use crate::geom::vec2::{Mat2, Vec2};
use crate::normed::auerbach_basis;

/// Smallest piece half-width tried before giving up.
const MIN_HALFWIDTH: f64 = 1e-7;
/// Candidate connector end angles scanned per connector.
const SCAN_STEPS: usize = 4096;
/// Gauge tolerance for counting a boundary point as shared with the target body.
const OVERLAP_TOL: f64 = 1e-9;

/// An A-domain image `T(A)` close to a given body, with its measured quality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Approximation {
    #[serde(skip)]
    pub adomain: ADomain,
    /// Maps the canonical A-domain (pieces on the unit circle) onto the approximation.
    pub map: Mat2,
    pub piece_halfwidth: f64,
    pub hausdorff: f64,
    /// Length of the approximation's boundary lying on the target boundary, over the target perimeter.
    pub overlap_fraction: f64,
}

/// Approximates a smooth, strictly convex, o-symmetric body by an affine image of an A-domain.
///
/// In the frame where the body's minimal circumscribing parallelogram is the square
/// `[-1, 1]²`, the boundary near `±(1, 0)` and `±(0, 1)` is replaced by arcs of the
/// unit circle joined to the body by tangent conic connectors. The piece half-width
/// starts at π/8 and is halved until the Hausdorff distance is at most `eps` and the
/// shared boundary covers at least `delta` of the perimeter.
pub fn approximate_by_adomain(k: &ConvexBody, eps: f64, delta: f64) -> Result<Approximation> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Contract(format!("eps must be positive, got {eps}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Contract(format!("delta must lie in (0, 1), got {delta}")));
    }
    if !k.is_smooth() {
        return Err(Error::NotSmooth);
    }
    if !k.is_o_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let basis = auerbach_basis(k)?;
    let t = Mat2::from_cols(basis.e1, basis.e2);
    let t_inv = t
        .inverse()
        .ok_or_else(|| Error::Degenerate("Auerbach basis is singular".into()))?;
    let target = k.conic_boundary().expect("smooth body").linear_image(t_inv)?;
    let perimeter = k.perimeter();

    let mut psi = FRAC_PI_8;
    let mut best: Option<(f64, f64)> = None;
    while psi >= MIN_HALFWIDTH {
        if let Some(adomain) = build(&target, psi, t) {
            let hausdorff = hausdorff_distance(&ConvexBody::ADomain(adomain.clone()), k);
            let overlap_fraction = shared_length(adomain.world(), k) / perimeter;
            if hausdorff <= eps && overlap_fraction >= delta {
                return Ok(Approximation {
                    adomain,
                    map: t,
                    piece_halfwidth: psi,
                    hausdorff,
                    overlap_fraction,
                });
            }
            best = Some((hausdorff, overlap_fraction));
        }
        psi *= 0.5;
    }
    Err(Error::Infeasible(match best {
        Some((h, o)) => format!(
            "closest attempt had Hausdorff distance {h:.3e} and overlap {o:.4} (targets {eps:.3e}, {delta})"
        ),
        None => "no tangent connector could be placed".into(),
    }))
}

/// Canonical A-domain with pieces `[-ψ, ψ] + jπ/2` on the unit circle, following
/// `target` between them.
fn build(target: &CurvedBoundary, psi: f64, frame: Mat2) -> Option<ADomain> {
    let circle_pt = |a: f64| (Vec2::from_angle(a), Vec2::from_angle(a).perp());
    let target_pt = |a: f64| {
        let pos = target.ray_shoot(Vec2::from_angle(a));
        (target.point(pos), target.tangent(pos))
    };
    let join = |(p0, t0): (Vec2, Vec2), (p2, t2): (Vec2, Vec2)| -> Option<ConicArc> {
        let turn = t0.cross(t2).atan2(t0.dot(t2));
        if !(turn > 0.0 && turn < FRAC_PI_2) {
            return None;
        }
        ConicArc::tangent_join(p0, t0, p2, t2, (0.5 * turn).cos())
    };

    let mut half = Vec::new();
    for q in 0..2 {
        let base = q as f64 * FRAC_PI_2;
        let (lo, hi) = (base + psi, base + FRAC_PI_2 - psi);
        let mid = base + FRAC_PI_4;
        let rise = (1..=SCAN_STEPS).find_map(|s| {
            let a = lo + (mid - lo) * s as f64 / SCAN_STEPS as f64;
            join(circle_pt(lo), target_pt(a)).map(|c| (a, c))
        })?;
        let fall = (1..=SCAN_STEPS).find_map(|s| {
            let a = hi - (hi - mid) * s as f64 / SCAN_STEPS as f64;
            join(target_pt(a), circle_pt(hi)).map(|c| (a, c))
        })?;
        if rise.0 >= fall.0 {
            return None;
        }
        half.push(ConicArc::circle(1.0, base - psi, base + psi));
        half.push(rise.1);
        half.extend(target.subcurve(rise.0, fall.0));
        half.push(fall.1);
    }
    let mut arcs = half.clone();
    arcs.extend(half.iter().map(ConicArc::negated));
    let pieces = std::array::from_fn(|j| {
        let c = j as f64 * FRAC_PI_2;
        [c - psi, c + psi]
    });
    ADomain::from_parts(1.0, pieces, arcs, frame).ok()
}

/// Length of `boundary` lying on the boundary of `k`, by subdividing each arc.
fn shared_length(boundary: &CurvedBoundary, k: &ConvexBody) -> f64 {
    const SUB: usize = 64;
    let on = |p: Vec2| (k.gauge_unchecked(p) - 1.0).abs() <= OVERLAP_TOL;
    boundary
        .arcs()
        .iter()
        .map(|arc| {
            (0..SUB)
                .map(|s| {
                    let (t0, t1) = (s as f64 / SUB as f64, (s + 1) as f64 / SUB as f64);
                    let shared = [t0, 0.5 * (t0 + t1), t1].iter().all(|&t| on(arc.point(t)));
                    if shared {
                        arc.length_between(t0, t1)
                    } else {
                        0.0
                    }
                })
                .sum::<f64>()
        })
        .sum()
}
