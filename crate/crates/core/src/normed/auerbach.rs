use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::body::ConvexBody;
use crate::geom::vec2::{solve_rows, Vec2};
use crate::par;

/// Grid size over `θ ∈ [0, π)` for smooth bodies before local refinement.
pub const AUERBACH_GRID: usize = 2048;

/// Relative tolerance under which two parallelogram areas count as tied.
const AREA_TIE: f64 = 1e-9;

/// Unit vectors `e1, e2` of `‖·‖_{K_o}`, each Birkhoff orthogonal to the other,
/// oriented so that `det(e1, e2) > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuerbachBasis {
    pub e1: Vec2,
    pub e2: Vec2,
}

/// One circumscribing parallelogram: supporting lines with normals `n1`, `n2`
/// touching at the side midpoints `x`, `y`.
#[derive(Clone, Copy, Debug)]
struct Candidate {
    area: f64,
    x: Vec2,
    y: Vec2,
}

/// For a smooth body: the parallelogram whose first side has outer normal at angle `theta`
/// and whose second pair of sides is parallel to the first touching point.
fn smooth_candidate(body: &ConvexBody, theta: f64) -> Candidate {
    let n1 = Vec2::from_angle(theta);
    let (h1, x) = body.support_pair(n1);
    let n2 = x.perp().normalized().expect("touching point is nonzero");
    let (h2, y) = body.support_pair(n2);
    Candidate {
        area: 4.0 * h1 * h2 / n1.cross(n2).abs(),
        x,
        y,
    }
}

/// Area of the circumscribing parallelogram family member at `theta` (smooth bodies).
pub fn auerbach_area(body: &ConvexBody, theta: f64) -> f64 {
    smooth_candidate(body, theta).area
}

/// Basis from a minimum-area circumscribing parallelogram, whose side midpoints
/// are `±e1, ±e2`.
///
/// Polygons: every pair of edge directions is tried. Smooth bodies: the area is
/// sampled on [`AUERBACH_GRID`] angles and the run of tied grid minima containing the
/// smallest such angle is found. A wide run is a flat minimum and yields its middle;
/// otherwise the minimum is refined by golden-section search and polished on the
/// orthogonality residual `n1 · y`. A fully flat area function yields `θ = 0`.
pub fn auerbach_basis(body: &ConvexBody) -> Result<AuerbachBasis> {
    if !body.is_o_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let c = match body {
        ConvexBody::Polygon(p) => {
            let normals: Vec<Vec2> = p.edge_normals().collect();
            let h: Vec<f64> = normals.iter().map(|&n| body.support_value(n)).collect();
            let mut best: Option<(Candidate, f64)> = None;
            for i in 0..normals.len() {
                for j in i + 1..normals.len() {
                    let det = normals[i].cross(normals[j]);
                    if det.abs() <= 1e-12 {
                        continue;
                    }
                    let x = solve_rows(normals[i], normals[j], h[i], 0.0).expect("independent");
                    let y = solve_rows(normals[i], normals[j], 0.0, h[j]).expect("independent");
                    let cand = Candidate {
                        area: 4.0 * h[i] * h[j] / det.abs(),
                        x,
                        y,
                    };
                    let key = canonical(cand.x, cand.y).e1.angle() % PI;
                    let better = match &best {
                        None => true,
                        Some((b, bkey)) => {
                            cand.area < b.area * (1.0 - AREA_TIE)
                                || (cand.area <= b.area * (1.0 + AREA_TIE) && key < *bkey - 1e-12)
                        }
                    };
                    if better {
                        best = Some((cand, key));
                    }
                }
            }
            best.ok_or_else(|| Error::Degenerate("polygon has no independent edge pair".into()))?.0
        }
        _ => smooth_minimum(body),
    };
    Ok(canonical(c.x, c.y))
}

fn canonical(x: Vec2, y: Vec2) -> AuerbachBasis {
    let e1 = if x.angle() >= PI { -x } else { x };
    let e2 = if e1.cross(y) < 0.0 { -y } else { y };
    AuerbachBasis { e1, e2 }
}

fn smooth_minimum(body: &ConvexBody) -> Candidate {
    let step = PI / AUERBACH_GRID as f64;
    let areas = par::map_range(AUERBACH_GRID, |k| smooth_candidate(body, k as f64 * step).area);
    let min = areas.iter().copied().fold(f64::INFINITY, f64::min);
    let n = AUERBACH_GRID as isize;
    let tied = |i: isize| areas[i.rem_euclid(n) as usize] <= min * (1.0 + AREA_TIE);
    let k = (0..n).find(|&i| tied(i)).expect("grid is nonempty");
    if (0..n).all(tied) {
        return smooth_candidate(body, 0.0);
    }
    // Ties form a run of grid angles around the first minimum. A run wider than one
    // step is a flat minimum, whose ends may already sit just outside the flat part,
    // so its middle is taken.
    let (mut lo, mut hi) = (k, k);
    while tied(lo - 1) {
        lo -= 1;
    }
    while tied(hi + 1) {
        hi += 1;
    }
    let mid = (lo + hi).div_euclid(2);
    let theta_grid = mid as f64 * step;
    if hi - lo >= 2 {
        return smooth_candidate(body, theta_grid);
    }

    // Golden-section search on [θ - step, θ + step].
    let f = |t: f64| smooth_candidate(body, t).area;
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (theta_grid - step, theta_grid + step);
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-12 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let mut theta = 0.5 * (a + b);

    // The area is flat to second order near its minimum, so golden section alone
    // leaves θ accurate only to about the square root of machine precision.
    // Polish on the orthogonality residual, which changes sign there.
    let residual = |t: f64| {
        let cand = smooth_candidate(body, t);
        Vec2::from_angle(t).dot(cand.y) / cand.y.norm()
    };
    let (mut lo, mut hi) = (theta - step, theta + step);
    let (mut rlo, rhi) = (residual(lo), residual(hi));
    if rlo * rhi < 0.0 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let rm = residual(mid);
            if rm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if (rm < 0.0) == (rlo < 0.0) {
                lo = mid;
                rlo = rm;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 {
                break;
            }
        }
        let polished = 0.5 * (lo + hi);
        if f(polished) <= f(theta) * (1.0 + 1e-12) {
            theta = polished;
        }
    }
    smooth_candidate(body, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adomain::{construct_adomain, neutral_bulge};
    use crate::geom::vec2::Mat2;
    use crate::normed::birkhoff_orthogonal;

    fn close(a: Vec2, b: Vec2, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn disk_ellipse_square() {
        let b = auerbach_basis(&ConvexBody::disk(1.0).unwrap()).unwrap();
        assert!(close(b.e1, Vec2::new(1.0, 0.0), 1e-12) && close(b.e2, Vec2::new(0.0, 1.0), 1e-12));
        let b = auerbach_basis(&ConvexBody::ellipse(2.0, 1.0).unwrap()).unwrap();
        assert!(close(b.e1, Vec2::new(2.0, 0.0), 1e-12) && close(b.e2, Vec2::new(0.0, 1.0), 1e-12));
        let b = auerbach_basis(&ConvexBody::square(1.0).unwrap()).unwrap();
        assert!(close(b.e1, Vec2::new(1.0, 0.0), 1e-12) && close(b.e2, Vec2::new(0.0, 1.0), 1e-12));
    }

    #[test]
    fn ellipse_grid_oracle() {
        // Oracle: direct scan of the area over a fine grid of rotation angles.
        let e = ConvexBody::ellipse(2.0, 1.0).unwrap();
        let min = (0..20_000)
            .map(|k| auerbach_area(&e, PI * k as f64 / 20_000.0))
            .fold(f64::INFINITY, f64::min);
        assert!((min - 8.0).abs() < 1e-9);
    }

    #[test]
    fn rotated_ellipse_is_mutually_orthogonal() {
        let body = ConvexBody::ellipse(1.7, 1.0)
            .unwrap()
            .linear_image(Mat2::rotation(0.37))
            .unwrap();
        let b = auerbach_basis(&body).unwrap();
        assert!((body.gauge(b.e1).unwrap() - 1.0).abs() < 1e-12);
        assert!((body.gauge(b.e2).unwrap() - 1.0).abs() < 1e-12);
        assert!(birkhoff_orthogonal(&body, b.e1, b.e2).unwrap());
        assert!(birkhoff_orthogonal(&body, b.e2, b.e1).unwrap());
        assert!(b.e1.cross(b.e2) > 0.0);
    }

    #[test]
    fn adomain_basis_lies_in_pieces() {
        let a = construct_adomain(1.0, PI / 12.0, neutral_bulge(PI / 12.0)).unwrap();
        let b = auerbach_basis(&ConvexBody::ADomain(a.clone())).unwrap();
        assert!(a.piece_of(b.e1.angle()).is_some());
        assert!(a.piece_of(b.e2.angle()).is_some());
    }

    #[test]
    fn flat_minimum_avoids_piece_ends() {
        // Strong bulge and a skew frame: the first tied grid angle sits at a piece end.
        let a = construct_adomain(1.0, 0.26776111033497296, 8.095849191917564).unwrap();
        let a = a.with_frame(Mat2::rotation(0.5921669980847499) * Mat2::diag(1.3702737475091422, 1.0)).unwrap();
        let k = ConvexBody::ADomain(a.clone());
        let b = auerbach_basis(&k).unwrap();
        let inv = a.frame().inverse().unwrap();
        for e in [b.e1, b.e2] {
            let theta = (inv * e).angle();
            let p = a.pieces()[a.piece_of(theta).expect("inside a piece")];
            let rel = (theta - p[0]).rem_euclid(2.0 * PI);
            assert!(rel > 1e-3 && rel < p[1] - p[0] - 1e-3, "{rel} at the end of {p:?}");
        }
        assert!(k.outer_normal(b.e1).unwrap().dot(b.e2).abs() < 1e-12);
        assert!(k.outer_normal(b.e2).unwrap().dot(b.e1).abs() < 1e-12);
    }

    #[test]
    fn hexagon_polygon() {
        let h = ConvexBody::regular_hexagon();
        let b = auerbach_basis(&h).unwrap();
        assert!(birkhoff_orthogonal(&h, b.e1, b.e2).unwrap());
        assert!(birkhoff_orthogonal(&h, b.e2, b.e1).unwrap());
        assert!((h.gauge(b.e1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_asymmetric() {
        let t = ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap();
        assert!(matches!(auerbach_basis(&t), Err(Error::NotSymmetric)));
    }
}
