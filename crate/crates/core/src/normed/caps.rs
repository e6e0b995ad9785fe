use std::f64::consts::PI;

use super::clique::{max_clique, BitSet};
use super::{auerbach_basis, BoundaryPoint};
use crate::error::{Error, Result};
use crate::geom::body::ConvexBody;
use crate::geom::vec2::{Vec2, TAU};
use crate::packing::Packing;
use crate::par;

/// Clique search stops once a separable set of this size is found.
pub const CLIQUE_CUTOFF: usize = 6;

fn require_smooth(body: &ConvexBody) -> Result<()> {
    if body.is_smooth() {
        Ok(())
    } else {
        Err(Error::NotSmooth)
    }
}

/// Whether boundary point `q` lies in the cap `C(p)`: strictly on the side of the
/// plank through `p` and the origin, so points of the parallel line through the origin are excluded.
pub fn cap_contains(body: &ConvexBody, p: &BoundaryPoint, q: Vec2) -> Result<bool> {
    require_smooth(body)?;
    let g = body.gauge(q)?;
    if (g - 1.0).abs() > TAU {
        return Err(Error::Contract(format!("{q} is not on the boundary (gauge {g})")));
    }
    Ok(p.outer_normal.dot(q) > TAU)
}

/// No point of the set lies in the cap of another.
pub fn is_separable_point_set(body: &ConvexBody, set: &[BoundaryPoint]) -> Result<bool> {
    require_smooth(body)?;
    Ok(set.iter().enumerate().all(|(i, x)| {
        set.iter()
            .enumerate()
            .all(|(j, y)| i == j || x.outer_normal.dot(y.point) <= TAU)
    }))
}

fn candidates(body: &ConvexBody, samples: usize) -> Vec<Vec2> {
    match body {
        ConvexBody::Disk { .. } | ConvexBody::Ellipse { .. } => (0..samples)
            .map(|k| body.boundary_point(2.0 * PI * k as f64 / samples as f64))
            .collect(),
        _ => body
            .conic_boundary()
            .expect("smooth body")
            .sample_by_length(samples)
            .into_iter()
            .map(|(p, _)| p)
            .collect(),
    }
}

/// A largest separable point set among `samples` boundary samples together with
/// `±e1, ±e2` of the Auerbach basis.
///
/// Disks and ellipses are sampled at equal polar angles, other smooth bodies at
/// equal arc length. The search starts from the Auerbach quadruple and only
/// replaces it with a strictly larger set (up to [`CLIQUE_CUTOFF`]).
pub fn max_separable_point_set(body: &ConvexBody, samples: usize) -> Result<Vec<BoundaryPoint>> {
    require_smooth(body)?;
    if samples < 8 {
        return Err(Error::Contract(format!("need at least 8 samples, got {samples}")));
    }
    let basis = auerbach_basis(body)?;
    let mut pts = candidates(body, samples);
    let seed_start = pts.len();
    pts.extend([basis.e1, basis.e2, -basis.e1, -basis.e2]);
    let set: Vec<BoundaryPoint> = pts
        .iter()
        .map(|&p| BoundaryPoint {
            point: p,
            outer_normal: body.outer_normal(p).expect("smooth boundary point"),
        })
        .collect();

    let n = set.len();
    let adj = par::map_range(n, |i| {
        let mut row = BitSet::new(n);
        for j in 0..n {
            if i != j
                && set[i].outer_normal.dot(set[j].point) <= TAU
                && set[j].outer_normal.dot(set[i].point) <= TAU
            {
                row.insert(j);
            }
        }
        row
    });
    let seed: Vec<usize> = (seed_start..n).collect();
    let seed_ok = seed
        .iter()
        .all(|&a| seed.iter().all(|&b| a == b || adj[a].contains(b)));
    let clique = max_clique(&adj, if seed_ok { seed } else { Vec::new() }, CLIQUE_CUTOFF);
    let mut out: Vec<BoundaryPoint> = clique.into_iter().map(|i| set[i]).collect();
    out.sort_by(|a, b| a.point.angle().total_cmp(&b.point.angle()));
    Ok(out)
}

/// The packing `{K_o} ∪ {2p + K_o : p ∈ S}` for a separable point set `S`.
pub fn hadwiger_witness_packing(body: &ConvexBody, set: &[BoundaryPoint]) -> Result<Packing> {
    if !is_separable_point_set(body, set)? {
        return Err(Error::NotSeparable("some point lies in another point's cap".into()));
    }
    let mut centers = vec![Vec2::ZERO];
    centers.extend(set.iter().map(|p| p.point * 2.0));
    Packing::new(body.clone(), centers)
}
