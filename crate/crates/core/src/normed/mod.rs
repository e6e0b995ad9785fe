//! Normed-plane notions for an o-symmetric body `K_o` taken as unit ball:
//! Birkhoff orthogonality, Auerbach bases, caps and separable point sets.

mod auerbach;
mod caps;
mod clique;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::body::ConvexBody;
use crate::geom::vec2::{Vec2, TAU};

pub use auerbach::{auerbach_basis, auerbach_area, AuerbachBasis, AUERBACH_GRID};
pub use caps::{
    cap_contains, hadwiger_witness_packing, is_separable_point_set, max_separable_point_set,
    CLIQUE_CUTOFF,
};

/// A point of `bd K_o` with its Euclidean outer unit normal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub point: Vec2,
    pub outer_normal: Vec2,
}

impl BoundaryPoint {
    /// Validates that `point` lies on the boundary and attaches the normal.
    ///
    /// Polygon vertices are rejected since their supporting line is not unique.
    pub fn new(body: &ConvexBody, point: Vec2) -> Result<Self> {
        let g = body.gauge(point)?;
        if (g - 1.0).abs() > TAU {
            return Err(Error::Contract(format!(
                "{point} is not on the boundary (gauge {g})"
            )));
        }
        Ok(BoundaryPoint {
            point,
            outer_normal: body.outer_normal(point)?,
        })
    }

    /// Boundary point on the ray through `dir`.
    pub fn in_direction(body: &ConvexBody, dir: Vec2) -> Result<Self> {
        if dir.norm() == 0.0 {
            return Err(Error::Contract("direction must be nonzero".into()));
        }
        let p = dir / body.gauge(dir)?;
        Ok(BoundaryPoint {
            point: p,
            outer_normal: body.outer_normal(p)?,
        })
    }
}

/// Birkhoff orthogonality `x ⊣ y`: some supporting line of `K_o` at `x/‖x‖` is parallel to `y`.
pub fn birkhoff_orthogonal(body: &ConvexBody, x: Vec2, y: Vec2) -> Result<bool> {
    if x.norm() == 0.0 || y.norm() == 0.0 {
        return Err(Error::Contract("Birkhoff orthogonality needs nonzero vectors".into()));
    }
    let xh = x / body.gauge(x)?;
    match body {
        ConvexBody::Polygon(p) => {
            let yn = y.normalized().expect("nonzero");
            let sides = p.vertices().iter().map(|&v| yn.cross(v - xh));
            let (lo, hi) = sides.fold((0.0_f64, 0.0_f64), |(lo, hi), s| (lo.min(s), hi.max(s)));
            Ok(lo >= -TAU || hi <= TAU)
        }
        _ => {
            let n = body.outer_normal(xh)?;
            Ok(n.dot(y).abs() <= TAU * y.norm())
        }
    }
}
