//! Translative packings, their contact graphs, and certificates of total separability.

mod certify;
mod minkowski;

use crate::error::{Error, Result};
use crate::geom::body::{symmetrize, ConvexBody};
use crate::geom::vec2::Vec2;
use crate::graph::Graph;
use crate::par;

pub use certify::{
    certify_total_separability, certify_with_directions, contact_normals, verify_certificate,
    Certification, PairSeparator, SeparationCertificate, CERT_GRID,
};
pub use minkowski::{random_packing_centers, sat_contact_graph, verify_minkowski_equivalence, MinkowskiReport};

/// Two translates touch when their gauge distance is within this of 2.
pub const TOUCH_TOL: f64 = 1e-7;

pub type ContactGraph = Graph;

/// Non-overlapping translates `K + c_i` of one body.
#[derive(Clone, Debug, PartialEq)]
pub struct Packing {
    body: ConvexBody,
    sym: ConvexBody,
    centers: Vec<Vec2>,
}

impl Packing {
    /// Validates non-overlap: every pairwise distance in the norm of the
    /// symmetrized body is at least `2 - TOUCH_TOL`.
    pub fn new(body: ConvexBody, centers: Vec<Vec2>) -> Result<Self> {
        if centers.is_empty() {
            return Err(Error::Contract("a packing needs at least one translate".into()));
        }
        if let Some(c) = centers.iter().find(|c| !c.is_finite()) {
            return Err(Error::Contract(format!("non-finite center {c}")));
        }
        let sym = symmetrize(&body)?;
        let p = Packing { body, sym, centers };
        p.distances()?;
        Ok(p)
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    /// `½(K + (−K))`, whose norm measures center distances.
    pub fn symmetrized(&self) -> &ConvexBody {
        &self.sym
    }

    pub fn centers(&self) -> &[Vec2] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Gauge distances of all pairs that could touch, as `(i, j, d)` with `i < j`.
    ///
    /// Pairs farther apart than twice the body's circumradius are skipped.
    fn distances(&self) -> Result<Vec<(usize, usize, f64)>> {
        let reach = (2.0 + 2.0 * TOUCH_TOL) * self.sym.radius();
        let n = self.centers.len();
        let rows = par::map_range(n, |i| {
            let mut row = Vec::new();
            for j in i + 1..n {
                let d = self.centers[j] - self.centers[i];
                if d.norm() > reach {
                    continue;
                }
                let g = self.sym.gauge_unchecked(d);
                if g < 2.0 - TOUCH_TOL {
                    return Err(Error::Overlap { i, j, distance: g });
                }
                row.push((i, j, g));
            }
            Ok(row)
        });
        let mut out = Vec::new();
        for r in rows {
            out.extend(r?);
        }
        Ok(out)
    }
}

/// Pairs at gauge distance `2 ± TOUCH_TOL` in the symmetrized body's norm.
pub fn contact_graph(p: &Packing) -> Result<ContactGraph> {
    let d = p.distances()?;
    Ok(Graph::new(
        p.len(),
        d.into_iter()
            .filter(|&(_, _, g)| (g - 2.0).abs() <= TOUCH_TOL)
            .map(|(i, j, _)| (i, j)),
    ))
}
