use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{contact_graph, ContactGraph, Packing, TOUCH_TOL};
use crate::error::{Error, Result};
use crate::geom::body::ConvexBody;
use crate::geom::vec2::{Vec2, TAU};
use crate::par;

/// Uniformly spaced candidate directions over `[0, π)` tried after hints and contact normals.
pub const CERT_GRID: usize = 4096;

/// Grid directions evaluated per parallel batch.
const BATCH: usize = 256;

/// The line `{u : dir · u = offset}` separating translate `i` (on the `≤` side)
/// from translate `j`, avoiding every member's interior.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSeparator {
    pub i: usize,
    pub j: usize,
    pub dir: Vec2,
    pub offset: f64,
}

/// One separating line per unordered pair of translates.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub pairs: Vec<PairSeparator>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certification {
    Certified(SeparationCertificate),
    /// No candidate direction separated this pair. This is "unknown", not a proof of inseparability.
    NotCertified { i: usize, j: usize },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified(_))
    }

    pub fn certificate(&self) -> Option<&SeparationCertificate> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::NotCertified { .. } => None,
        }
    }

    pub fn into_certificate(self) -> Option<SeparationCertificate> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::NotCertified { .. } => None,
        }
    }
}

/// Outer normals of the symmetrized body at every contact, i.e. the normals of
/// the common supporting lines of touching pairs. A contact at a polygon vertex
/// contributes both adjacent edge normals.
pub fn contact_normals(p: &Packing, g: &ContactGraph) -> Vec<Vec2> {
    let sym = p.symmetrized();
    let mut out = Vec::new();
    for &(i, j) in g.edges() {
        let d = p.centers()[j] - p.centers()[i];
        let v = d / sym.gauge_unchecked(d);
        match sym {
            ConvexBody::Polygon(poly) => {
                let tol = TOUCH_TOL * sym.radius().max(1.0);
                out.extend(poly.edges_through(v, tol).into_iter().map(|e| poly.edge_normal(e)));
            }
            _ => {
                if let Ok(n) = sym.outer_normal(v) {
                    out.push(n);
                }
            }
        }
    }
    out
}

/// Searches a separating line for every pair among: the hint directions, the
/// contact normals, and [`CERT_GRID`] uniform directions. Sound but complete only
/// relative to this direction set.
pub fn certify_total_separability(p: &Packing, hints: &[Vec2]) -> Result<Certification> {
    let g = contact_graph(p)?;
    let mut dirs = Vec::with_capacity(hints.len());
    for &h in hints {
        let u = h
            .normalized()
            .filter(|u| u.is_finite())
            .ok_or_else(|| Error::Contract(format!("hint direction {h} must be nonzero")))?;
        dirs.push(u);
    }
    dirs.extend(contact_normals(p, &g));
    let mut dirs = dedup_up_to_sign(dirs);
    dirs.extend((0..CERT_GRID).map(|k| Vec2::from_angle(PI * k as f64 / CERT_GRID as f64)));
    Ok(certify_with_directions(p, &dirs))
}

fn dedup_up_to_sign(dirs: Vec<Vec2>) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::new();
    for d in dirs {
        if !out.iter().any(|o| o.cross(d).abs() <= 1e-12) {
            out.push(d);
        }
    }
    out
}

/// Interval structure of all members projected on one axis.
struct Projection {
    /// Component index of each member, in increasing order along the axis.
    label: Vec<usize>,
    /// Midpoint of the gap following each component.
    gap_mid: Vec<f64>,
}

fn project(body: &ConvexBody, centers: &[Vec2], u: Vec2) -> Projection {
    let (h_pos, h_neg) = (body.support_value(u), body.support_value(-u));
    let mut order: Vec<(f64, usize)> = centers.iter().enumerate().map(|(k, c)| (u.dot(*c), k)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut label = vec![0; centers.len()];
    let mut gap_mid = Vec::new();
    let mut comp = 0;
    let mut end = order[0].0 + h_pos;
    for &(x, k) in &order[1..] {
        let lo = x - h_neg;
        if lo >= end - TAU {
            gap_mid.push(0.5 * (end + lo));
            comp += 1;
            end = x + h_pos;
        } else {
            end = end.max(x + h_pos);
        }
        label[k] = comp;
    }
    gap_mid.push(f64::INFINITY);
    Projection { label, gap_mid }
}

/// Certification over an explicit, ordered direction list. Each pair takes the
/// first direction along which it falls into different interval components.
pub fn certify_with_directions(p: &Packing, dirs: &[Vec2]) -> Certification {
    let n = p.len();
    let mut open: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut found: Vec<PairSeparator> = Vec::with_capacity(open.len());
    for batch in dirs.chunks(BATCH) {
        if open.is_empty() {
            break;
        }
        let projections = par::map(batch, |&u| project(p.body(), p.centers(), u));
        for (&u, proj) in batch.iter().zip(&projections) {
            if open.is_empty() {
                break;
            }
            open.retain(|&(i, j)| {
                let (li, lj) = (proj.label[i], proj.label[j]);
                if li == lj {
                    return true;
                }
                let sep = if li < lj {
                    PairSeparator { i, j, dir: u, offset: proj.gap_mid[li] }
                } else {
                    // Subtracting from zero avoids emitting -0.0 components.
                    PairSeparator { i, j, dir: Vec2::ZERO - u, offset: -proj.gap_mid[lj] }
                };
                found.push(sep);
                false
            });
        }
    }
    if let Some(&(i, j)) = open.iter().min() {
        return Certification::NotCertified { i, j };
    }
    found.sort_by_key(|s| (s.i, s.j));
    Certification::Certified(SeparationCertificate { pairs: found })
}

/// Independently re-checks a certificate: one line per unordered pair, unit
/// directions, `i` and `j` on opposite closed sides, and no member's open
/// support interval strictly containing the offset (all within `TAU`).
pub fn verify_certificate(p: &Packing, cert: &SeparationCertificate) -> bool {
    let n = p.len();
    let mut seen = vec![false; n * n];
    for s in &cert.pairs {
        if s.i >= n || s.j >= n || s.i == s.j {
            return false;
        }
        let key = s.i.min(s.j) * n + s.i.max(s.j);
        if seen[key] {
            return false;
        }
        seen[key] = true;
    }
    if cert.pairs.len() != n * (n - 1) / 2 {
        return false;
    }
    let body = p.body();
    let centers = p.centers();
    let ok = par::map(&cert.pairs, |s| {
        if !s.dir.is_finite() || !s.offset.is_finite() || (s.dir.norm() - 1.0).abs() > TAU {
            return false;
        }
        let (hp, hn) = (body.support_value(s.dir), body.support_value(-s.dir));
        let interval = |c: Vec2| (s.dir.dot(c) - hn, s.dir.dot(c) + hp);
        if interval(centers[s.i]).1 > s.offset + TAU || interval(centers[s.j]).0 < s.offset - TAU {
            return false;
        }
        centers.iter().all(|&c| {
            let (lo, hi) = interval(c);
            !(lo < s.offset - TAU && hi > s.offset + TAU)
        })
    });
    ok.into_iter().all(|b| b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn packing(body: ConvexBody, pts: &[(f64, f64)]) -> Packing {
        Packing::new(body, pts.iter().map(|&(x, y)| Vec2::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn grid_certifies_on_axes() {
        let p = packing(
            ConvexBody::disk(1.0).unwrap(),
            &[(0.0, 0.0), (2.0, 0.0), (0.0, 2.0), (2.0, 2.0)],
        );
        let c = certify_total_separability(&p, &[Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]).unwrap();
        let cert = c.certificate().unwrap();
        assert_eq!(cert.pairs.len(), 6);
        assert!(verify_certificate(&p, cert));
        for s in &cert.pairs {
            assert!(s.dir.x.abs() == 1.0 || s.dir.y.abs() == 1.0);
        }
    }

    #[test]
    fn mutual_triangle_is_not_certified() {
        let h = 3f64.sqrt();
        let p = packing(ConvexBody::disk(1.0).unwrap(), &[(0.0, 0.0), (2.0, 0.0), (1.0, h)]);
        assert_eq!(
            certify_total_separability(&p, &[]).unwrap(),
            Certification::NotCertified { i: 0, j: 1 }
        );
    }

    #[test]
    fn plus_sign_certifies() {
        let p = packing(
            ConvexBody::disk(1.0).unwrap(),
            &[(0.0, 0.0), (2.0, 0.0), (0.0, 2.0), (-2.0, 0.0), (0.0, -2.0)],
        );
        let c = certify_total_separability(&p, &[]).unwrap();
        assert!(verify_certificate(&p, c.certificate().unwrap()));
    }

    #[test]
    fn corrupted_certificates_fail() {
        let p = packing(
            ConvexBody::disk(1.0).unwrap(),
            &[(0.0, 0.0), (2.0, 0.0), (0.0, 2.0), (2.0, 2.0)],
        );
        let mut cert = certify_total_separability(&p, &[])
            .unwrap()
            .into_certificate()
            .unwrap();
        assert!(verify_certificate(&p, &cert));
        let mut through_interior = cert.clone();
        through_interior.pairs[0].offset += 0.5;
        assert!(!verify_certificate(&p, &through_interior));
        let mut wrong_side = cert.clone();
        wrong_side.pairs[0].dir = -wrong_side.pairs[0].dir;
        assert!(!verify_certificate(&p, &wrong_side));
        cert.pairs.pop();
        assert!(!verify_certificate(&p, &cert));
    }

    #[test]
    fn asymmetric_body_uses_its_own_support() {
        // Two triangles touching at a shared vertex.
        let tri = ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap();
        let p = packing(tri, &[(0.0, 0.0), (1.0, 0.0)]);
        let c = certify_total_separability(&p, &[]).unwrap();
        assert!(verify_certificate(&p, c.certificate().unwrap()));
    }
}
