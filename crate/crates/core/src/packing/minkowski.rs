use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::certify::{certify_with_directions, contact_normals, CERT_GRID};
use super::{contact_graph, ContactGraph, Packing, TOUCH_TOL};
use crate::error::{Error, Result};
use crate::geom::body::{symmetrize, ConvexBody};
use crate::geom::vec2::Vec2;
use crate::graph::Graph;

/// Contact graph of translates of a polygon computed by separating axes on the
/// polygon's own edge normals, without reference to the symmetrized body.
///
/// For smooth bodies this falls back to the gauge-distance graph.
pub fn sat_contact_graph(body: &ConvexBody, centers: &[Vec2]) -> Result<ContactGraph> {
    let poly = match body {
        ConvexBody::Polygon(p) => p,
        _ => return contact_graph(&Packing::new(body.clone(), centers.to_vec())?),
    };
    let axes: Vec<(Vec2, f64)> = poly
        .edge_normals()
        .flat_map(|n| [n, -n])
        .map(|u| (u, body.support_value(u) + body.support_value(-u)))
        .collect();
    let n = centers.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = centers[j] - centers[i];
            let gap = axes
                .iter()
                .map(|&(u, width)| u.dot(d) - width)
                .fold(f64::NEG_INFINITY, f64::max);
            if gap < -TOUCH_TOL {
                return Err(Error::Overlap { i, j, distance: gap });
            }
            if gap <= TOUCH_TOL {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::new(n, edges))
}

/// Comparison of a packing `P` of `K` with `P_o`, the same centers with `K_o = ½(K − K)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinkowskiReport {
    pub contacts_p: usize,
    pub contacts_po: usize,
    pub graphs_equal: bool,
    pub certified_p: bool,
    pub certified_po: bool,
}

impl MinkowskiReport {
    pub fn equivalent(&self) -> bool {
        self.graphs_equal && self.certified_p == self.certified_po
    }
}

/// Builds `P` and `P_o`, compares their contact graphs (the one of `P` by separating
/// axes, the one of `P_o` by gauge distance), and certifies both over one shared
/// direction set.
pub fn verify_minkowski_equivalence(body: &ConvexBody, centers: &[Vec2]) -> Result<MinkowskiReport> {
    let sym = symmetrize(body)?;
    let p = Packing::new(body.clone(), centers.to_vec())?;
    let po = Packing::new(sym, centers.to_vec())?;
    let g = sat_contact_graph(body, centers)?;
    let go = contact_graph(&po)?;
    let mut dirs = contact_normals(&po, &go);
    dirs.extend((0..CERT_GRID).map(|k| Vec2::from_angle(PI * k as f64 / CERT_GRID as f64)));
    Ok(MinkowskiReport {
        contacts_p: g.edge_count(),
        contacts_po: go.edge_count(),
        graphs_equal: g == go,
        certified_p: certify_with_directions(&p, &dirs).is_certified(),
        certified_po: certify_with_directions(&po, &dirs).is_certified(),
    })
}

/// Seeded random packing of `n` translates grown by placing each new translate
/// against an existing one, either along a vertex or edge-midpoint direction of
/// the symmetrized body (exact contacts, lattice-like) or along a random direction,
/// sometimes pushed out by a random gap. Placements creating overlaps or
/// near-contacts within `1e-4` of touching are rejected.
pub fn random_packing_centers(body: &ConvexBody, n: usize, seed: u64) -> Result<Vec<Vec2>> {
    let sym = symmetrize(body)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lattice_dirs: Vec<Vec2> = match &sym {
        ConvexBody::Polygon(p) => {
            let v = p.vertices();
            v.iter()
                .copied()
                .chain((0..v.len()).map(|i| (v[i] + v[(i + 1) % v.len()]) * 0.5))
                .collect()
        }
        _ => (0..8).map(|k| Vec2::from_angle(PI * k as f64 / 4.0)).collect(),
    };
    let mut centers = vec![Vec2::ZERO];
    let mut attempts = 0;
    while centers.len() < n {
        attempts += 1;
        if attempts > 10_000 * n {
            return Err(Error::Contract(format!(
                "could not place {n} translates"
            )));
        }
        let base = centers[rng.gen_range(0..centers.len())];
        let u = if rng.gen_bool(0.7) {
            lattice_dirs[rng.gen_range(0..lattice_dirs.len())]
        } else {
            Vec2::from_angle(rng.gen_range(0.0..2.0 * PI))
        };
        let mut reach = 2.0;
        if rng.gen_bool(0.2) {
            reach += rng.gen_range(0.01..0.5);
        }
        let c = base + u * (reach / sym.gauge_unchecked(u));
        let ok = centers.iter().all(|&o| {
            let g = sym.gauge_unchecked(c - o);
            g >= 2.0 + 1e-4 || (g - 2.0).abs() <= 1e-12
        });
        if ok {
            centers.push(c);
        }
    }
    Ok(centers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> ConvexBody {
        ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.3, 0.8),
        ])
        .unwrap()
    }

    #[test]
    fn touching_pair_from_support() {
        // p - q with p, q the support points in directions u and -u lies on bd(K - K).
        let k = triangle();
        let u = Vec2::from_angle(0.4);
        let shift = k.support_pair(u).1 - k.support_pair(-u).1;
        let r = verify_minkowski_equivalence(&k, &[Vec2::ZERO, shift]).unwrap();
        assert!(r.equivalent(), "{r:?}");
    }

    #[test]
    fn symmetric_body_is_identity() {
        let d = ConvexBody::disk(1.0).unwrap();
        let r = verify_minkowski_equivalence(&d, &[Vec2::ZERO, Vec2::new(2.0, 0.0)]).unwrap();
        assert_eq!(r.contacts_p, 1);
        assert!(r.equivalent());
    }

    #[test]
    fn random_trials_agree() {
        let k = triangle();
        for seed in 0..20 {
            let c = random_packing_centers(&k, 10, seed).unwrap();
            let r = verify_minkowski_equivalence(&k, &c).unwrap();
            assert!(r.equivalent(), "seed {seed}: {r:?}");
        }
    }
}
