use std::cmp::Ordering;
use std::f64::consts::PI;

use super::vec2::{Mat2, Vec2, TAU};
use crate::error::{Error, Result};

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    /// Validates and wraps a vertex list.
    ///
    /// Rejects fewer than three vertices, clockwise order, and any vertex whose
    /// turn (sine of the angle between adjacent edges) does not exceed `TAU`.
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Degenerate(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(v) = vertices.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidBody(format!("non-finite vertex {v}")));
        }
        let n = vertices.len();
        let mut turning = 0.0;
        for i in 0..n {
            let e0 = vertices[(i + 1) % n] - vertices[i];
            let e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            let (l0, l1) = (e0.norm(), e1.norm());
            if l0 <= TAU || l1 <= TAU {
                return Err(Error::Degenerate(format!(
                    "repeated vertex near {}",
                    vertices[(i + 1) % n]
                )));
            }
            let sine = e0.cross(e1) / (l0 * l1);
            if sine <= TAU {
                return Err(Error::InvalidBody(format!(
                    "vertex {} is reflex, collinear, or the order is clockwise",
                    vertices[(i + 1) % n]
                )));
            }
            turning += e0.cross(e1).atan2(e0.dot(e1));
        }
        if (turning - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::InvalidBody(
                "vertex sequence winds more than once".into(),
            ));
        }
        Ok(Polygon { vertices })
    }

    /// Axis-aligned square `[-s, s]²`.
    pub fn square(s: f64) -> Result<Self> {
        Polygon::new(vec![
            Vec2::new(s, -s),
            Vec2::new(s, s),
            Vec2::new(-s, s),
            Vec2::new(-s, -s),
        ])
    }

    /// Regular polygon with `n` vertices at angles `phase + 2πk/n` on the circle of radius `r`.
    pub fn regular(n: usize, r: f64, phase: f64) -> Result<Self> {
        let vertices = (0..n)
            .map(|k| Vec2::from_angle(phase + 2.0 * PI * k as f64 / n as f64) * r)
            .collect();
        Polygon::new(vertices)
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Vec2, Vec2) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    /// Unit outer normal of edge `i`.
    pub fn edge_normal(&self, i: usize) -> Vec2 {
        let (a, b) = self.edge(i);
        let t = (b - a).normalized().expect("validated polygon has no zero edge");
        Vec2::new(t.y, -t.x)
    }

    pub fn edge_normals(&self) -> impl Iterator<Item = Vec2> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge_normal(i))
    }

    /// Maximum of `p · d` over the vertices and the first vertex attaining it.
    pub fn support(&self, d: Vec2) -> (f64, Vec2) {
        let mut best = (f64::NEG_INFINITY, self.vertices[0]);
        for &v in &self.vertices {
            let s = v.dot(d);
            if s > best.0 + TAU * TAU {
                best = (s, v);
            }
        }
        best
    }

    pub fn centroid(&self) -> Vec2 {
        let n = self.vertices.len();
        let mut area2 = 0.0;
        let mut c = Vec2::ZERO;
        for i in 0..n {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let w = p.cross(q);
            area2 += w;
            c += (p + q) * w;
        }
        c / (3.0 * area2)
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum::<f64>()
            / 2.0
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                (b - a).norm()
            })
            .sum()
    }

    /// Point reflection through the origin.
    pub fn reflect(&self) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&v| -v).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Polygon {
        assert!(s > 0.0);
        Polygon {
            vertices: self.vertices.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn translate(&self, t: Vec2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
        }
    }

    /// Image under an invertible linear map; vertex order is reversed when the
    /// map flips orientation so the result stays counterclockwise.
    pub fn linear_image(&self, m: Mat2) -> Result<Polygon> {
        if m.det().abs() <= f64::EPSILON {
            return Err(Error::Contract("linear map must be invertible".into()));
        }
        let mut vertices: Vec<Vec2> = self.vertices.iter().map(|&v| m * v).collect();
        if m.det() < 0.0 {
            vertices.reverse();
        }
        Polygon::new(vertices)
    }

    /// True when the vertex set equals its reflection through the origin within `TAU`.
    pub fn is_o_symmetric(&self) -> bool {
        let n = self.vertices.len();
        if !n.is_multiple_of(2) {
            return false;
        }
        self.vertices.iter().all(|&v| {
            self.vertices
                .iter()
                .any(|&w| (w + v).approx_eq(Vec2::ZERO, TAU))
        })
    }

    /// Strict interior containment of the origin.
    pub fn contains_origin_strictly(&self) -> bool {
        (0..self.len()).all(|i| {
            let (a, _) = self.edge(i);
            self.edge_normal(i).dot(a) > TAU
        })
    }

    /// Minkowski gauge `inf{λ > 0 : x ∈ λP}` for a polygon containing the origin in its interior.
    pub fn gauge(&self, x: Vec2) -> f64 {
        let mut g: f64 = 0.0;
        for i in 0..self.len() {
            let n = self.edge_normal(i);
            let h = n.dot(self.vertices[i]);
            g = g.max(n.dot(x) / h);
        }
        g
    }

    /// Indices of edges whose supporting line passes within `tol` of `p`.
    pub fn edges_through(&self, p: Vec2, tol: f64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let n = self.edge_normal(i);
                (n.dot(p) - n.dot(self.vertices[i])).abs() <= tol
            })
            .collect()
    }

    /// Index of the vertex within `tol` of `p`, if any.
    pub fn vertex_near(&self, p: Vec2, tol: f64) -> Option<usize> {
        self.vertices.iter().position(|v| (*v - p).norm() <= tol)
    }

    /// Index of the bottom-most (then left-most) vertex.
    fn lowest_vertex(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.vertices.iter().enumerate() {
            let b = self.vertices[best];
            if v.y < b.y || (v.y == b.y && v.x < b.x) {
                best = i;
            }
        }
        best
    }
}

/// Convex Minkowski sum `P + Q` by merging the edge sequences in angular order.
///
/// Parallel edges are fused, so the result has no collinear vertices.
pub fn minkowski_sum(p: &Polygon, q: &Polygon) -> Result<Polygon> {
    let edges = |poly: &Polygon| -> Vec<Vec2> {
        let start = poly.lowest_vertex();
        let n = poly.len();
        (0..n)
            .map(|k| poly.vertices[(start + k + 1) % n] - poly.vertices[(start + k) % n])
            .collect()
    };
    let (ep, eq) = (edges(p), edges(q));
    let origin = p.vertices[p.lowest_vertex()] + q.vertices[q.lowest_vertex()];

    // Starting from the lowest vertex, edge angles increase monotonically in [0, 2π).
    let half_angle = |e: Vec2| -> (u8, Vec2) { (u8::from(e.y < 0.0 || (e.y == 0.0 && e.x < 0.0)), e) };
    let cmp = |a: Vec2, b: Vec2| -> Ordering {
        let (ha, _) = half_angle(a);
        let (hb, _) = half_angle(b);
        ha.cmp(&hb).then_with(|| {
            let c = a.cross(b);
            let scale = a.norm() * b.norm();
            if c > TAU * TAU * scale {
                Ordering::Less
            } else if c < -TAU * TAU * scale {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    };

    let mut merged: Vec<Vec2> = Vec::with_capacity(ep.len() + eq.len());
    let (mut i, mut j) = (0, 0);
    while i < ep.len() || j < eq.len() {
        let next = if i == ep.len() {
            j += 1;
            eq[j - 1]
        } else if j == eq.len() {
            i += 1;
            ep[i - 1]
        } else {
            match cmp(ep[i], eq[j]) {
                Ordering::Less => {
                    i += 1;
                    ep[i - 1]
                }
                Ordering::Greater => {
                    j += 1;
                    eq[j - 1]
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    ep[i - 1] + eq[j - 1]
                }
            }
        };
        merged.push(next);
    }

    let mut vertices = Vec::with_capacity(merged.len());
    let mut cur = origin;
    for e in &merged {
        vertices.push(cur);
        cur += *e;
    }
    Polygon::new(remove_collinear(vertices))
}

/// Drops vertices whose turn is within `TAU` of straight.
pub(crate) fn remove_collinear(mut vertices: Vec<Vec2>) -> Vec<Vec2> {
    loop {
        let n = vertices.len();
        if n < 3 {
            return vertices;
        }
        let bad = (0..n).find(|&i| {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let (e0, e1) = (cur - prev, next - cur);
            let s = e0.norm() * e1.norm();
            s <= f64::MIN_POSITIVE || (e0.cross(e1) / s).abs() <= TAU && e0.dot(e1) > 0.0
        });
        match bad {
            Some(i) => {
                vertices.remove(i);
            }
            None => return vertices,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> Polygon {
        Polygon::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_degenerate_and_collinear() {
        assert!(matches!(
            Polygon::new(vec![Vec2::ZERO, Vec2::new(1.0, 0.0)]),
            Err(Error::Degenerate(_))
        ));
        let collinear = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(0.0, 1.0),
        ];
        assert!(Polygon::new(collinear).is_err());
        let cw = vec![Vec2::new(0.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)];
        assert!(Polygon::new(cw).is_err());
    }

    #[test]
    fn square_plus_square_is_doubled() {
        let s = Polygon::square(1.0).unwrap();
        let sum = minkowski_sum(&s, &s).unwrap();
        assert_eq!(sum.len(), 4);
        for v in sum.vertices() {
            assert!((v.x.abs() - 2.0).abs() < 1e-12 && (v.y.abs() - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_plus_reflection_is_symmetric_hexagon() {
        let t = tri();
        let hex = minkowski_sum(&t, &t.reflect()).unwrap();
        assert_eq!(hex.len(), 6);
        assert!(hex.is_o_symmetric());
        let expected = [
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(-1.0, 0.0),
            Vec2::new(0.0, -1.0),
            Vec2::new(1.0, -1.0),
        ];
        for e in expected {
            assert!(hex.vertex_near(e, 1e-12).is_some(), "missing {e}");
        }
    }

    #[test]
    fn square_gauge_is_max_norm() {
        let s = Polygon::square(1.0).unwrap();
        assert!((s.gauge(Vec2::new(0.5, -0.25)) - 0.5).abs() < 1e-15);
        assert!((s.gauge(Vec2::new(-3.0, 2.0)) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn support_of_square_at_thirty_degrees() {
        let s = Polygon::square(1.0).unwrap();
        let d = Vec2::from_angle(PI / 6.0);
        let (h, p) = s.support(d);
        assert!((h - (d.x + d.y)).abs() < 1e-15);
        assert_eq!(p, Vec2::new(1.0, 1.0));
    }

    #[test]
    fn remove_collinear_drops_midpoints() {
        let v = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 1.0),
        ];
        assert_eq!(remove_collinear(v).len(), 3);
    }
}
