//! SVG figures of packings: bodies, contact points and separating lines.

use std::fmt::Write;

use crate::error::Result;
use crate::geom::body::ConvexBody;
use crate::geom::vec2::Vec2;
use crate::packing::{contact_graph, Packing, SeparationCertificate, TOUCH_TOL};

/// Pixels per unit length.
pub const SCALE: f64 = 64.0;

/// Boundary samples used to draw curved bodies.
const CURVE_SAMPLES: usize = 256;

/// Margin added around the bounding box, as a fraction of its size.
const MARGIN: f64 = 0.1;

#[derive(Clone, Copy, Debug)]
struct Frame {
    min: Vec2,
    max: Vec2,
}

impl Frame {
    fn px(&self, p: Vec2) -> (f64, f64) {
        ((p.x - self.min.x) * SCALE, (self.max.y - p.y) * SCALE)
    }

    /// Part of the line `{x : dir·x = offset}` inside the frame.
    fn clip_line(&self, dir: Vec2, offset: f64) -> Option<(Vec2, Vec2)> {
        let p0 = dir * offset;
        let t = dir.perp();
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (p, d, a, b) in [(p0.x, t.x, self.min.x, self.max.x), (p0.y, t.y, self.min.y, self.max.y)] {
            if d.abs() < 1e-15 {
                if p < a || p > b {
                    return None;
                }
                continue;
            }
            let (s0, s1) = ((a - p) / d, (b - p) / d);
            lo = lo.max(s0.min(s1));
            hi = hi.min(s0.max(s1));
        }
        (lo < hi).then(|| (p0 + t * lo, p0 + t * hi))
    }
}

fn outline(body: &ConvexBody) -> Result<Vec<Vec2>> {
    Ok(match body {
        ConvexBody::Polygon(p) => p.vertices().to_vec(),
        _ => body.polygonize(CURVE_SAMPLES)?.vertices().to_vec(),
    })
}

/// Point where translates `i` and `j` of a touching pair meet.
fn contact_point(p: &Packing, i: usize, j: usize) -> Vec2 {
    let (ci, cj) = (p.centers()[i], p.centers()[j]);
    let sym = p.symmetrized();
    let d = cj - ci;
    let v = d / sym.gauge_unchecked(d);
    let normal = match sym {
        ConvexBody::Polygon(poly) => poly
            .edges_through(v, TOUCH_TOL * sym.radius().max(1.0))
            .first()
            .map(|&e| poly.edge_normal(e)),
        _ => sym.outer_normal(v).ok(),
    };
    match normal {
        Some(n) => ci + p.body().support_pair(n).1,
        None => ci + d * 0.5,
    }
}

/// Renders a packing as SVG at [`SCALE`] pixels per unit. Bodies are
/// `<path class="body">`, contacts `<circle class="contact">` and certificate
/// lines dashed `<line class="separator">` clipped to the bounding box plus 10%.
pub fn render_svg(p: &Packing, cert: Option<&SeparationCertificate>) -> Result<String> {
    let shape = outline(p.body())?;
    let (mut min, mut max) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for &c in p.centers() {
        for &v in &shape {
            let q = c + v;
            min = Vec2::new(min.x.min(q.x), min.y.min(q.y));
            max = Vec2::new(max.x.max(q.x), max.y.max(q.y));
        }
    }
    let pad = (max - min) * MARGIN;
    let frame = Frame {
        min: min - pad,
        max: max + pad,
    };
    let (w, h) = ((frame.max.x - frame.min.x) * SCALE, (frame.max.y - frame.min.y) * SCALE);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
    s.push_str("<style>.body{fill:#dde6f2;stroke:#1f3b63;stroke-width:1.5}.contact{fill:#c0392b}.separator{stroke:#555;stroke-width:1;stroke-dasharray:6 4}</style>\n");
    for &c in p.centers() {
        let mut d = String::new();
        for (k, &v) in shape.iter().enumerate() {
            let (x, y) = frame.px(c + v);
            let _ = write!(d, "{}{x:.3},{y:.3} ", if k == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let _ = writeln!(s, r#"<path class="body" d="{d}"/>"#);
    }
    if let Some(cert) = cert {
        for sep in &cert.pairs {
            if let Some((a, b)) = frame.clip_line(sep.dir, sep.offset) {
                let ((x1, y1), (x2, y2)) = (frame.px(a), frame.px(b));
                let _ = writeln!(
                    s,
                    r#"<line class="separator" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
                );
            }
        }
    }
    for &(i, j) in contact_graph(p)?.edges() {
        let (x, y) = frame.px(contact_point(p, i, j));
        let _ = writeln!(s, r#"<circle class="contact" cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
    }
    s.push_str("</svg>\n");
    Ok(s)
}
