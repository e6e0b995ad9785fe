//! Explicit packings: Auerbach-lattice polyomino packings with the maximum
//! separable contact number, fixed Hadwiger witnesses, and contact-number formulas.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::body::{symmetrize, ConvexBody};
use crate::geom::polygon::Polygon;
use crate::geom::vec2::{Mat2, Vec2};
use crate::normed::{auerbach_basis, AuerbachBasis};
use crate::packing::{
    certify_total_separability, contact_graph, Certification, ContactGraph, Packing,
    SeparationCertificate,
};
use crate::polyomino::{basic_polyomino, Polyomino, StripSide};

/// Lattice generated by `2·e1, 2·e2` for an Auerbach basis of a smooth o-symmetric body.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuerbachLattice {
    pub basis: AuerbachBasis,
    pub generators: [Vec2; 2],
    /// Outer normals of the cell sides through `e1` and `e2`.
    pub side_normals: [Vec2; 2],
}

impl AuerbachLattice {
    /// Lattice point for cell `(i, j)`.
    pub fn point(&self, i: i32, j: i32) -> Vec2 {
        self.generators[0] * i as f64 + self.generators[1] * j as f64
    }

    /// Corners `±e1 ± e2` of the fundamental cell, counterclockwise.
    pub fn cell_corners(&self) -> [Vec2; 4] {
        let (a, b) = (self.basis.e1, self.basis.e2);
        [a - b, a + b, -a + b, -a - b]
    }

    /// Separation directions for lattice packings: the two side normals.
    pub fn hints(&self) -> Vec<Vec2> {
        self.side_normals.to_vec()
    }
}

pub fn auerbach_lattice(body: &ConvexBody) -> Result<AuerbachLattice> {
    if !body.is_smooth() {
        return Err(Error::NotSmooth);
    }
    if !body.is_o_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let basis = auerbach_basis(body)?;
    Ok(AuerbachLattice {
        basis,
        generators: [basis.e1 * 2.0, basis.e2 * 2.0],
        side_normals: [body.outer_normal(basis.e1)?, body.outer_normal(basis.e2)?],
    })
}

/// A packing with its contact graph and a verified separation certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedPacking {
    pub packing: Packing,
    pub contacts: ContactGraph,
    pub certificate: SeparationCertificate,
}

fn certified(packing: Packing, hints: &[Vec2]) -> Result<CertifiedPacking> {
    let contacts = contact_graph(&packing)?;
    match certify_total_separability(&packing, hints)? {
        Certification::Certified(certificate) => Ok(CertifiedPacking {
            packing,
            contacts,
            certificate,
        }),
        Certification::NotCertified { i, j } => Err(Error::NotSeparable(format!(
            "no separating line found for pair ({i}, {j})"
        ))),
    }
}

/// One translate of `body` per cell of `p`, centered at the lattice points.
/// Translate `k` corresponds to `p.cells()[k]`.
pub fn packing_from_polyomino(
    body: &ConvexBody,
    lattice: &AuerbachLattice,
    p: &Polyomino,
) -> Result<CertifiedPacking> {
    let centers = p.cells().iter().map(|&(i, j)| lattice.point(i, j)).collect();
    certified(Packing::new(body.clone(), centers)?, &lattice.hints())
}

/// Packing of `n` translates of a smooth body with `⌊2n − 2√n⌋` contacts: the
/// basic polyomino of `n` cells placed on an Auerbach lattice of `½(K − K)`.
pub fn max_separable_contact_packing(body: &ConvexBody, n: usize) -> Result<CertifiedPacking> {
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            range: "n >= 1",
        });
    }
    if !body.is_smooth() {
        return Err(Error::NotSmooth);
    }
    let sym = symmetrize(body)?;
    let lattice = auerbach_lattice(&sym)?;
    let p = basic_polyomino(n as i64, StripSide::RightVertical)?;
    packing_from_polyomino(body, &lattice, &p)
}

fn floor_formula(n: i64, lin: i64, rad: impl Fn(i64) -> i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            range: "n >= 1",
        });
    }
    // ⌊lin·n − √m⌋ = lin·n − ⌈√m⌉, and ⌈√m⌉ = isqrt(m) + [m not a square].
    let m = rad(n);
    let s = m.isqrt();
    Ok(lin * n - s - i64::from(s * s != m))
}

/// `⌊2n − 2√n⌋`, the maximum contact number of totally separable packings of `n`
/// translates of a smooth convex domain.
pub fn csep_formula(n: i64) -> Result<i64> {
    floor_formula(n, 2, |n| 4 * n)
}

/// `⌊3n − √(12n − 3)⌋`, the maximum contact number of `n` congruent disks.
pub fn c_formula(n: i64) -> Result<i64> {
    floor_formula(n, 3, |n| 12 * n - 3)
}

/// `⌊4n − √(28n − 12)⌋`, the maximum contact number of `n` translates of a square.
pub fn csquare_formula(n: i64) -> Result<i64> {
    floor_formula(n, 4, |n| 28 * n - 12)
}

fn witness(body: ConvexBody, m: Mat2, hints: &[Vec2]) -> Result<CertifiedPacking> {
    let mut centers = vec![Vec2::ZERO];
    for j in -1..=1 {
        for i in -1..=1 {
            if (i, j) != (0, 0) {
                centers.push(m * Vec2::new(2.0 * i as f64, 2.0 * j as f64));
            }
        }
    }
    let sym = symmetrize(&body)?;
    let packing = Packing::new(body, centers)?;
    // Keep only translates touching the center.
    let keep: Vec<Vec2> = packing
        .centers()
        .iter()
        .copied()
        .filter(|&c| c == Vec2::ZERO || (sym.gauge_unchecked(c) - 2.0).abs() <= 1e-9)
        .collect();
    certified(Packing::new(packing.body().clone(), keep)?, hints)
}

/// The square `[-1, 1]²` with its eight lattice neighbors (translate 0 is central).
pub fn square_hadwiger_witness() -> Result<CertifiedPacking> {
    witness(
        ConvexBody::square(1.0)?,
        Mat2::IDENTITY,
        &[Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)],
    )
}

/// The regular hexagon (vertices at multiples of 60°, circumradius 1) with six
/// touching neighbors, translate 0 central.
///
/// The hexagon is the affine image of a regular hexagon inscribed in a square,
/// and the neighbors are the images of that square's lattice neighbors; this
/// lattice is totally separable, whereas the hexagon's own tiling lattice is not.
pub fn hexagon_hadwiger_witness() -> Result<CertifiedPacking> {
    let h = 3f64.sqrt() / 2.0;
    let body = ConvexBody::Polygon(Polygon::regular(6, 1.0, 0.0)?);
    witness(
        body,
        Mat2::new(1.0, -0.5, 0.0, h),
        &[Vec2::new(0.0, 1.0), Vec2::new(h, 0.5)],
    )
}
