//! Totally separable translative packings of planar convex domains.
//!
//! Convex bodies ([`ConvexBody`]) are polygons, disks, ellipses, A-domains and
//! conic-arc bodies. Packings of translates are checked for overlap, their contact
//! graphs computed, and total separability certified by explicit separating lines.
//! Constructions realize the maximum separable contact number `⌊2n − 2√n⌋` on
//! Auerbach lattices; polyomino enumeration provides a brute-force oracle for it.
//!
//! Data-parallel work runs on rayon with the default `parallel` feature and
//! sequentially without it.

pub mod adomain;
pub mod construction;
pub mod error;
pub mod geom;
pub mod graph;
pub mod normed;
pub mod packing;
pub mod par;
pub mod polyomino;
pub mod render;

pub use error::{Error, Result};
pub use geom::{ConvexBody, Mat2, Polygon, Vec2, TAU};
pub use graph::Graph;
pub use packing::{Packing, SeparationCertificate};
