//! Planar geometry: vectors, polygons, conic arcs and convex bodies.

pub mod body;
pub mod conic;
pub mod json;
pub mod polygon;
pub mod vec2;

pub use body::{hausdorff_distance, symmetrize, BodyKind, ConvexBody, SupportEvaluation, HAUSDORFF_GRID};
pub use conic::{ConicArc, CurvedBoundary};
pub use json::{body_from_json, body_to_json, packing_from_json, packing_to_json};
pub use polygon::{minkowski_sum, Polygon};
pub use vec2::{Mat2, Vec2, TAU};
