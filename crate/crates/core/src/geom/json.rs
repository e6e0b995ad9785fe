//! JSON encodings of bodies and packings.
//!
//! Bodies are tagged by `"kind"`: `polygon` (`vertices`), `disk` (`r`),
//! `ellipse` (`a`, `b`), `adomain` and `conic` (`arcs`). Symmetric A-domains
//! carry `r`, `phi`, `bulge` and an optional non-identity `frame`; general ones
//! carry `r`, `pieces`, canonical `arcs` and `frame`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::body::ConvexBody;
use super::conic::{ConicArc, CurvedBoundary};
use super::vec2::{Mat2, Vec2};
use crate::adomain::{construct_adomain, ADomain};
use crate::error::{Error, Result};
use crate::packing::Packing;

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum BodyJson {
    Polygon {
        vertices: Vec<Vec2>,
    },
    Disk {
        r: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    Adomain {
        r: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        phi: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bulge: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pieces: Option<[[f64; 2]; 4]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arcs: Option<Vec<ConicArc>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frame: Option<Mat2>,
    },
    Conic {
        arcs: Vec<ConicArc>,
    },
}

impl From<&ConvexBody> for BodyJson {
    fn from(b: &ConvexBody) -> Self {
        match b {
            ConvexBody::Polygon(p) => BodyJson::Polygon {
                vertices: p.vertices().to_vec(),
            },
            ConvexBody::Disk { r } => BodyJson::Disk { r: *r },
            ConvexBody::Ellipse { a, b } => BodyJson::Ellipse { a: *a, b: *b },
            ConvexBody::ADomain(a) => {
                let frame = (!a.frame().is_identity()).then(|| a.frame());
                match a.bulge() {
                    Some(w) => BodyJson::Adomain {
                        r: a.r(),
                        phi: Some(a.piece_halfwidth()),
                        bulge: Some(w),
                        pieces: None,
                        arcs: None,
                        frame,
                    },
                    None => BodyJson::Adomain {
                        r: a.r(),
                        phi: None,
                        bulge: None,
                        pieces: Some(*a.pieces()),
                        arcs: Some(a.canonical().arcs().to_vec()),
                        frame: Some(a.frame()),
                    },
                }
            }
            ConvexBody::Conic(c) => BodyJson::Conic {
                arcs: c.arcs().to_vec(),
            },
        }
    }
}

impl TryFrom<BodyJson> for ConvexBody {
    type Error = Error;

    fn try_from(j: BodyJson) -> Result<Self> {
        match j {
            BodyJson::Polygon { vertices } => ConvexBody::polygon(vertices),
            BodyJson::Disk { r } => ConvexBody::disk(r),
            BodyJson::Ellipse { a, b } => ConvexBody::ellipse(a, b),
            BodyJson::Adomain {
                r,
                phi,
                bulge,
                pieces,
                arcs,
                frame,
            } => {
                let frame = frame.unwrap_or(Mat2::IDENTITY);
                let a = match (phi, bulge, pieces, arcs) {
                    (Some(phi), Some(w), None, None) => {
                        let a = construct_adomain(r, phi, w)?;
                        if frame.is_identity() {
                            a
                        } else {
                            a.with_frame(frame)?
                        }
                    }
                    (None, None, Some(pieces), Some(arcs)) => ADomain::from_parts(r, pieces, arcs, frame)?,
                    _ => {
                        return Err(Error::Parse(
                            "adomain needs either phi and bulge, or pieces and arcs".into(),
                        ))
                    }
                };
                Ok(ConvexBody::ADomain(a))
            }
            BodyJson::Conic { arcs } => CurvedBoundary::new(arcs).map(ConvexBody::Conic),
        }
    }
}

impl Serialize for ConvexBody {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BodyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexBody {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BodyJson::deserialize(d)?;
        ConvexBody::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PackingJson {
    body: ConvexBody,
    centers: Vec<Vec2>,
}

impl Serialize for Packing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PackingJson {
            body: self.body().clone(),
            centers: self.centers().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Packing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PackingJson::deserialize(d)?;
        Packing::new(j.body, j.centers).map_err(serde::de::Error::custom)
    }
}

/// Parses a body from its JSON encoding.
pub fn body_from_json(s: &str) -> Result<ConvexBody> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn body_to_json(b: &ConvexBody) -> String {
    serde_json::to_string(b).expect("bodies always serialize")
}

/// Parses and validates a packing from its JSON encoding.
pub fn packing_from_json(s: &str) -> Result<Packing> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn packing_to_json(p: &Packing) -> String {
    serde_json::to_string(p).expect("packings always serialize")
}
