use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context};
use sepack::adomain::{construct_adomain, neutral_bulge};
use sepack::geom::{body_from_json, ConvexBody, Vec2};

pub const GRAMMAR: &str =
    "disk[:r] | ellipse:a,b | square[:s] | hexagon | adomain:r,phi,bulge | polygon:@file.json (bulge may be `neutral`)";

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bulge {
    Neutral,
    Weight(f64),
}

/// Textual body descriptor.
#[derive(Clone, Debug, PartialEq)]
pub enum BodySpec {
    Disk(f64),
    Ellipse(f64, f64),
    Square(f64),
    Hexagon,
    ADomain { r: f64, phi: f64, bulge: Bulge },
    /// A file holding either body JSON or a bare `[[x, y], ...]` vertex list.
    PolygonFile(PathBuf),
}

#[derive(Debug)]
pub struct SpecError(String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid body `{}`; expected {GRAMMAR}", self.0)
    }
}

impl std::error::Error for SpecError {}

fn numbers(s: &str, count: usize) -> Option<Vec<f64>> {
    let v: Vec<f64> = s.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    (v.len() == count && v.iter().all(|x| x.is_finite())).then_some(v)
}

impl FromStr for BodySpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let err = || SpecError(s.to_string());
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let spec = match (name, args) {
            ("disk", None) => BodySpec::Disk(1.0),
            ("disk", Some(a)) => BodySpec::Disk(numbers(a, 1).ok_or_else(err)?[0]),
            ("ellipse", Some(a)) => {
                let v = numbers(a, 2).ok_or_else(err)?;
                BodySpec::Ellipse(v[0], v[1])
            }
            ("square", None) => BodySpec::Square(1.0),
            ("square", Some(a)) => BodySpec::Square(numbers(a, 1).ok_or_else(err)?[0]),
            ("hexagon", None) => BodySpec::Hexagon,
            ("adomain", Some(a)) => {
                let parts: Vec<&str> = a.split(',').map(str::trim).collect();
                let [r, phi, w] = parts[..] else { return Err(err()) };
                let v = numbers(&format!("{r},{phi}"), 2).ok_or_else(err)?;
                let bulge = match w {
                    "neutral" => Bulge::Neutral,
                    w => Bulge::Weight(numbers(w, 1).ok_or_else(err)?[0]),
                };
                BodySpec::ADomain { r: v[0], phi: v[1], bulge }
            }
            ("polygon", Some(a)) => match a.strip_prefix('@') {
                Some(p) if !p.is_empty() => BodySpec::PolygonFile(PathBuf::from(p)),
                _ => return Err(err()),
            },
            _ => return Err(err()),
        };
        Ok(spec)
    }
}

impl fmt::Display for BodySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodySpec::Disk(r) => write!(f, "disk:{r}"),
            BodySpec::Ellipse(a, b) => write!(f, "ellipse:{a},{b}"),
            BodySpec::Square(s) => write!(f, "square:{s}"),
            BodySpec::Hexagon => write!(f, "hexagon"),
            BodySpec::ADomain { r, phi, bulge } => match bulge {
                Bulge::Neutral => write!(f, "adomain:{r},{phi},neutral"),
                Bulge::Weight(w) => write!(f, "adomain:{r},{phi},{w}"),
            },
            BodySpec::PolygonFile(p) => write!(f, "polygon:@{}", p.display()),
        }
    }
}

impl BodySpec {
    pub fn build(&self) -> anyhow::Result<ConvexBody> {
        Ok(match self {
            BodySpec::Disk(r) => ConvexBody::disk(*r)?,
            BodySpec::Ellipse(a, b) => ConvexBody::ellipse(*a, *b)?,
            BodySpec::Square(s) => ConvexBody::square(*s)?,
            BodySpec::Hexagon => ConvexBody::regular_hexagon(),
            BodySpec::ADomain { r, phi, bulge } => {
                let w = match bulge {
                    Bulge::Neutral => neutral_bulge(*phi),
                    Bulge::Weight(w) => *w,
                };
                ConvexBody::ADomain(construct_adomain(*r, *phi, w)?)
            }
            BodySpec::PolygonFile(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading {}", p.display()))?;
                if text.trim_start().starts_with('[') {
                    let vertices: Vec<Vec2> = serde_json::from_str(&text)
                        .with_context(|| format!("parsing vertices in {}", p.display()))?;
                    ConvexBody::polygon(vertices)?
                } else {
                    let body = body_from_json(&text)?;
                    if body.as_polygon().is_none() {
                        bail!("{} does not describe a polygon", p.display());
                    }
                    body
                }
            }
        })
    }

    /// True for the two bodies with fixed Hadwiger witnesses.
    pub fn is_witness_polygon(&self) -> bool {
        matches!(self, BodySpec::Square(_) | BodySpec::Hexagon)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print_round_trip() {
        for s in [
            "disk:1",
            "disk:0.5",
            "ellipse:1.3,1",
            "square:2",
            "hexagon",
            "adomain:1,0.2617993877991494,neutral",
            "adomain:1,0.3,1.05",
            "polygon:@tri.json",
        ] {
            let spec: BodySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(spec.to_string().parse::<BodySpec>().unwrap(), spec);
        }
        assert_eq!("disk".parse::<BodySpec>().unwrap(), BodySpec::Disk(1.0));
        assert_eq!("square".parse::<BodySpec>().unwrap(), BodySpec::Square(1.0));
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "disk:", "disk:x", "ellipse:1", "ellipse:1,2,3", "hexagon:1", "adomain:1,2", "polygon:file", "cube", "disk:inf"] {
            let e = s.parse::<BodySpec>().unwrap_err();
            assert!(e.to_string().contains("ellipse:a,b"), "{e}");
        }
    }

    #[test]
    fn builds_bodies() {
        assert!("adomain:1,0.2617993877991494,neutral".parse::<BodySpec>().unwrap().build().unwrap().is_smooth());
        assert!("ellipse:1,2".parse::<BodySpec>().unwrap().build().is_err());
        assert!(!"hexagon".parse::<BodySpec>().unwrap().build().unwrap().is_smooth());
    }
}
