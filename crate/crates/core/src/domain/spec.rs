//! Domain descriptions on S²(r) and their JSON form.
//!
//! ```json
//! {"kind": "rect", "params": {"theta": [0.78, 1.57], "phi": [0.0, 1.57]},
//!  "manifold": {"n": 2, "r": 1.0}}
//! ```
//!
//! Every domain carries a level set, positive inside, used both to rasterize
//! it and to place the boundary between cell centers.

use std::f64::consts::PI;

use base64::Engine;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::sphere_geometry::ManifoldSpec;

const TAU: f64 = 2.0 * PI;

#[derive(Debug, Clone, PartialEq)]
pub enum DomainKind {
    /// Cap of radius θ₀ about the north pole.
    Cap { theta0: f64 },
    /// Cap of radius θ₀ about (θ_c, φ_c).
    OffPoleCap { center: (f64, f64), theta0: f64 },
    /// θ ∈ [θ_a, θ_b], φ ∈ [φ_a, φ_b] (longitudes may wrap).
    Rect { theta: (f64, f64), phi: (f64, f64) },
    Union(Vec<DomainKind>),
    /// Bitmap over the whole sphere, rows in θ from the north pole, columns
    /// in φ from 0; sampled at cell centers.
    Grid { rows: usize, cols: usize, bits: Vec<bool> },
}

/// Angular bounding box of a domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub theta: (f64, f64),
    pub phi: (f64, f64),
    /// Spans all longitudes with wrap-around.
    pub periodic: bool,
}

impl BoundingBox {
    fn full(theta: (f64, f64)) -> Self {
        Self {
            theta,
            phi: (0.0, TAU),
            periodic: true,
        }
    }
}

/// Longitude offset of φ from φ₀ in (−π, π].
fn wrap(d: f64) -> f64 {
    let mut d = (d + PI).rem_euclid(TAU) - PI;
    if d <= -PI {
        d += TAU;
    }
    d
}

/// Great-circle distance between (θ₁, φ₁) and (θ₂, φ₂) on the unit sphere.
pub fn geodesic_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (t1, p1) = a;
    let (t2, p2) = b;
    let h = ((t2 - t1) * 0.5).sin().powi(2) + t1.sin() * t2.sin() * ((p2 - p1) * 0.5).sin().powi(2);
    2.0 * h.clamp(0.0, 1.0).sqrt().asin()
}

impl DomainKind {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::DomainSpec(m));
        match self {
            DomainKind::Cap { theta0 } => {
                if !(*theta0 > 0.0 && *theta0 < PI) {
                    return bad(format!("cap radius {theta0} outside (0, pi)"));
                }
            }
            DomainKind::OffPoleCap { center, theta0 } => {
                if !(*theta0 > 0.0 && *theta0 < PI) {
                    return bad(format!("cap radius {theta0} outside (0, pi)"));
                }
                if !(0.0..=PI).contains(&center.0) || !center.1.is_finite() {
                    return bad(format!("cap center {center:?} is not a point of the sphere"));
                }
            }
            DomainKind::Rect { theta, phi } => {
                if !(0.0 <= theta.0 && theta.0 < theta.1 && theta.1 <= PI) {
                    return bad(format!("latitude bounds {theta:?} not inside [0, pi]"));
                }
                let width = phi.1 - phi.0;
                if !(width > 0.0 && width <= TAU && phi.0.is_finite()) {
                    return bad(format!("longitude bounds {phi:?} not an interval of width (0, 2pi]"));
                }
                if theta.0 == 0.0 && theta.1 == PI && width >= TAU {
                    return bad("rectangle covers the whole sphere".into());
                }
            }
            DomainKind::Union(parts) => {
                if parts.is_empty() {
                    return bad("union has no parts".into());
                }
                for p in parts {
                    p.validate()?;
                }
            }
            DomainKind::Grid { rows, cols, bits } => {
                if *rows == 0 || *cols == 0 || bits.len() != rows * cols {
                    return bad("bitmap dimensions do not match its bits".into());
                }
                if !bits.iter().any(|b| *b) {
                    return Err(Error::EmptyDomain);
                }
                if bits.iter().all(|b| *b) {
                    return bad("bitmap covers the whole sphere".into());
                }
            }
        }
        Ok(())
    }

    /// Signed level set, positive inside, in radians of arc where geometric.
    pub fn level(&self, theta: f64, phi: f64) -> f64 {
        match self {
            DomainKind::Cap { theta0 } => theta0 - theta,
            DomainKind::OffPoleCap { center, theta0 } => theta0 - geodesic_distance((theta, phi), *center),
            DomainKind::Rect { theta: t, phi: p } => {
                let mut m = f64::INFINITY;
                if t.0 > 0.0 {
                    m = m.min(theta - t.0);
                }
                if t.1 < PI {
                    m = m.min(t.1 - theta);
                }
                let width = p.1 - p.0;
                if width < TAU {
                    // Offset into the interval measured from its midpoint.
                    let half = 0.5 * width;
                    let d = wrap(phi - (p.0 + half));
                    m = m.min((half - d.abs()) * theta.sin().max(0.0));
                }
                m
            }
            DomainKind::Union(parts) => parts
                .iter()
                .map(|p| p.level(theta, phi))
                .fold(f64::NEG_INFINITY, f64::max),
            DomainKind::Grid { rows, cols, bits } => {
                let r = ((theta / PI * *rows as f64).floor().max(0.0) as usize).min(rows - 1);
                let c = ((phi.rem_euclid(TAU) / TAU * *cols as f64).floor() as usize).min(cols - 1);
                if bits[r * cols + c] {
                    0.5
                } else {
                    -0.5
                }
            }
        }
    }

    pub fn bounding_box(&self) -> BoundingBox {
        match self {
            DomainKind::Cap { theta0 } => BoundingBox::full((0.0, *theta0)),
            DomainKind::OffPoleCap { center, theta0 } => {
                let (tc, pc) = *center;
                let lo = tc - theta0;
                let hi = tc + theta0;
                if lo <= 0.0 || hi >= PI {
                    BoundingBox::full((lo.max(0.0), hi.min(PI)))
                } else {
                    let w = (theta0.sin() / tc.sin()).clamp(-1.0, 1.0).asin();
                    BoundingBox {
                        theta: (lo, hi),
                        phi: (pc - w, pc + w),
                        periodic: false,
                    }
                }
            }
            DomainKind::Rect { theta, phi } => {
                if phi.1 - phi.0 >= TAU {
                    BoundingBox::full(*theta)
                } else {
                    BoundingBox {
                        theta: *theta,
                        phi: *phi,
                        periodic: false,
                    }
                }
            }
            DomainKind::Union(parts) => {
                let (lo, hi) = parts.iter().map(|p| p.bounding_box().theta).fold(
                    (PI, 0.0_f64),
                    |(lo, hi), (a, b)| (lo.min(a), hi.max(b)),
                );
                BoundingBox::full((lo, hi))
            }
            DomainKind::Grid { rows, cols, bits } => {
                let used: Vec<usize> = (0..*rows).filter(|r| bits[r * cols..(r + 1) * cols].iter().any(|b| *b)).collect();
                let first = *used.first().unwrap_or(&0);
                let last = *used.last().unwrap_or(&(rows - 1));
                let h = PI / *rows as f64;
                BoundingBox::full((first as f64 * h, (last + 1) as f64 * h))
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            DomainKind::Cap { .. } => "cap",
            DomainKind::OffPoleCap { .. } => "offpole_cap",
            DomainKind::Rect { .. } => "rect",
            DomainKind::Union(_) => "union",
            DomainKind::Grid { .. } => "grid",
        }
    }

    /// Whether the boundary comes from a bitmap rather than a geometric level set.
    pub fn is_bitmap(&self) -> bool {
        match self {
            DomainKind::Grid { .. } => true,
            DomainKind::Union(parts) => parts.iter().any(DomainKind::is_bitmap),
            _ => false,
        }
    }
}

/// A domain together with the sphere S²(r) it lives on.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub manifold: ManifoldSpec,
}

impl DomainSpec {
    pub fn new(kind: DomainKind, manifold: ManifoldSpec) -> Result<Self> {
        if manifold.n() != 2 {
            return Err(Error::DomainSpec(format!(
                "domain solves are two-dimensional, got n = {}",
                manifold.n()
            )));
        }
        kind.validate()?;
        Ok(Self { kind, manifold })
    }

    pub fn cap(theta0: f64, r: f64) -> Result<Self> {
        Self::new(DomainKind::Cap { theta0 }, ManifoldSpec::scaled_sphere(2, r)?)
    }

    pub fn rect(theta: (f64, f64), phi: (f64, f64), r: f64) -> Result<Self> {
        Self::new(DomainKind::Rect { theta, phi }, ManifoldSpec::scaled_sphere(2, r)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDomain = serde_json::from_str(text).map_err(|e| Error::DomainSpec(e.to_string()))?;
        let manifold = match raw.manifold {
            Some(m) => ManifoldSpec::scaled_sphere(m.n, m.r)
                .map_err(|e| Error::DomainSpec(format!("manifold: {e}")))?,
            None => ManifoldSpec::unit_sphere(2)?,
        };
        let kind = parse_kind(&raw.kind, raw.params)?;
        Self::new(kind, manifold)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    kind: String,
    params: Value,
    manifold: Option<RawManifold>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifold {
    n: usize,
    r: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPart {
    kind: String,
    params: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CapParams {
    theta0: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OffPoleParams {
    center: [f64; 2],
    theta0: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RectParams {
    theta: [f64; 2],
    phi: [f64; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UnionParams {
    parts: Vec<RawPart>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridParams {
    rows: usize,
    cols: usize,
    bits: String,
}

fn params<T: for<'de> Deserialize<'de>>(kind: &str, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::DomainSpec(format!("{kind} params: {e}")))
}

fn parse_kind(kind: &str, v: Value) -> Result<DomainKind> {
    Ok(match kind {
        "cap" => {
            let p: CapParams = params(kind, v)?;
            DomainKind::Cap { theta0: p.theta0 }
        }
        "offpole_cap" => {
            let p: OffPoleParams = params(kind, v)?;
            DomainKind::OffPoleCap {
                center: (p.center[0], p.center[1]),
                theta0: p.theta0,
            }
        }
        "rect" => {
            let p: RectParams = params(kind, v)?;
            DomainKind::Rect {
                theta: (p.theta[0], p.theta[1]),
                phi: (p.phi[0], p.phi[1]),
            }
        }
        "union" => {
            let p: UnionParams = params(kind, v)?;
            DomainKind::Union(
                p.parts
                    .into_iter()
                    .map(|part| parse_kind(&part.kind, part.params))
                    .collect::<Result<_>>()?,
            )
        }
        "grid" => {
            let p: GridParams = params(kind, v)?;
            DomainKind::Grid {
                rows: p.rows,
                cols: p.cols,
                bits: decode_bits(&p.bits, p.rows * p.cols)?,
            }
        }
        other => return Err(Error::DomainSpec(format!("unknown domain kind '{other}'"))),
    })
}

/// Row-major bits, most significant bit first within each byte.
pub fn decode_bits(text: &str, count: usize) -> Result<Vec<bool>> {
    let bytes = base64::engine::general_purpose::STANDARD
        .decode(text.trim())
        .map_err(|e| Error::DomainSpec(format!("bitmap: {e}")))?;
    if bytes.len() * 8 < count {
        return Err(Error::DomainSpec(format!(
            "bitmap holds {} bits, need {count}",
            bytes.len() * 8
        )));
    }
    Ok((0..count).map(|k| bytes[k / 8] & (0x80 >> (k % 8)) != 0).collect())
}

pub fn encode_bits(bits: &[bool]) -> String {
    let mut bytes = vec![0u8; bits.len().div_ceil(8)];
    for (k, b) in bits.iter().enumerate() {
        if *b {
            bytes[k / 8] |= 0x80 >> (k % 8);
        }
    }
    base64::engine::general_purpose::STANDARD.encode(bytes)
}
