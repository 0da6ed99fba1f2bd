//! Points of the glued chamber model, its fibers over `V`, and the embedding
//! into `D^n` where `D` is the line with a doubled origin.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Sign, SignVector};
use crate::chambers::{enumerate_chambers, enumerate_chambers_capped, open_cell_witness, Chamber};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{format_rat, parse_rat, Rat};

/// A point of the model: a base point together with a chamber chart whose
/// closure contains it. Stored in canonical form (see [`ZModel::canonicalize`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZPoint {
    pub base: Vec<Rat>,
    pub chart: SignVector,
}

/// One coordinate of `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DCoord {
    Value(Rat),
    P,
    M,
}

impl fmt::Display for DCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DCoord::Value(r) => write!(f, "{}", format_rat(r)),
            DCoord::P => write!(f, "p"),
            DCoord::M => write!(f, "m"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DPoint(pub Vec<DCoord>);

impl DPoint {
    pub fn parse(items: &[&str]) -> Result<DPoint> {
        items
            .iter()
            .map(|s| match s.trim() {
                "p" => Ok(DCoord::P),
                "m" => Ok(DCoord::M),
                other => {
                    let r = parse_rat(other)?;
                    if r.is_zero() {
                        Err(Error::MalformedInput(
                            "D coordinates must be nonzero or p/m".into(),
                        ))
                    } else {
                        Ok(DCoord::Value(r))
                    }
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(DPoint)
    }

    /// The real vector underneath: symbols become zero.
    pub fn real_part(&self) -> Vec<Rat> {
        self.0
            .iter()
            .map(|c| match c {
                DCoord::Value(r) => r.clone(),
                _ => Rat::zero(),
            })
            .collect()
    }
}

/// Why a point of `D^n` is not in the image of the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonMember {
    /// The real vector is not of the form `f(q)`.
    NotInAffineImage,
    /// The sign region `S(ã)` is empty.
    EmptySignRegion,
    DimensionMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// A point of `S(ã)` when the point is a member.
    pub witness: Option<Vec<Rat>>,
    /// `q0` with `f(q0)` equal to the real part, when one exists.
    pub base: Option<Vec<Rat>>,
    pub reason: Option<NonMember>,
}

/// An arrangement bundled with its sorted chamber table.
#[derive(Debug, Clone)]
pub struct ZModel {
    arrangement: Arrangement,
    chambers: Vec<Chamber>,
}

impl ZModel {
    pub fn new(arrangement: Arrangement) -> Self {
        let chambers = enumerate_chambers(&arrangement);
        ZModel {
            arrangement,
            chambers,
        }
    }

    pub fn with_cap(arrangement: Arrangement, cap: usize) -> Result<Self> {
        let chambers = enumerate_chambers_capped(&arrangement, cap)?;
        Ok(ZModel {
            arrangement,
            chambers,
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn chamber_index(&self, signs: &SignVector) -> Option<usize> {
        self.chambers.binary_search_by(|c| c.signs.cmp(signs)).ok()
    }

    pub fn chamber(&self, signs: &SignVector) -> Option<&Chamber> {
        self.chamber_index(signs).map(|i| &self.chambers[i])
    }

    /// Canonical representative of `(chart, q)`: the chart becomes the
    /// composition `sign(q) ∘ chart`, the unique chamber identified with
    /// `chart` over `q`.
    pub fn canonicalize(&self, chart: &SignVector, q: &[Rat]) -> Result<ZPoint> {
        let sv = self.arrangement.sign_vector(q)?;
        if chart.len() != sv.len() {
            return Err(Error::DimensionMismatch {
                expected: sv.len(),
                got: chart.len(),
            });
        }
        let composed = sv.compose(chart);
        if self.chamber_index(&composed).is_none() {
            return Err(Error::InternalInconsistency(format!(
                "composed sign vector {composed} is not a chamber"
            )));
        }
        Ok(ZPoint {
            base: q.to_vec(),
            chart: composed,
        })
    }

    pub fn z_equal(&self, z1: &ZPoint, z2: &ZPoint) -> bool {
        if z1.base != z2.base {
            return false;
        }
        match (
            self.canonicalize(&z1.chart, &z1.base),
            self.canonicalize(&z2.chart, &z2.base),
        ) {
            (Ok(a), Ok(b)) => a.chart == b.chart,
            _ => false,
        }
    }

    /// All points lying over `q`, one per chamber whose closure contains `q`.
    pub fn fiber(&self, q: &[Rat]) -> Result<Vec<ZPoint>> {
        let sv = self.arrangement.sign_vector(q)?;
        Ok(self
            .chambers
            .iter()
            .filter(|c| sv.conforms_to(&c.signs))
            .map(|c| ZPoint {
                base: q.to_vec(),
                chart: c.signs.clone(),
            })
            .collect())
    }

    /// Coordinate `j` is `f_j(base)` when nonzero, otherwise `p`/`m` by the
    /// chart's sign.
    pub fn embed_d(&self, z: &ZPoint) -> Result<DPoint> {
        let vals = self.arrangement.eval(&z.base)?;
        Ok(DPoint(
            vals.into_iter()
                .zip(&z.chart.0)
                .map(|(v, &s)| {
                    if !v.is_zero() {
                        DCoord::Value(v)
                    } else if s == Sign::Minus {
                        DCoord::M
                    } else {
                        DCoord::P
                    }
                })
                .collect(),
        ))
    }

    /// Decides whether `ã` lies in the image of the model in `D^n`: its real
    /// part must be `f(q0)` for some `q0`, and `S(ã)` must be nonempty.
    pub fn d_image_membership(&self, point: &DPoint) -> Membership {
        let a = &self.arrangement;
        let no = |reason| Membership {
            member: false,
            witness: None,
            base: None,
            reason: Some(reason),
        };
        if point.0.len() != a.len() {
            return no(NonMember::DimensionMismatch);
        }
        let rhs: Vec<Rat> = point
            .real_part()
            .iter()
            .zip(a.offsets())
            .map(|(v, c)| v - c)
            .collect();
        let Some(q0) = linalg::solve(&a.normal_matrix(), &rhs, a.dim()) else {
            return no(NonMember::NotInAffineImage);
        };
        let constraints: Vec<(usize, Sign)> = point
            .0
            .iter()
            .enumerate()
            .filter_map(|(j, c)| match c {
                DCoord::P => Some((j, Sign::Plus)),
                DCoord::M => Some((j, Sign::Minus)),
                DCoord::Value(_) => None,
            })
            .collect();
        match open_cell_witness(a.forms(), a.dim(), &constraints) {
            Some(w) => Membership {
                member: true,
                witness: Some(w),
                base: Some(q0),
                reason: None,
            },
            None => Membership {
                member: false,
                witness: None,
                base: Some(q0),
                reason: Some(NonMember::EmptySignRegion),
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ZPointJson {
    base: Vec<String>,
    chart: String,
}

impl Serialize for ZPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ZPointJson {
            base: self.base.iter().map(format_rat).collect(),
            chart: self.chart.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ZPointJson::deserialize(d)?;
        let base = raw
            .base
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let chart = raw.chart.parse().map_err(D::Error::custom)?;
        Ok(ZPoint { base, chart })
    }
}

#[derive(Serialize, Deserialize)]
struct DPointJson {
    coords: Vec<String>,
}

impl Serialize for DPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DPointJson {
            coords: self.0.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DPointJson::deserialize(d)?;
        let items: Vec<&str> = raw.coords.iter().map(String::as_str).collect();
        DPoint::parse(&items).map_err(D::Error::custom)
    }
}
