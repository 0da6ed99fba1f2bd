//! Points of the complexified complement, of `(C^×)^n`, and the `*` action.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_rat, to_f64, Rat};

use super::{zero_threshold, EXP_GUARD};

/// Exact coordinates carried alongside the floating ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactParts {
    pub re: Vec<Rat>,
    pub im: Vec<Rat>,
}

/// `re + i·im`, a point of the complexification of `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct MPoint {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    pub exact: Option<ExactParts>,
}

impl MPoint {
    pub fn from_f64(re: Vec<f64>, im: Vec<f64>) -> Self {
        MPoint {
            re,
            im,
            exact: None,
        }
    }

    pub fn from_exact(re: Vec<Rat>, im: Vec<Rat>) -> Self {
        MPoint {
            re: re.iter().map(to_f64).collect(),
            im: im.iter().map(to_f64).collect(),
            exact: Some(ExactParts { re, im }),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn dim(&self) -> usize {
        self.re.len()
    }

    /// Largest coordinate difference, real and imaginary parts together.
    pub fn max_abs_diff(&self, other: &MPoint) -> f64 {
        self.re
            .iter()
            .zip(&other.re)
            .chain(self.im.iter().zip(&other.im))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.re
            .iter()
            .chain(&self.im)
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }
}

/// A point of `(C^×)^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CxVector {
    pub z: Vec<Complex64>,
}

impl CxVector {
    pub fn new(z: Vec<Complex64>) -> Result<Self> {
        if let Some(j) = z.iter().position(|c| c.is_zero()) {
            return Err(Error::ZeroCoordinate(j));
        }
        Ok(CxVector { z })
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn re(&self) -> Vec<f64> {
        self.z.iter().map(|c| c.re).collect()
    }

    pub fn im(&self) -> Vec<f64> {
        self.z.iter().map(|c| c.im).collect()
    }
}

/// `(x, y)` with `z_j = i (x_j + i y_j)^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SqrtPair {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// `z = f(re) + i·L(im)` where `L` is the linear part of `f`.
pub fn embed_m(a: &Arrangement, v: &MPoint) -> Result<CxVector> {
    let d = a.dim();
    if v.re.len() != d || v.im.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: v.re.len().max(v.im.len()),
        });
    }
    let mut z = Vec::with_capacity(a.len());
    for (j, f) in a.forms().iter().enumerate() {
        match &v.exact {
            Some(ex) => {
                let re = f.eval(&ex.re);
                let im = f.eval_linear(&ex.im);
                if re.is_zero() && im.is_zero() {
                    return Err(Error::OnHyperplane(j));
                }
                z.push(Complex64::new(to_f64(&re), to_f64(&im)));
            }
            None => {
                let normal = f.normal_f64();
                let re = f.eval_f64(&v.re);
                let im = f.linear_f64(&v.im);
                let scale_re = abs_scale(&normal, &v.re) + to_f64(&f.offset).abs();
                let scale_im = abs_scale(&normal, &v.im);
                if re.abs() <= zero_threshold(scale_re) && im.abs() <= zero_threshold(scale_im) {
                    return Err(Error::OnHyperplane(j));
                }
                z.push(Complex64::new(re, im));
            }
        }
    }
    CxVector::new(z)
}

pub(crate) fn abs_scale(normal: &[f64], v: &[f64]) -> f64 {
    normal.iter().zip(v).map(|(a, x)| (a * x).abs()).sum()
}

/// Principal square root of `-i z_j`, coordinatewise.
pub fn xy_from_z(z: &CxVector) -> Result<SqrtPair> {
    let mut x = Vec::with_capacity(z.len());
    let mut y = Vec::with_capacity(z.len());
    for (j, c) in z.z.iter().enumerate() {
        if c.is_zero() {
            return Err(Error::ZeroCoordinate(j));
        }
        // -i·z with negative zeros cleared, so the negative real axis maps
        // to the upper half plane.
        let w = Complex64::new(c.im + 0.0, -c.re + 0.0).sqrt();
        x.push(w.re);
        y.push(w.im);
    }
    Ok(SqrtPair { x, y })
}

pub(crate) fn check_exponents(lambda: &[f64]) -> Result<()> {
    for (index, &value) in lambda.iter().enumerate() {
        if !value.is_finite() || value.abs() > EXP_GUARD {
            return Err(Error::Overflow {
                index,
                value,
                limit: EXP_GUARD,
            });
        }
    }
    Ok(())
}

/// The `*` action of `(R^n)^∨`: real parts are fixed and
/// `Im_j ↦ e^{2λ_j} x_j² − e^{−2λ_j} y_j²`.
pub fn act(lambda: &[f64], z: &CxVector) -> Result<CxVector> {
    if lambda.len() != z.len() {
        return Err(Error::DimensionMismatch {
            expected: z.len(),
            got: lambda.len(),
        });
    }
    check_exponents(lambda)?;
    let xy = xy_from_z(z)?;
    let out =
        z.z.iter()
            .zip(lambda)
            .enumerate()
            .map(|(j, (c, &l))| {
                // x² − y² = Im z, so only the increments need the exponentials.
                let (x2, y2) = (xy.x[j] * xy.x[j], xy.y[j] * xy.y[j]);
                let im = c.im + x2 * (2.0 * l).exp_m1() - y2 * (-2.0 * l).exp_m1();
                Complex64::new(c.re, im)
            })
            .collect();
    CxVector::new(out)
}

#[derive(Serialize, Deserialize)]
struct MPointJson {
    re: Vec<f64>,
    im: Vec<f64>,
    exact: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    re_exact: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    im_exact: Option<Vec<String>>,
}

impl Serialize for MPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MPointJson {
            re: self.re.clone(),
            im: self.im.clone(),
            exact: self.exact.is_some(),
            re_exact: self
                .exact
                .as_ref()
                .map(|e| e.re.iter().map(format_rat).collect()),
            im_exact: self
                .exact
                .as_ref()
                .map(|e| e.im.iter().map(format_rat).collect()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MPointJson::deserialize(d)?;
        if !raw.exact {
            return Ok(MPoint::from_f64(raw.re, raw.im));
        }
        let parse = |v: Option<Vec<String>>| -> std::result::Result<Vec<Rat>, D::Error> {
            v.ok_or_else(|| D::Error::custom("exact point is missing exact coordinates"))?
                .iter()
                .map(|s| parse_rat(s).map_err(D::Error::custom))
                .collect()
        };
        Ok(MPoint::from_exact(
            parse(raw.re_exact)?,
            parse(raw.im_exact)?,
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct CxJson {
    z: Vec<[f64; 2]>,
}

impl Serialize for CxVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CxJson {
            z: self.z.iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CxVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CxJson::deserialize(d)?;
        CxVector::new(raw.z.iter().map(|p| Complex64::new(p[0], p[1])).collect())
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn embed_examples() {
        let point = Arrangement::from_int_rows(1, &[&[1, 0]]).unwrap();
        let z = embed_m(&point, &MPoint::from_exact(vec![rat(0)], vec![rat(1)])).unwrap();
        assert_eq!(z.z, vec![c(0.0, 1.0)]);
        assert_eq!(
            embed_m(&point, &MPoint::from_exact(vec![rat(0)], vec![rat(0)])),
            Err(Error::OnHyperplane(0))
        );
        assert_eq!(
            embed_m(&point, &MPoint::from_f64(vec![1e-13], vec![-1e-14])),
            Err(Error::OnHyperplane(0))
        );
        let two = Arrangement::from_int_rows(1, &[&[1, 0], &[1, -1]]).unwrap();
        let z = embed_m(&two, &MPoint::from_exact(vec![ratio(1, 2)], vec![rat(0)])).unwrap();
        assert_eq!(z.z, vec![c(0.5, 0.0), c(-0.5, 0.0)]);
    }

    #[test]
    fn square_roots() {
        let xy = xy_from_z(&CxVector::new(vec![c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)]).unwrap())
            .unwrap();
        assert_eq!((xy.x[0], xy.y[0].abs()), (1.0, 0.0));
        assert_eq!((xy.x[1].abs(), xy.y[1]), (0.0, 1.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((xy.x[2] - h).abs() < 1e-15 && (xy.y[2] + h).abs() < 1e-15);
        let back = Complex64::i() * Complex64::new(xy.x[2], xy.y[2]).powi(2);
        assert!((back - c(1.0, 0.0)).norm() < 1e-15);
        assert!(CxVector::new(vec![c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn action_examples() {
        let z = CxVector::new(vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(act(&[0.0], &z).unwrap(), z);
        let moved = act(&[0.5], &z).unwrap();
        assert!((moved.z[0] - c(0.0, std::f64::consts::E)).norm() < 1e-15);
        let w = CxVector::new(vec![c(1.0, 1.0)]).unwrap();
        for l in [-3.0, -0.2, 0.7, 4.0] {
            assert_eq!(act(&[l], &w).unwrap().z[0].re, 1.0);
        }
        assert!(matches!(
            act(&[301.0], &z),
            Err(Error::Overflow { index: 0, .. })
        ));
    }

    #[test]
    fn json_shapes() {
        let m = MPoint::from_exact(vec![ratio(1, 2)], vec![rat(-1)]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"re":[0.5],"im":[-1.0],"exact":true,"re_exact":["1/2"],"im_exact":["-1"]}"#
        );
        assert_eq!(serde_json::from_str::<MPoint>(&s).unwrap(), m);
        let f = MPoint::from_f64(vec![0.25], vec![2.0]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"re":[0.25],"im":[2.0],"exact":false}"#);
        let z = CxVector::new(vec![c(0.0, 1.0), c(-1.0, 1.0)]).unwrap();
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"z":[[0.0,1.0],[-1.0,1.0]]}"#);
        assert_eq!(serde_json::from_str::<CxVector>(&s).unwrap(), z);
    }
}
