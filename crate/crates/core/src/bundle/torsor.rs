//! Projection to the chamber model, the induced `V^∨` action, fiber
//! transport between points of one fiber, and per-chart local sections.

use nalgebra::DVector;
use num_traits::Zero;

use crate::arrangement::{Sign, SignVector};
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::rational::{from_f64, to_f64, Rat};
use crate::zmodel::ZPoint;

use super::point::{abs_scale, act, xy_from_z, MPoint};
use super::wspace::restrict_to_v;
use super::{zero_threshold, Bundle, BASE_TOL};

impl Bundle {
    /// The projection `M(A) → Z(A)`: the base is the real part, and on each
    /// hyperplane through it the chart takes the sign of the imaginary part.
    pub fn smoosh(&self, v: &MPoint) -> Result<ZPoint> {
        let a = self.arrangement();
        if v.re.len() != a.dim() || v.im.len() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: v.re.len(),
            });
        }
        match &v.exact {
            Some(ex) => {
                let mut chart = Vec::with_capacity(a.len());
                for (j, f) in a.forms().iter().enumerate() {
                    let s = match Sign::of(&f.eval(&ex.re)) {
                        Sign::Zero => Sign::of(&f.eval_linear(&ex.im)),
                        s => s,
                    };
                    if s == Sign::Zero {
                        return Err(Error::OnHyperplane(j));
                    }
                    chart.push(s);
                }
                let chart = SignVector(chart);
                if self.model().chamber_index(&chart).is_none() {
                    return Err(Error::InternalInconsistency(format!(
                        "projected chart {chart} is not a chamber"
                    )));
                }
                Ok(ZPoint {
                    base: ex.re.clone(),
                    chart,
                })
            }
            None => self.smoosh_float(v),
        }
    }

    fn smoosh_float(&self, v: &MPoint) -> Result<ZPoint> {
        let a = self.arrangement();
        let mut chart = Vec::with_capacity(a.len());
        let mut zero_set = Vec::new();
        for (j, f) in a.forms().iter().enumerate() {
            let normal = f.normal_f64();
            let re = f.eval_f64(&v.re);
            if re.abs() > zero_threshold(abs_scale(&normal, &v.re) + to_f64(&f.offset).abs()) {
                chart.push(Sign::of_f64(re));
                continue;
            }
            let im = f.linear_f64(&v.im);
            if im.abs() <= zero_threshold(abs_scale(&normal, &v.im)) {
                return Err(Error::OnHyperplane(j));
            }
            zero_set.push(j);
            chart.push(Sign::of_f64(im));
        }
        let base = self.snap_base(&v.re, &zero_set)?;
        let exact_signs = a.sign_vector(&base)?;
        for (j, (&s, &c)) in exact_signs.0.iter().zip(&chart).enumerate() {
            if s != Sign::Zero && s != c {
                return Err(Error::AmbiguousSign(j));
            }
            if s == Sign::Zero && zero_set.binary_search(&j).is_err() {
                return Err(Error::AmbiguousSign(j));
            }
        }
        let chart = SignVector(chart);
        if self.model().chamber_index(&chart).is_none() {
            return Err(Error::AmbiguousSign(zero_set.first().copied().unwrap_or(0)));
        }
        Ok(ZPoint { base, chart })
    }

    /// Moves the floating point `re` by the smallest exact correction that
    /// puts it on every hyperplane in `zero_set`.
    fn snap_base(&self, re: &[f64], zero_set: &[usize]) -> Result<Vec<Rat>> {
        let a = self.arrangement();
        let d = a.dim();
        let q: Vec<Rat> = re.iter().map(|&x| from_f64(x)).collect();
        if zero_set.is_empty() {
            return Ok(q);
        }
        let mut aug: RatMatrix = zero_set
            .iter()
            .map(|&j| {
                let f = &a.forms()[j];
                let mut row = f.normal.clone();
                row.push(-f.eval(&q));
                row
            })
            .collect();
        let pivots = linalg::rref(&mut aug);
        if pivots.last() == Some(&d) {
            return Err(Error::AmbiguousSign(zero_set[0]));
        }
        let r: RatMatrix = aug.iter().map(|row| row[..d].to_vec()).collect();
        let rhs: Vec<Rat> = aug.iter().map(|row| row[d].clone()).collect();
        let rt = linalg::transpose(&r, d);
        let gram = linalg::matmul(&r, &rt, d, r.len());
        let y = linalg::solve(&gram, &rhs, r.len()).expect("echelon rows are independent");
        Ok((0..d)
            .map(|k| {
                let delta = r
                    .iter()
                    .zip(&y)
                    .fold(Rat::zero(), |acc, (row, yi)| acc + &row[k] * yi);
                &q[k] + delta
            })
            .collect())
    }

    /// Whether two projected points agree: equal charts and bases within
    /// [`BASE_TOL`].
    pub fn same_point(&self, z1: &ZPoint, z2: &ZPoint) -> bool {
        let m = self.model();
        let (Ok(c1), Ok(c2)) = (
            m.canonicalize(&z1.chart, &z1.base),
            m.canonicalize(&z2.chart, &z2.base),
        ) else {
            return false;
        };
        c1.chart == c2.chart
            && z1
                .base
                .iter()
                .zip(&z2.base)
                .all(|(a, b)| (to_f64(a) - to_f64(b)).abs() <= BASE_TOL)
    }

    /// The `V^∨` action: lift `φ` to `(R^n)^∨`, act, and retract back onto
    /// `M(A)`.
    pub fn act_dual(&self, phi: &[f64], m: &MPoint) -> Result<MPoint> {
        self.act_dual_shifted(phi, m, &vec![0.0; self.w().dim()])
    }

    /// As [`Bundle::act_dual`], with the lift shifted by the element of `W`
    /// with coordinates `shift`.
    pub fn act_dual_shifted(&self, phi: &[f64], m: &MPoint, shift: &[f64]) -> Result<MPoint> {
        let d = self.arrangement().dim();
        if phi.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: phi.len(),
            });
        }
        let mut lambda = &self.w().lift * DVector::from_column_slice(phi);
        for (l, s) in lambda.iter_mut().zip(self.w().to_ambient(shift)) {
            *l += s;
        }
        let z = self.embed_m(m)?;
        let moved = act(lambda.as_slice(), &z)?;
        Ok(self.kempf_ness_retract(&moved)?.m)
    }

    /// The unique `φ ∈ V^∨` with `act_dual(φ, m) = m2`.
    pub fn fiber_transport(&self, m: &MPoint, m2: &MPoint) -> Result<Vec<f64>> {
        let (z1, z2) = (self.smoosh(m)?, self.smoosh(m2)?);
        if !self.same_point(&z1, &z2) {
            return Err(Error::DifferentFibers(format!(
                "charts {} and {} or bases differ",
                z1.chart, z2.chart
            )));
        }
        let source = self.embed_m(m)?;
        let target = self.embed_m(m2)?;
        let xy = xy_from_z(&source)?;
        let mut lambda = Vec::with_capacity(source.len());
        for j in 0..source.len() {
            let (x2, y2) = (xy.x[j] * xy.x[j], xy.y[j] * xy.y[j]);
            let b = target.z[j].im;
            let disc = (b * b + 4.0 * x2 * y2).sqrt();
            // u = e^{2λ} solves x² u² − b u − y² = 0; pick the stable form.
            let u = if b >= 0.0 {
                (b + disc) / (2.0 * x2)
            } else {
                2.0 * y2 / (disc - b)
            };
            if !(u.is_finite() && u > 0.0) {
                return Err(Error::NoRoot(j));
            }
            lambda.push(0.5 * u.ln());
        }
        Ok(restrict_to_v(self.arrangement(), &lambda))
    }

    /// `q + i(w − q)` for the witness `w` of chamber `chart`: a point of
    /// `M(A)` projecting to the canonical point `(q, chart)`.
    pub fn local_section(&self, chart: &SignVector, q: &[Rat]) -> Result<MPoint> {
        self.arrangement().check_point(q)?;
        let chamber = self
            .model()
            .chamber(chart)
            .ok_or_else(|| Error::MalformedInput(format!("{chart} is not a chamber")))?;
        let im = chamber.witness.iter().zip(q).map(|(w, x)| w - x).collect();
        Ok(MPoint::from_exact(q.to_vec(), im))
    }
}
