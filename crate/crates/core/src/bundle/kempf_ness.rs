//! The convex function `ρ_z(λ) = ‖e^λ·(x, y)‖²` on `W` and the retraction of
//! `N(A)` onto `M(A)` through its unique critical point.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::arrangement::Sign;
use crate::chambers::open_cell_witness;
use crate::error::{Error, Result};

use super::point::{act, check_exponents, xy_from_z, CxVector, MPoint, SqrtPair};
use super::wspace::WSpace;
use super::{
    zero_threshold, Bundle, ARMIJO, DECREMENT_TOL, GRAD_TOL, IMAGE_RESIDUAL, MAX_ITER, SHRINK,
};

#[derive(Debug, Clone, PartialEq)]
pub struct RhoEval {
    pub value: f64,
    pub grad: DVector<f64>,
    pub hess: DMatrix<f64>,
}

fn rho_from_pair(xy: &SqrtPair, w: &WSpace, u: &[f64]) -> Result<RhoEval> {
    let k = w.dim();
    let lambda = w.to_ambient(u);
    check_exponents(&lambda)?;
    let n = xy.x.len();
    let mut plus = vec![0.0; n];
    let mut minus = vec![0.0; n];
    for j in 0..n {
        plus[j] = (2.0 * lambda[j]).exp() * xy.x[j] * xy.x[j];
        minus[j] = (-2.0 * lambda[j]).exp() * xy.y[j] * xy.y[j];
    }
    let value = plus.iter().zip(&minus).map(|(a, b)| a + b).sum();
    let grad = DVector::from_fn(k, |i, _| {
        2.0 * (0..n)
            .map(|j| w.basis[(i, j)] * (plus[j] - minus[j]))
            .sum::<f64>()
    });
    let hess = DMatrix::from_fn(k, k, |i, l| {
        4.0 * (0..n)
            .map(|j| w.basis[(i, j)] * w.basis[(l, j)] * (plus[j] + minus[j]))
            .sum::<f64>()
    });
    Ok(RhoEval { value, grad, hess })
}

/// Value, gradient and Hessian of `ρ_z` at `λ = Bᵀu`.
pub fn rho_eval(z: &CxVector, w: &WSpace, u: &[f64]) -> Result<RhoEval> {
    if u.len() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            got: u.len(),
        });
    }
    rho_from_pair(&xy_from_z(z)?, w, u)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverDiagnostics {
    pub iterations: usize,
    pub grad_norm: f64,
    pub lambda_star: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Retraction {
    /// `λ*` in `W ⊂ R^n`; `act(λ*, z)` lies in `M(A)`.
    pub lambda_star: Vec<f64>,
    pub m: MPoint,
    pub diagnostics: SolverDiagnostics,
}

/// Damped Newton with backtracking on a strictly convex function.
/// Returns the minimizer, iteration count and final `‖grad‖∞`.
fn newton_minimize(xy: &SqrtPair, w: &WSpace, start: &[f64]) -> Result<(Vec<f64>, usize, f64)> {
    let mut u = start.to_vec();
    let mut eval = rho_from_pair(xy, w, &u)?;
    for it in 0..MAX_ITER {
        let gnorm = eval.grad.amax();
        if gnorm <= GRAD_TOL {
            return Ok((u, it, gnorm));
        }
        let neg_grad = -&eval.grad;
        let step = match eval.hess.clone().cholesky() {
            Some(ch) => ch.solve(&neg_grad),
            None => eval
                .hess
                .clone()
                .lu()
                .solve(&neg_grad)
                .ok_or(Error::NoConvergence {
                    iterations: it,
                    grad_norm: gnorm,
                })?,
        };
        let slope = eval.grad.dot(&step);
        if -slope / 2.0 <= DECREMENT_TOL {
            // Inside the quadratic basin: take the full step without a search.
            let trial: Vec<f64> = u.iter().zip(step.iter()).map(|(a, s)| a + s).collect();
            if let Ok(next) = rho_from_pair(xy, w, &trial) {
                if next.grad.amax() <= gnorm {
                    u = trial;
                    eval = next;
                }
            }
            let g = eval.grad.amax();
            return Ok((u, it + 1, g));
        }
        let mut t = 1.0;
        let mut accepted = None;
        while t > 1e-16 {
            let trial: Vec<f64> = u.iter().zip(step.iter()).map(|(a, s)| a + t * s).collect();
            if let Ok(next) = rho_from_pair(xy, w, &trial) {
                if next.value <= eval.value + ARMIJO * t * slope {
                    accepted = Some((trial, next));
                    break;
                }
            }
            t *= SHRINK;
        }
        match accepted {
            Some((trial, next)) => {
                u = trial;
                eval = next;
            }
            None => {
                let g = eval.grad.amax();
                return Ok((u, it + 1, g));
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITER,
        grad_norm: eval.grad.amax(),
    })
}

impl Bundle {
    /// Checks that `z` lies in `N(A)`: its real part is in the affine image of
    /// `f` and the sign region cut out by its imaginary-axis coordinates is
    /// nonempty.
    pub fn check_in_n(&self, z: &CxVector) -> Result<()> {
        let a = self.arrangement();
        if z.len() != a.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                got: z.len(),
            });
        }
        let re = DVector::from_vec(z.re());
        let shifted = &re - &self.offsets;
        let q0 = &self.w.pinv * &shifted;
        let residual = (&self.normals * &q0 - &shifted).norm();
        if residual > IMAGE_RESIDUAL * (1.0 + re.norm()) {
            return Err(Error::NotInN(format!(
                "real part is not in the affine image of f (residual {residual:e})"
            )));
        }
        let constraints: Vec<(usize, Sign)> =
            z.z.iter()
                .enumerate()
                .filter(|(_, c)| c.re.abs() <= zero_threshold(re.amax()))
                .map(|(j, c)| (j, Sign::of_f64(c.im)))
                .collect();
        if constraints.iter().any(|(_, s)| *s == Sign::Zero) {
            return Err(Error::NotInN("a coordinate vanishes".into()));
        }
        if open_cell_witness(a.forms(), a.dim(), &constraints).is_none() {
            return Err(Error::NotInN("sign region S(ã) is empty".into()));
        }
        Ok(())
    }

    pub fn kempf_ness_retract(&self, z: &CxVector) -> Result<Retraction> {
        self.retract_from(z, &vec![0.0; self.w.dim()])
    }

    /// Retraction started from W-coordinates `start`.
    pub fn retract_from(&self, z: &CxVector, start: &[f64]) -> Result<Retraction> {
        self.check_in_n(z)?;
        if start.len() != self.w.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.w.dim(),
                got: start.len(),
            });
        }
        let xy = xy_from_z(z)?;
        let (u, iterations, grad_norm) = newton_minimize(&xy, &self.w, start)?;
        let lambda_star: Vec<f64> = self.w.to_ambient(&u).into_iter().map(|x| x + 0.0).collect();
        let moved = act(&lambda_star, z)?;
        let re = DVector::from_vec(moved.re()) - &self.offsets;
        let im = DVector::from_vec(moved.im());
        let m_re = &self.w.pinv * &re;
        let m_im = &self.w.pinv * &im;
        let residual = (&self.normals * &m_im - &im).norm();
        if residual > IMAGE_RESIDUAL * (1.0 + im.norm()) {
            return Err(Error::NoConvergence {
                iterations,
                grad_norm,
            });
        }
        Ok(Retraction {
            diagnostics: SolverDiagnostics {
                iterations,
                grad_norm,
                lambda_star: lambda_star.clone(),
            },
            lambda_star,
            m: MPoint::from_f64(
                m_re.iter().copied().collect(),
                m_im.iter().copied().collect(),
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::arrangement::Arrangement;
    use crate::bundle::embed_m;
    use crate::rational::ratio;

    fn two_points() -> Bundle {
        Bundle::from_arrangement(Arrangement::from_int_rows(1, &[&[1, 0], &[1, -1]]).unwrap())
    }

    fn cx(parts: &[(f64, f64)]) -> CxVector {
        CxVector::new(parts.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap()
    }

    #[test]
    fn trivial_w_gives_squared_norm() {
        let b = Bundle::from_arrangement(Arrangement::from_int_rows(1, &[&[1, 0]]).unwrap());
        let z = cx(&[(1.0, 0.0)]);
        let ev = rho_eval(&z, b.w(), &[]).unwrap();
        assert!((ev.value - 1.0).abs() < 1e-15);
        assert_eq!(ev.grad.len(), 0);
        assert_eq!(ev.hess.shape(), (0, 0));
    }

    #[test]
    fn critical_at_embedded_points() {
        let b = two_points();
        let m = MPoint::from_exact(vec![ratio(1, 3)], vec![ratio(-2, 1)]);
        let z = embed_m(b.arrangement(), &m).unwrap();
        let ev = rho_eval(&z, b.w(), &[0.0]).unwrap();
        assert!(ev.grad.amax() < 1e-14, "{}", ev.grad);
        assert!(ev.hess[(0, 0)] > 0.0);
    }

    #[test]
    fn gradient_matches_central_differences() {
        let b = two_points();
        let z = cx(&[(0.5, 1.5), (-0.5, -0.25)]);
        for &u in &[-1.0, -0.3, 0.0, 0.7, 2.0] {
            let ev = rho_eval(&z, b.w(), &[u]).unwrap();
            let h = 1e-5;
            let fd = (rho_eval(&z, b.w(), &[u + h]).unwrap().value
                - rho_eval(&z, b.w(), &[u - h]).unwrap().value)
                / (2.0 * h);
            assert!((fd - ev.grad[0]).abs() <= 1e-6 * ev.grad[0].abs().max(1.0));
            let hd = (rho_eval(&z, b.w(), &[u + h]).unwrap().grad[0]
                - rho_eval(&z, b.w(), &[u - h]).unwrap().grad[0])
                / (2.0 * h);
            assert!((hd - ev.hess[(0, 0)]).abs() <= 1e-5 * ev.hess[(0, 0)].max(1.0));
        }
    }

    #[test]
    fn retracting_an_embedded_point_is_the_identity() {
        let b = two_points();
        let m = MPoint::from_f64(vec![0.25], vec![1.5]);
        let r = b.kempf_ness_retract(&b.embed_m(&m).unwrap()).unwrap();
        assert!(r.lambda_star.iter().all(|l| l.abs() < 1e-12));
        assert!(r.m.max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn retraction_undoes_an_orbit_move() {
        let b = two_points();
        let m = MPoint::from_f64(vec![0.4], vec![-0.7]);
        let lambda0 = b.w().to_ambient(&[1.3]);
        let z = act(&lambda0, &b.embed_m(&m).unwrap()).unwrap();
        let r = b.kempf_ness_retract(&z).unwrap();
        assert!(r.diagnostics.grad_norm <= GRAD_TOL);
        assert!(r.m.max_abs_diff(&m) < 1e-9);
        for (a, b) in r.lambda_star.iter().zip(&lambda0) {
            assert!((a + b).abs() < 1e-9);
        }
        let other = b.retract_from(&z, &[-2.0]).unwrap();
        assert!((other.lambda_star[0] - r.lambda_star[0]).abs() < 1e-8);
    }

    #[test]
    fn real_part_off_the_image_is_rejected() {
        let b = two_points();
        let z = cx(&[(0.0, 1.0), (0.0, 1.0)]);
        assert!(matches!(b.kempf_ness_retract(&z), Err(Error::NotInN(_))));
    }

    #[test]
    fn empty_sign_region_is_rejected() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        let b = Bundle::from_arrangement(a);
        let z = cx(&[(0.0, 1.0), (0.0, 1.0), (0.0, -1.0)]);
        assert!(matches!(b.check_in_n(&z), Err(Error::NotInN(_))));
        let ok = cx(&[(0.0, 1.0), (0.0, 1.0), (0.0, 1.0)]);
        assert!(b.check_in_n(&ok).is_ok());
    }

    #[test]
    fn start_dimension_is_checked() {
        let b = two_points();
        let z = b.embed_m(&MPoint::from_f64(vec![0.5], vec![0.0])).unwrap();
        assert!(matches!(
            b.retract_from(&z, &[0.0, 0.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
