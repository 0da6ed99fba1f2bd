//! `W`: linear forms on `R^n` that are constant on the affine image of `f`.

use nalgebra::DMatrix;

use crate::arrangement::Arrangement;
use crate::linalg::{self, RatMatrix};
use crate::rational::{to_f64, Rat};

#[derive(Debug, Clone)]
pub struct WSpace {
    /// `k × n`, rows span `W`; `k = n − d`.
    pub basis: DMatrix<f64>,
    pub basis_exact: RatMatrix,
    /// `n × d` minimum-norm right inverse of `λ ↦ Nᵀλ`, i.e. `N (NᵀN)⁻¹`.
    pub lift: DMatrix<f64>,
    /// `d × n` left inverse `(NᵀN)⁻¹ Nᵀ` of the linearization.
    pub pinv: DMatrix<f64>,
}

impl WSpace {
    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// `λ = Bᵀ u` for W-coordinates `u`.
    pub fn to_ambient(&self, u: &[f64]) -> Vec<f64> {
        let n = self.basis.ncols();
        (0..n)
            .map(|j| {
                u.iter()
                    .enumerate()
                    .map(|(i, ui)| ui * self.basis[(i, j)])
                    .sum()
            })
            .collect()
    }
}

fn to_dmatrix(m: &RatMatrix, nrows: usize, ncols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(nrows, ncols, |i, j| to_f64(&m[i][j]))
}

/// Exact kernel of the transposed normal matrix, plus the lift and left
/// inverse of the linearization, all computed over the rationals.
pub fn w_basis(a: &Arrangement) -> WSpace {
    let n = a.len();
    let d = a.dim();
    let normals = a.normal_matrix();
    let nt = linalg::transpose(&normals, d);
    let basis_exact = linalg::nullspace(&nt, n);
    let gram = linalg::matmul(&nt, &normals, n, d);
    let gram_inv = linalg::inverse(&gram).expect("normals span, so NᵀN is invertible");
    let lift: RatMatrix = linalg::matmul(&normals, &gram_inv, d, d);
    let pinv: RatMatrix = linalg::transpose(&lift, d);
    WSpace {
        basis: to_dmatrix(&basis_exact, basis_exact.len(), n),
        lift: to_dmatrix(&lift, n, d),
        pinv: to_dmatrix(&pinv, d, n),
        basis_exact,
    }
}

/// `Nᵀ λ`: the form `λ ∘ L` on `V`.
pub fn restrict_to_v(a: &Arrangement, lambda: &[f64]) -> Vec<f64> {
    (0..a.dim())
        .map(|k| {
            a.forms()
                .iter()
                .zip(lambda)
                .map(|(f, l)| to_f64(&f.normal[k]) * l)
                .sum()
        })
        .collect()
}

pub fn exact_annihilates(a: &Arrangement, xi: &[Rat]) -> bool {
    use num_traits::Zero;
    (0..a.dim()).all(|k| {
        a.forms()
            .iter()
            .zip(xi)
            .fold(Rat::zero(), |acc, (f, x)| acc + &f.normal[k] * x)
            .is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn square_arrangement_has_trivial_w() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let w = w_basis(&a);
        assert_eq!(w.dim(), 0);
        assert_eq!(w.lift, DMatrix::identity(2, 2));
    }

    #[test]
    fn two_points_on_a_line() {
        let a = Arrangement::from_int_rows(1, &[&[1, 0], &[1, -1]]).unwrap();
        let w = w_basis(&a);
        assert_eq!(w.basis_exact, vec![vec![rat(-1), rat(1)]]);
        assert!(exact_annihilates(&a, &w.basis_exact[0]));
        // lift = N (NᵀN)⁻¹ = (1/2, 1/2)
        assert_eq!(w.lift[(0, 0)], 0.5);
        assert_eq!(
            restrict_to_v(&a, &[w.lift[(0, 0)], w.lift[(1, 0)]]),
            vec![1.0]
        );
    }

    #[test]
    fn concurrent_lines() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        let w = w_basis(&a);
        assert_eq!(w.dim(), 1);
        let row = &w.basis_exact[0];
        // proportional to (1, 1, -1)
        assert_eq!(row[0], row[1]);
        assert_eq!(row[2], -row[0].clone());
        let ident =
            w.lift.transpose() * DMatrix::from_fn(3, 2, |i, j| to_f64(&a.forms()[i].normal[j]));
        assert!((ident - DMatrix::<f64>::identity(2, 2)).amax() < 1e-15);
    }
}
