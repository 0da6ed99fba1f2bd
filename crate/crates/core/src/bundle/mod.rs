//! The complexified complement as a principal `V^∨`-bundle over the chamber
//! model: projection, action, convex retraction and local sections.

mod kempf_ness;
mod point;
mod torsor;
mod wspace;

use nalgebra::{DMatrix, DVector};

use crate::arrangement::Arrangement;
use crate::rational::to_f64;
use crate::zmodel::ZModel;

pub use kempf_ness::{rho_eval, Retraction, RhoEval, SolverDiagnostics};
pub use num_complex::Complex64;
pub use point::{act, embed_m, xy_from_z, CxVector, ExactParts, MPoint, SqrtPair};
pub use wspace::{exact_annihilates, restrict_to_v, w_basis, WSpace};

/// Relative scale of the zero threshold for floating sign decisions.
pub const ZERO_THRESHOLD: f64 = 1e-9;
/// Largest admissible `|λ_j|` before `e^{2λ}` risks overflow.
pub const EXP_GUARD: f64 = 300.0;
pub const GRAD_TOL: f64 = 1e-10;
pub const DECREMENT_TOL: f64 = 1e-12;
pub const MAX_ITER: usize = 200;
pub const ARMIJO: f64 = 0.25;
pub const SHRINK: f64 = 0.5;
/// Relative least-squares residual accepted for "lies in the image of f".
pub const IMAGE_RESIDUAL: f64 = 1e-9;
/// Base points closer than this count as the same point of `V`.
pub const BASE_TOL: f64 = 1e-9;

pub fn zero_threshold(scale: f64) -> f64 {
    ZERO_THRESHOLD * (1.0 + scale)
}

/// Everything needed to move between `M(A)`, `(C^×)^n` and the chamber model.
#[derive(Debug, Clone)]
pub struct Bundle {
    model: ZModel,
    w: WSpace,
    normals: DMatrix<f64>,
    offsets: DVector<f64>,
}

impl Bundle {
    pub fn new(model: ZModel) -> Self {
        let a = model.arrangement();
        let (n, d) = (a.len(), a.dim());
        let normals = DMatrix::from_fn(n, d, |i, k| to_f64(&a.forms()[i].normal[k]));
        let offsets = DVector::from_fn(n, |i, _| to_f64(&a.forms()[i].offset));
        Bundle {
            w: w_basis(a),
            model,
            normals,
            offsets,
        }
    }

    pub fn from_arrangement(a: Arrangement) -> Self {
        Bundle::new(ZModel::new(a))
    }

    pub fn model(&self) -> &ZModel {
        &self.model
    }

    pub fn arrangement(&self) -> &Arrangement {
        self.model.arrangement()
    }

    pub fn w(&self) -> &WSpace {
        &self.w
    }

    pub fn embed_m(&self, v: &MPoint) -> crate::Result<CxVector> {
        embed_m(self.arrangement(), v)
    }
}
