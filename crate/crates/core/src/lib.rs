//! Chamber model of the complement of a complexified real hyperplane
//! arrangement.
//!
//! The crate builds the non-Hausdorff space glued from one copy of `V` per
//! chamber, the projection from the complexified complement onto it, the
//! convex retraction that exhibits the complement as a principal
//! `V^∨`-bundle over it, and the Mayer–Vietoris complex of its chamber cover.

pub mod arrangement;
pub mod bundle;
pub mod cech;
pub mod chambers;
pub mod checks;
pub mod corpus;
pub mod error;
pub mod intrank;
pub mod linalg;
pub mod lp;
pub mod poset;
pub mod rational;
pub mod zmodel;

pub use arrangement::{parse_arrangement, AffineForm, Arrangement, Sign, SignVector};
pub use bundle::{Bundle, CxVector, MPoint};
pub use cech::{betti_compare, build_cech_complex, BettiTable, CechComplex, CechOptions};
pub use chambers::{enumerate_chambers, separating_set, Chamber};
pub use error::{Error, Result};
pub use poset::{
    characteristic_and_poincare, intersection_poset, Flat, IntPolynomial, Polynomials,
};
pub use rational::Rat;
pub use zmodel::{DCoord, DPoint, Membership, NonMember, ZModel, ZPoint};
