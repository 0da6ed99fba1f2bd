//! Intersection poset, Möbius function, characteristic and Poincaré polynomials.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::rational::Rat;

/// A nonempty intersection of hyperplanes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    /// Every hyperplane containing the flat (empty for the ambient space).
    pub hyperplanes: Vec<usize>,
    pub point: Vec<Rat>,
    pub direction: Vec<Vec<Rat>>,
    pub dim: usize,
    pub moebius: i64,
}

/// Integer polynomial, `coeffs[k]` is the coefficient of `t^k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            let coef = if mag == 1 && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            match k {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Enumerates all nonempty intersections by trying every hyperplane subset,
/// deduplicating on the reduced echelon form of the defining system, then
/// fills in Möbius values top-down from the ambient space.
pub fn intersection_poset(a: &Arrangement) -> Vec<Flat> {
    let n = a.len();
    let d = a.dim();
    let mut seen: HashMap<RatMatrix, usize> = HashMap::new();
    let mut flats: Vec<Flat> = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let subset: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let mut aug: RatMatrix = subset
            .iter()
            .map(|&j| {
                let f = &a.forms()[j];
                let mut row = f.normal.clone();
                row.push(-f.offset.clone());
                row
            })
            .collect();
        let pivots = linalg::rref(&mut aug);
        if pivots.last() == Some(&d) {
            continue;
        }
        if seen.contains_key(&aug) {
            continue;
        }
        let mut point = vec![Rat::zero(); d];
        for (row, &pc) in aug.iter().zip(&pivots) {
            point[pc] = row[d].clone();
        }
        let linear: RatMatrix = aug.iter().map(|r| r[..d].to_vec()).collect();
        let direction = linalg::nullspace(&linear, d);
        let hyperplanes = (0..n)
            .filter(|&j| {
                let f = &a.forms()[j];
                f.eval(&point).is_zero() && direction.iter().all(|v| f.eval_linear(v).is_zero())
            })
            .collect();
        seen.insert(aug, flats.len());
        flats.push(Flat {
            hyperplanes,
            point,
            dim: direction.len(),
            direction,
            moebius: 0,
        });
    }
    flats.sort_by(|x, y| {
        y.dim
            .cmp(&x.dim)
            .then_with(|| x.hyperplanes.cmp(&y.hyperplanes))
    });
    for i in 0..flats.len() {
        let mu = if flats[i].hyperplanes.is_empty() {
            1
        } else {
            let below = &flats[i].hyperplanes;
            -flats[..i]
                .iter()
                .filter(|y| y.hyperplanes.len() < below.len() && is_subset(&y.hyperplanes, below))
                .map(|y| y.moebius)
                .sum::<i64>()
        };
        flats[i].moebius = mu;
    }
    flats
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomials {
    pub chi: IntPolynomial,
    pub poincare: IntPolynomial,
    /// `(-1)^d chi(-1)`, the number of chambers.
    pub chamber_check: i64,
}

pub fn characteristic_and_poincare(a: &Arrangement) -> Result<Polynomials> {
    let d = a.dim();
    let flats = intersection_poset(a);
    let mut chi = vec![0i64; d + 1];
    let mut poincare = vec![0i64; d + 1];
    for x in &flats {
        chi[x.dim] += x.moebius;
        let codim = d - x.dim;
        poincare[codim] += if codim.is_multiple_of(2) {
            x.moebius
        } else {
            -x.moebius
        };
    }
    if let Some(k) = poincare.iter().position(|&c| c < 0) {
        return Err(Error::InternalInconsistency(format!(
            "negative Poincaré coefficient in degree {k}"
        )));
    }
    let chi = IntPolynomial::new(chi);
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    let chamber_check = sign * chi.eval(-1);
    Ok(Polynomials {
        chi,
        poincare: IntPolynomial::new(poincare),
        chamber_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_on_line() {
        let a = Arrangement::from_int_rows(1, &[&[1, 0]]).unwrap();
        let flats = intersection_poset(&a);
        assert_eq!(flats.len(), 2);
        assert_eq!((flats[0].dim, flats[0].moebius), (1, 1));
        assert_eq!((flats[1].dim, flats[1].moebius), (0, -1));
        let p = characteristic_and_poincare(&a).unwrap();
        assert_eq!(p.chi.coeffs(), &[-1, 1]);
        assert_eq!(p.poincare.coeffs(), &[1, 1]);
    }

    #[test]
    fn concurrent_center_has_moebius_two() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        let flats = intersection_poset(&a);
        let center = flats.iter().find(|f| f.dim == 0).unwrap();
        assert_eq!(center.hyperplanes, vec![0, 1, 2]);
        assert_eq!(center.moebius, 2);
        assert_eq!(flats.len(), 5);
    }

    #[test]
    fn display() {
        assert_eq!(
            IntPolynomial::new(vec![3, -3, 1]).to_string(),
            "t^2 - 3t + 3"
        );
        assert_eq!(IntPolynomial::new(vec![-2, 1]).to_string(), "t - 2");
        assert_eq!(IntPolynomial::new(vec![0, 0]).to_string(), "0");
    }
}
