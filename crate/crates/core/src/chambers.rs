//! Chambers of an arrangement: enumeration with exact interior witnesses.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arrangement::{AffineForm, Arrangement, Sign, SignVector};
use crate::error::{Error, Result};
use crate::lp::{maximize, LpOutcome};
use crate::rational::{rat, Rat};

/// A connected component of the real complement, named by its sign vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub signs: SignVector,
    pub witness: Vec<Rat>,
}

/// Finds a point `q` with `sign_j * f_j(q) > 0` for every constraint, or
/// `None` when that open polyhedron is empty.
///
/// Solves `max eps` subject to `sign_j * f_j(q) >= eps` and `eps <= 1`; the
/// cell is nonempty iff the optimum is positive.
pub fn open_cell_witness(
    forms: &[AffineForm],
    dim: usize,
    constraints: &[(usize, Sign)],
) -> Option<Vec<Rat>> {
    if constraints.is_empty() {
        return Some(vec![Rat::zero(); dim]);
    }
    // Variables: q = u - v (2d columns), slack s = 1 - eps >= 0.
    let nvars = 2 * dim + 1;
    let mut a = Vec::with_capacity(constraints.len());
    let mut b = Vec::with_capacity(constraints.len());
    for &(j, s) in constraints {
        let sg = rat(s.as_i64());
        let f = &forms[j];
        let mut row = vec![Rat::zero(); nvars];
        for k in 0..dim {
            row[k] = -&sg * &f.normal[k];
            row[dim + k] = &sg * &f.normal[k];
        }
        row[2 * dim] = rat(-1);
        a.push(row);
        b.push(&sg * &f.offset - rat(1));
    }
    let mut c = vec![Rat::zero(); nvars];
    c[2 * dim] = rat(-1);
    match maximize(&c, &a, &b) {
        LpOutcome::Optimal { x, value } => {
            // eps = 1 + value
            if (value + rat(1)).is_positive() {
                Some((0..dim).map(|k| &x[k] - &x[dim + k]).collect())
            } else {
                None
            }
        }
        // The program is always feasible and bounded above by eps <= 1.
        LpOutcome::Infeasible | LpOutcome::Unbounded => None,
    }
}

fn sign_constraints(signs: &[Sign]) -> Vec<(usize, Sign)> {
    signs.iter().copied().enumerate().collect()
}

/// Enumerates the chambers cut out by `forms` in rational `dim`-space by
/// inserting one hyperplane at a time. The forms need not span.
pub fn enumerate_cells(
    forms: &[AffineForm],
    dim: usize,
    cap: Option<usize>,
) -> Result<Vec<Chamber>> {
    let mut cells: Vec<(Vec<Sign>, Vec<Rat>)> = vec![(Vec::new(), vec![Rat::zero(); dim])];
    for (k, form) in forms.iter().enumerate() {
        let next: Vec<Vec<(Vec<Sign>, Vec<Rat>)>> = cells
            .par_iter()
            .map(|(signs, w)| split_cell(forms, dim, k, form, signs, w))
            .collect();
        cells = next.into_iter().flatten().collect();
        if let Some(cap) = cap {
            if cells.len() > cap {
                return Err(Error::ChamberLimitExceeded(cap));
            }
        }
    }
    let mut out: Vec<Chamber> = cells
        .into_iter()
        .map(|(s, w)| Chamber {
            signs: SignVector(s),
            witness: w,
        })
        .collect();
    out.sort_by(|a, b| a.signs.cmp(&b.signs));
    Ok(out)
}

fn split_cell(
    forms: &[AffineForm],
    dim: usize,
    k: usize,
    form: &AffineForm,
    signs: &[Sign],
    witness: &[Rat],
) -> Vec<(Vec<Sign>, Vec<Rat>)> {
    let extend = |s: Sign| {
        let mut v = signs.to_vec();
        v.push(s);
        v
    };
    let side = Sign::of(&form.eval(witness));
    let mut out = Vec::with_capacity(2);
    let probe = |s: Sign| {
        let mut cons = sign_constraints(signs);
        cons.push((k, s));
        open_cell_witness(forms, dim, &cons)
    };
    match side {
        Sign::Zero => {
            // An open cell meeting the hyperplane lies on both sides of it.
            for s in [Sign::Plus, Sign::Minus] {
                if let Some(w) = probe(s) {
                    out.push((extend(s), w));
                }
            }
        }
        s => {
            out.push((extend(s), witness.to_vec()));
            if let Some(w) = probe(s.opposite()) {
                out.push((extend(s.opposite()), w));
            }
        }
    }
    out
}

/// All chambers of `a`, sorted lexicographically by sign vector (`+ < -`).
pub fn enumerate_chambers(a: &Arrangement) -> Vec<Chamber> {
    enumerate_cells(a.forms(), a.dim(), None).expect("uncapped enumeration")
}

pub fn enumerate_chambers_capped(a: &Arrangement, cap: usize) -> Result<Vec<Chamber>> {
    enumerate_cells(a.forms(), a.dim(), Some(cap))
}

/// Indices of hyperplanes separating two chambers.
pub fn separating_set(c1: &Chamber, c2: &Chamber) -> Vec<usize> {
    c1.signs
        .0
        .iter()
        .zip(&c2.signs.0)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(j, _)| j)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signs(chs: &[Chamber]) -> Vec<String> {
        chs.iter().map(|c| c.signs.to_string()).collect()
    }

    #[test]
    fn single_point_has_two_chambers() {
        let a = Arrangement::from_int_rows(1, &[&[1, 0]]).unwrap();
        let ch = enumerate_chambers(&a);
        assert_eq!(signs(&ch), vec!["+", "-"]);
    }

    #[test]
    fn witnesses_are_interior() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]).unwrap();
        for c in enumerate_chambers(&a) {
            assert_eq!(a.sign_vector(&c.witness).unwrap(), c.signs);
        }
    }

    #[test]
    fn quadrants_and_separation() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let ch = enumerate_chambers(&a);
        assert_eq!(signs(&ch), vec!["++", "+-", "-+", "--"]);
        assert!(separating_set(&ch[0], &ch[0]).is_empty());
        assert_eq!(separating_set(&ch[0], &ch[1]), vec![1]);
        assert_eq!(separating_set(&ch[0], &ch[3]), vec![0, 1]);
    }

    #[test]
    fn empty_cell_detected() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        let cons = [(0, Sign::Plus), (1, Sign::Plus), (2, Sign::Minus)];
        assert!(open_cell_witness(a.forms(), 2, &cons).is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]).unwrap();
        assert_eq!(
            enumerate_chambers_capped(&a, 5),
            Err(Error::ChamberLimitExceeded(5))
        );
    }

    #[test]
    fn non_spanning_subarrangement() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let sub = a.sub_forms(&[1]);
        let cells = enumerate_cells(&sub, 2, None).unwrap();
        assert_eq!(cells.len(), 2);
    }
}
