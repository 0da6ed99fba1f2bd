//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rat;

pub type RatMatrix = Vec<Vec<Rat>>;

/// Reduces `m` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            let (src, dst) = if r < row {
                let (a, b) = m.split_at_mut(row);
                (&b[0], &mut a[r])
            } else {
                let (a, b) = m.split_at_mut(r);
                (&a[row], &mut b[0])
            };
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d -= &factor * s;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

pub fn transpose(m: &RatMatrix, ncols: usize) -> RatMatrix {
    (0..ncols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Basis of `{ x : m x = 0 }`, one vector per free column of the echelon form.
pub fn nullspace(m: &RatMatrix, ncols: usize) -> Vec<Vec<Rat>> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A particular solution of `m x = b` with free variables set to zero, or
/// `None` when the system is inconsistent.
pub fn solve(m: &RatMatrix, b: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    let mut aug: RatMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square nonsingular matrix.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut aug: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn matmul(a: &RatMatrix, b: &RatMatrix, inner: usize, ncols: usize) -> RatMatrix {
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|c| (0..inner).fold(Rat::zero(), |acc, k| acc + &row[k] * &b[k][c]))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn rank_of_parallel_rows() {
        assert_eq!(rank(&m(&[&[1, 0], &[2, 0]])), 1);
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
    }

    #[test]
    fn nullspace_of_transpose() {
        // {x, y, x+y}: normals (1,0),(0,1),(1,1); transpose is 2x3.
        let nt = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let ker = nullspace(&nt, 3);
        assert_eq!(ker, vec![vec![rat(-1), rat(-1), rat(1)]]);
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&[1], &[1]]);
        assert!(solve(&a, &[rat(1), rat(2)], 1).is_none());
        assert_eq!(solve(&a, &[rat(3), rat(3)], 1), Some(vec![rat(3)]));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(2)]]);
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        let _ = ratio(1, 2);
    }
}
