//! Exact rank of sparse integer matrices by fraction-free elimination.
//!
//! Rows are reduced against a table of pivots keyed by leading column. A row
//! with leading entry `a` is reduced by a pivot with leading entry `b` as
//! `b·row − a·pivot`, then divided by the gcd of its entries. Columns are
//! relabelled so the sparsest come first, which keeps fill-in low on
//! coboundary matrices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sparse matrix of small integers as `(row, col, value)` triplets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseIntMatrix {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.ncols]; self.nrows];
        for &(r, c, v) in &self.entries {
            m[r][c] += v;
        }
        m
    }

    /// Product `self · other` as a dense matrix.
    pub fn mul_dense(&self, other: &SparseIntMatrix) -> Vec<Vec<i64>> {
        let b = other.to_dense();
        let mut out = vec![vec![0i64; other.ncols]; self.nrows];
        for &(r, k, v) in &self.entries {
            for (c, x) in b[k].iter().enumerate() {
                if *x != 0 {
                    out[r][c] += v * x;
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        sparse_rank(self)
    }
}

trait Scalar: Clone + PartialEq + Zero + Signed {
    fn mul_sub(&self, a: &Self, b: &Self, c: &Self) -> Option<Self>;
    fn gcd_with(&self, other: &Self) -> Self;
    fn div_exact(&self, g: &Self) -> Self;
}

impl Scalar for i64 {
    /// `self·a − b·c` without overflow.
    fn mul_sub(&self, a: &i64, b: &i64, c: &i64) -> Option<i64> {
        self.checked_mul(*a)?.checked_sub(b.checked_mul(*c)?)
    }
    fn gcd_with(&self, other: &i64) -> i64 {
        self.gcd(other)
    }
    fn div_exact(&self, g: &i64) -> i64 {
        self / g
    }
}

impl Scalar for BigInt {
    fn mul_sub(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> Option<BigInt> {
        Some(self * a - b * c)
    }
    fn gcd_with(&self, other: &BigInt) -> BigInt {
        self.gcd(other)
    }
    fn div_exact(&self, g: &BigInt) -> BigInt {
        self / g
    }
}

type Row<T> = Vec<(usize, T)>;

/// `b·row − a·pivot` over sorted sparse rows. `None` on overflow.
fn combine<T: Scalar>(row: &Row<T>, pivot: &Row<T>, a: &T, b: &T) -> Option<Row<T>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    let zero = T::zero();
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1.mul_sub(b, &zero, &zero)?)
        } else if cj < ci {
            j += 1;
            (cj, zero.mul_sub(&zero, a, &pivot[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (ci, row[i - 1].1.mul_sub(b, a, &pivot[j - 1].1)?)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    let g = out.iter().fold(T::zero(), |g, (_, v)| g.gcd_with(v));
    if !g.is_zero() && g != T::one() {
        for (_, v) in out.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
    Some(out)
}

fn eliminate<T: Scalar>(rows: Vec<Row<T>>) -> Option<usize> {
    let mut pivots: HashMap<usize, Row<T>> = HashMap::new();
    for mut row in rows {
        while let Some((lead, a)) = row.first().cloned() {
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, row);
                    break;
                }
                Some(p) => {
                    let b = p[0].1.clone();
                    row = combine(&row, p, &a, &b)?;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Exact rank over the rationals.
pub fn sparse_rank(m: &SparseIntMatrix) -> usize {
    let mut density = vec![0usize; m.ncols];
    for &(_, c, v) in &m.entries {
        if v != 0 {
            density[c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..m.ncols).collect();
    order.sort_by_key(|&c| (density[c], c));
    let mut relabel = vec![0usize; m.ncols];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    let mut rows: Vec<Row<i64>> = vec![Vec::new(); m.nrows];
    for &(r, c, v) in &m.entries {
        if v != 0 {
            rows[r].push((relabel[c], v));
        }
    }
    for row in rows.iter_mut() {
        row.sort_by_key(|e| e.0);
        // merge duplicate coordinates
        let mut merged: Row<i64> = Vec::with_capacity(row.len());
        for &(c, v) in row.iter() {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        *row = merged;
    }
    rows.sort_by_key(|r| r.len());
    match eliminate(rows.clone()) {
        Some(r) => r,
        None => {
            let big = rows
                .into_iter()
                .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
                .collect();
            eliminate::<BigInt>(big).expect("bigint elimination cannot overflow")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_dense(m: &[Vec<i64>]) -> SparseIntMatrix {
        let mut s = SparseIntMatrix::new(m.len(), m.first().map_or(0, Vec::len));
        for (r, row) in m.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    s.entries.push((r, c, v));
                }
            }
        }
        s
    }

    /// Dense Bareiss elimination over BigInt, independent of the sparse path.
    fn bareiss_rank(m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<BigInt>> = m
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let (nr, nc) = (a.len(), a.first().map_or(0, Vec::len));
        let mut prev = BigInt::from(1);
        let mut rank = 0;
        for col in 0..nc {
            let Some(p) = (rank..nr).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..nr {
                for c in col + 1..nc {
                    let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                    a[r][c] = v;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        assert_eq!(from_dense(&[vec![1, -1], vec![-1, 1]]).rank(), 1);
        assert_eq!(from_dense(&[vec![2, 4], vec![3, 6], vec![1, 1]]).rank(), 2);
        assert_eq!(SparseIntMatrix::new(3, 0).rank(), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let m = vec![vec![big, big - 1, 3], vec![big - 3, big, 7], vec![1, 2, 3]];
        assert_eq!(from_dense(&m).rank(), bareiss_rank(&m));
    }

    proptest! {
        #[test]
        fn matches_dense_bareiss(m in proptest::collection::vec(
            proptest::collection::vec(-2i64..=2, 6), 1..8)) {
            prop_assert_eq!(from_dense(&m).rank(), bareiss_rank(&m));
        }
    }
}
