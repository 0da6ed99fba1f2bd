//! Exact two-phase simplex over the rationals.
//!
//! Solves `maximize c·x subject to A x <= b, x >= 0` with a dense tableau.
//! Both phases use Bland's rule (lowest-index entering column, lowest basis
//! index on ratio ties), so the method cannot cycle.

use num_traits::{Signed, Zero};

use crate::rational::{rat, Rat};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    cost: Vec<Rat>,
    value: Rat,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (x, p) in self.cost.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.value += &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Runs Bland iterations over the first `ncols` columns. Returns false
    /// when the objective is unbounded.
    fn optimize(&mut self, ncols: usize) -> bool {
        loop {
            let Some(enter) = (0..ncols).find(|&j| self.cost[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }

    fn reprice(&mut self, c: &[Rat]) {
        let mut cost: Vec<Rat> = c.to_vec();
        let mut value = Rat::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (x, a) in cost.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *x -= cb * a;
                }
            }
            value += cb * &self.rhs[i];
        }
        self.cost = cost;
        self.value = value;
    }
}

/// Maximizes `c·x` subject to `a x <= b`, `x >= 0`.
pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    let negative: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let width = n + m + negative.len();

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rat::zero(); width];
        let flip = b[i].is_negative();
        for j in 0..n {
            row[j] = if flip {
                -a[i][j].clone()
            } else {
                a[i][j].clone()
            };
        }
        row[n + i] = if flip { rat(-1) } else { rat(1) };
        if flip {
            let k = negative.iter().position(|&r| r == i).unwrap();
            row[n + m + k] = rat(1);
            basis.push(n + m + k);
            rhs.push(-b[i].clone());
        } else {
            basis.push(n + i);
            rhs.push(b[i].clone());
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        rhs,
        basis,
        cost: vec![],
        value: Rat::zero(),
    };

    if !negative.is_empty() {
        let mut phase1 = vec![Rat::zero(); width];
        for k in 0..negative.len() {
            phase1[n + m + k] = rat(-1);
        }
        t.reprice(&phase1);
        t.optimize(width);
        if t.value.is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n + m {
                match (0..n + m).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in t.rows.iter_mut() {
            row.truncate(n + m);
        }
    }

    let mut phase2 = c.to_vec();
    phase2.resize(n + m, Rat::zero());
    t.reprice(&phase2);
    if !t.optimize(n + m) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bcol) in t.basis.iter().enumerate() {
        if bcol < n {
            x[bcol] = t.rhs[i].clone();
        }
    }
    LpOutcome::Optimal { x, value: t.value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let out = maximize(
            &r(&[3, 5]),
            &[r(&[1, 0]), r(&[0, 2]), r(&[3, 2])],
            &r(&[4, 12, 18]),
        );
        assert_eq!(
            out,
            LpOutcome::Optimal {
                x: r(&[2, 6]),
                value: rat(36)
            }
        );
    }

    #[test]
    fn needs_phase_one() {
        // max -x, x >= 3/2 (i.e. -x <= -3/2), x <= 5
        let out = maximize(&r(&[-1]), &[r(&[-1]), r(&[1])], &[ratio(-3, 2), rat(5)]);
        assert_eq!(
            out,
            LpOutcome::Optimal {
                x: vec![ratio(3, 2)],
                value: ratio(-3, 2)
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x <= 1 and x >= 2
        let out = maximize(&r(&[1]), &[r(&[1]), r(&[-1])], &r(&[1, -2]));
        assert_eq!(out, LpOutcome::Infeasible);
        let out = maximize(&r(&[1, 0]), &[r(&[0, 1])], &r(&[1]));
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_does_not_cycle() {
        // Beale's classic cycling example, exact arithmetic.
        let c = vec![ratio(3, 4), rat(-150), ratio(1, 50), rat(-6)];
        let a = vec![
            vec![ratio(1, 4), rat(-60), ratio(-1, 25), rat(9)],
            vec![ratio(1, 2), rat(-90), ratio(-1, 50), rat(3)],
            vec![rat(0), rat(0), rat(1), rat(0)],
        ];
        let out = maximize(&c, &a, &r(&[0, 0, 1]));
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(1, 20)),
            other => panic!("{other:?}"),
        }
    }
}
