//! Exact-arithmetic linear programming by the two-phase simplex method.
//!
//! Solves `maximize c·x  subject to  A x = b, x ≥ 0` over any [`Scalar`].
//! Pivoting follows Bland's rule (smallest eligible index enters, smallest
//! basic index leaves on ratio ties), which rules out cycling, so the solver
//! terminates on every input. Problem sizes in this crate are tiny (the
//! simplex-pair disjointness test has eight variables and five rows), so no
//! effort is spent on sparsity or revised-simplex bookkeeping.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult<S> {
    Infeasible,
    Optimal { value: S, solution: Vec<S> },
    Unbounded,
}

struct Tableau<S> {
    rows: Vec<Vec<S>>, // m rows of (ncols + 1) entries; last entry is the rhs
    basis: Vec<usize>,
    ncols: usize,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self, i: usize) -> &S {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pv = self.rows[row][col].clone();
        for e in self.rows[row].iter_mut() {
            *e = e.clone() / pv.clone();
        }
        for r in 0..self.rows.len() {
            if r != row && !self.rows[r][col].is_zero() {
                let f = self.rows[r][col].clone();
                for k in 0..=self.ncols {
                    let delta = f.clone() * self.rows[row][k].clone();
                    self.rows[r][k] = self.rows[r][k].clone() - delta;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex to optimality for the given cost vector, starting from
    /// the current basic feasible solution. Returns `false` on unboundedness.
    fn optimize(&mut self, cost: &[S]) -> bool {
        loop {
            // Reduced costs from scratch; cheap at these sizes and immune to
            // accumulation mistakes.
            let mut entering = None;
            for j in 0..self.ncols {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut z = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !cost[bi].is_zero() && !self.rows[i][j].is_zero() {
                        z = z - cost[bi].clone() * self.rows[i][j].clone();
                    }
                }
                if z.is_positive() {
                    entering = Some(j);
                    break; // Bland: smallest improving index
                }
            }
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = self.rhs(i).clone() / self.rows[i][col].clone();
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn objective_value(&self, cost: &[S]) -> S {
        let mut v = S::zero();
        for (i, &bi) in self.basis.iter().enumerate() {
            if !cost[bi].is_zero() {
                v = v + cost[bi].clone() * self.rhs(i).clone();
            }
        }
        v
    }
}

/// Maximizes `c·x` subject to `A x = b`, `x ≥ 0`.
///
/// `a` holds the rows of A; every row must have `c.len()` entries.
pub fn simplex_max<S: Scalar>(a: &[Vec<S>], b: &[S], c: &[S]) -> LpResult<S> {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // Phase 1: artificial basis, rhs made nonnegative.
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<S> = Vec::with_capacity(ncols + 1);
        for j in 0..n {
            let v = a[i][j].clone();
            row.push(if neg { -v } else { v });
        }
        for j in 0..m {
            row.push(if i == j { S::one() } else { S::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        ncols,
    };
    let phase1_cost: Vec<S> = (0..ncols)
        .map(|j| if j < n { S::zero() } else { -S::one() })
        .collect();
    let ok = t.optimize(&phase1_cost);
    debug_assert!(ok, "phase 1 objective is bounded by zero");
    if t.objective_value(&phase1_cost).is_negative() {
        return LpResult::Infeasible;
    }

    // Drive leftover artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.basis.len() {
        if t.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, col);
                i += 1;
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    // Phase 2 on real columns only.
    for row in t.rows.iter_mut() {
        let rhs = row.pop().unwrap();
        row.truncate(n);
        row.push(rhs);
    }
    t.ncols = n;
    if !t.optimize(c) {
        return LpResult::Unbounded;
    }
    let mut solution = vec![S::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        solution[bi] = t.rhs(i).clone();
    }
    LpResult::Optimal {
        value: t.objective_value(c),
        solution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64, d: i64) -> Q {
        Ratio::new(n, d)
    }

    #[test]
    fn bounded_optimum_with_slack() {
        // max x + y  s.t.  x + y + s = 1
        let r = simplex_max(
            &[vec![q(1, 1), q(1, 1), q(1, 1)]],
            &[q(1, 1)],
            &[q(1, 1), q(1, 1), q(0, 1)],
        );
        match r {
            LpResult::Optimal { value, .. } => assert_eq!(value, q(1, 1)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_negative_point() {
        let r = simplex_max(&[vec![q(1, 1)]], &[q(-1, 1)], &[q(0, 1)]);
        assert_eq!(r, LpResult::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        // max x  s.t.  y = 1 (x unconstrained above)
        let r = simplex_max(&[vec![q(0, 1), q(1, 1)]], &[q(1, 1)], &[q(1, 1), q(0, 1)]);
        assert_eq!(r, LpResult::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        // Duplicate equality constraints.
        let r = simplex_max(
            &[vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]],
            &[q(1, 1), q(1, 1)],
            &[q(1, 1), q(0, 1)],
        );
        match r {
            LpResult::Optimal { value, .. } => assert_eq!(value, q(1, 1)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Degenerate problem that cycles under naive pivoting rules.
        // max 3/4 x1 - 150 x2 + 1/50 x3 - 6 x4, three ≤ rows with slacks.
        let a = vec![
            vec![q(1, 4), q(-60, 1), q(-1, 25), q(9, 1), q(1, 1), q(0, 1), q(0, 1)],
            vec![q(1, 2), q(-90, 1), q(-1, 50), q(3, 1), q(0, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1)],
        ];
        let b = vec![q(0, 1), q(0, 1), q(1, 1)];
        let c = vec![q(3, 4), q(-150, 1), q(1, 50), q(-6, 1), q(0, 1), q(0, 1), q(0, 1)];
        match simplex_max(&a, &b, &c) {
            LpResult::Optimal { value, .. } => assert_eq!(value, q(1, 20)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }
}
