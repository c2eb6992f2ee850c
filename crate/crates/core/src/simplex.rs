//! Dense exact-rational simplex for small equality-form linear programs.
//!
//! Two-phase primal simplex on an explicit tableau. Bland's rule governs both
//! the entering and the leaving choice, which rules out cycling — important
//! here because the transport programs this solves are heavily degenerate
//! (Dirac-dominated marginals produce many zero basic variables). Everything
//! is exact rational arithmetic, so the optimum comes back as the true
//! rational value. Intended for programs with tens of rows; cost grows with
//! the cube of the size.

use crate::rational::Rational;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("program is infeasible")]
    Infeasible,
    #[error("program is unbounded")]
    Unbounded,
    #[error("pivot iteration limit exceeded (solver bug)")]
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    pub objective: Rational,
}

const MAX_PIVOTS: usize = 100_000;

/// Minimizes `c . x` subject to `A x = b`, `x >= 0`.
pub fn solve_min(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
) -> Result<LpSolution, LpError> {
    let m = a.len();
    let n = c.len();
    assert!(m > 0, "at least one constraint required");
    assert_eq!(b.len(), m);
    assert!(a.iter().all(|row| row.len() == n));

    // Tableau columns: n structural, m artificial, then the right-hand side.
    // Rows are normalized so b >= 0, making the artificial basis feasible.
    let cols = n + m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let negate = b[i].is_negative();
        let mut row: Vec<Rational> = Vec::with_capacity(cols + 1);
        for v in a[i].iter().take(n) {
            row.push(if negate { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            row.push(if k == i {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        row.push(if negate { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: drive the artificial mass to zero.
    let phase1_cost: Vec<Rational> = (0..cols)
        .map(|j| {
            if j < n {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
        .collect();
    run_phase(&mut t, &mut basis, &phase1_cost, cols)?;
    let artificial_mass: Rational = basis
        .iter()
        .zip(&t)
        .filter(|(&bv, _)| bv >= n)
        .fold(Rational::zero(), |acc, (_, row)| acc + &row[cols]);
    if !artificial_mass.is_zero() {
        return Err(LpError::Infeasible);
    }
    // Pivot out any artificial still basic at level zero; a row that offers
    // no structural pivot is a redundant constraint and is dropped.
    let mut i = 0;
    while i < basis.len() {
        if basis[i] >= n {
            match (0..n).find(|&j| !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut basis, i, j),
                None => {
                    t.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2: minimize the real objective over structural columns only.
    let mut phase2_cost: Vec<Rational> = c.to_vec();
    phase2_cost.resize(cols, Rational::zero());
    run_phase(&mut t, &mut basis, &phase2_cost, n)?;

    let rhs = cols;
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        debug_assert!(bv < n, "artificials were eliminated after phase 1");
        x[bv] = t[i][rhs].clone();
    }
    let objective = c
        .iter()
        .zip(&x)
        .fold(Rational::zero(), |acc, (cj, xj)| acc + cj * xj);
    Ok(LpSolution { x, objective })
}

/// Pivots to optimality for the given cost vector, considering only columns
/// `< allowed`. Entering: lowest-index column with negative reduced cost.
/// Leaving: lowest-index basic variable among the ratio-test ties (Bland).
fn run_phase(
    t: &mut [Vec<Rational>],
    basis: &mut [usize],
    cost: &[Rational],
    allowed: usize,
) -> Result<(), LpError> {
    let rows = t.len();
    let rhs = cost.len();
    for _ in 0..MAX_PIVOTS {
        let mut entering = None;
        for j in 0..allowed {
            if basis.contains(&j) {
                continue;
            }
            let mut reduced = cost[j].clone();
            for i in 0..rows {
                if !t[i][j].is_zero() && !cost[basis[i]].is_zero() {
                    reduced -= &cost[basis[i]] * &t[i][j];
                }
            }
            if reduced.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(enter) = entering else {
            return Ok(());
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs] / &t[i][enter];
                let replace = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if replace {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((leave_row, _)) = leave else {
            return Err(LpError::Unbounded);
        };
        pivot(t, basis, leave_row, enter);
    }
    Err(LpError::IterationLimit)
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], row: usize, col: usize) {
    let inv = t[row][col].clone();
    debug_assert!(!inv.is_zero());
    for cell in t[row].iter_mut() {
        if !cell.is_zero() {
            *cell = &*cell / &inv;
        }
    }
    // Eliminate the pivot column from every other row; the pivot row is
    // taken out so the borrow checker allows reading it while writing.
    let pivot_row = std::mem::take(&mut t[row]);
    for (i, other) in t.iter_mut().enumerate() {
        if i == row || other[col].is_zero() {
            continue;
        }
        let factor = other[col].clone();
        for (cell, p) in other.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *cell -= &factor * p;
            }
        }
    }
    t[row] = pivot_row;
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn rq(rows: &[&[(i64, i64)]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect())
            .collect()
    }

    fn rv(vals: &[(i64, i64)]) -> Vec<Rational> {
        vals.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn solves_a_two_variable_program() {
        // min x + 2y  s.t.  x + y = 1, x, y >= 0  ->  x = 1
        let sol = solve_min(
            &rq(&[&[(1, 1), (1, 1)]]),
            &rv(&[(1, 1)]),
            &rv(&[(1, 1), (2, 1)]),
        )
        .unwrap();
        assert_eq!(sol.objective, rat(1, 1));
        assert_eq!(sol.x, vec![rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn handles_redundant_constraints() {
        // The two constraints are identical; one row must be dropped after
        // phase 1 rather than trapping an artificial in the basis.
        let sol = solve_min(
            &rq(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]),
            &rv(&[(1, 1), (1, 1)]),
            &rv(&[(3, 1), (1, 1)]),
        )
        .unwrap();
        assert_eq!(sol.objective, rat(1, 1));
        assert_eq!(sol.x, vec![rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn solves_a_small_transportation_program() {
        // Supplies (1/2, 1/2), demands (1/4, 3/4), costs [[0, 1], [1, 0]]:
        // optimal moves 1/4 across, cost 1/4.
        let a = rq(&[
            &[(1, 1), (1, 1), (0, 1), (0, 1)],
            &[(0, 1), (0, 1), (1, 1), (1, 1)],
            &[(1, 1), (0, 1), (1, 1), (0, 1)],
            &[(0, 1), (1, 1), (0, 1), (1, 1)],
        ]);
        let b = rv(&[(1, 2), (1, 2), (1, 4), (3, 4)]);
        let c = rv(&[(0, 1), (1, 1), (1, 1), (0, 1)]);
        let sol = solve_min(&a, &b, &c).unwrap();
        assert_eq!(sol.objective, rat(1, 4));
    }

    #[test]
    fn reports_infeasible_and_unbounded() {
        // x = -1 with x >= 0 is infeasible.
        assert_eq!(
            solve_min(&rq(&[&[(1, 1)]]), &rv(&[(-1, 1)]), &rv(&[(1, 1)])),
            Err(LpError::Infeasible)
        );
        // min -x with the vacuous constraint 0x = 0 is unbounded.
        assert_eq!(
            solve_min(&rq(&[&[(0, 1)]]), &rv(&[(0, 1)]), &rv(&[(-1, 1)])),
            Err(LpError::Unbounded)
        );
    }

    #[test]
    fn dirac_degenerate_program_terminates() {
        // Transportation with a unit supply concentrated in one row and many
        // zero rows: plenty of degenerate pivots for Bland's rule to absorb.
        let a = rq(&[
            &[(1, 1), (1, 1), (1, 1), (0, 1), (0, 1), (0, 1)],
            &[(0, 1), (0, 1), (0, 1), (1, 1), (1, 1), (1, 1)],
            &[(1, 1), (0, 1), (0, 1), (1, 1), (0, 1), (0, 1)],
            &[(0, 1), (1, 1), (0, 1), (0, 1), (1, 1), (0, 1)],
            &[(0, 1), (0, 1), (1, 1), (0, 1), (0, 1), (1, 1)],
        ]);
        let b = rv(&[(1, 1), (0, 1), (1, 1), (0, 1), (0, 1)]);
        let c = rv(&[(0, 1), (1, 1), (2, 1), (1, 1), (0, 1), (1, 1)]);
        let sol = solve_min(&a, &b, &c).unwrap();
        assert_eq!(sol.objective, rat(0, 1));
    }
}
