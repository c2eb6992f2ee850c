//! Exact linear algebra for the distance-matrix systems.
//!
//! The exact route is fraction-free (Bareiss) Gaussian elimination with full
//! pivoting over big integers: it reveals the rank exactly, decides
//! consistency exactly, and back-substitutes to rational solutions with no
//! intermediate fractions. Singular symmetric systems fall back to a
//! minimal-norm least-squares solve built from the same elimination. A
//! floating-point route (SVD) exists for matrices too large to eliminate
//! exactly.

use crate::rational::Rational;
use num::bigint::BigInt;
use num::{Integer, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix must be square and match the right-hand side: {0}")]
    Shape(String),
}

/// Result of one exact elimination of `A x = b`.
#[derive(Debug, Clone)]
pub struct IntSolveOutcome {
    pub rank: usize,
    /// A particular solution with free variables set to zero, if the system
    /// is consistent.
    pub solution: Option<Vec<Rational>>,
}

/// Solves `A x = b` over the rationals for integer `A` (square) and `b`,
/// by fraction-free elimination with full pivoting.
pub fn solve_integer_system(
    a: &[Vec<BigInt>],
    b: &[BigInt],
) -> Result<IntSolveOutcome, LinalgError> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(LinalgError::Shape(format!(
            "A is {}x{:?}, b has {} entries",
            n,
            a.first().map(|r| r.len()),
            b.len()
        )));
    }
    // Augmented working matrix; the final column is b and never pivoted.
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut col_of_pivot: Vec<usize> = Vec::new(); // pivot column per eliminated row
    let mut is_pivot_col = vec![false; n];
    let mut prev_pivot = BigInt::from(1);
    let mut r = 0;
    for _step in 0..n {
        // Full pivot: largest |entry| in the remaining A-submatrix, ties to
        // the smallest (row, col) for determinism.
        let mut best: Option<(usize, usize)> = None;
        for i in r..n {
            for (j, val) in m[i].iter().enumerate().take(n) {
                if is_pivot_col[j] || val.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => val.magnitude() > m[bi][bj].magnitude(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pc)) = best else { break };
        m.swap(r, pi);
        // Bareiss step: rows below r, all columns (including the augment).
        let pivot = m[r][pc].clone();
        let (upper, lower) = m.split_at_mut(r + 1);
        let pivot_row = &upper[r];
        for row in lower.iter_mut() {
            let factor = row[pc].clone();
            for (cell, p) in row.iter_mut().zip(pivot_row) {
                let val = &pivot * &*cell - &factor * p;
                let (q, rem) = val.div_rem(&prev_pivot);
                debug_assert!(rem.is_zero(), "fraction-free step divides exactly");
                *cell = q;
            }
        }
        prev_pivot = pivot;
        col_of_pivot.push(pc);
        is_pivot_col[pc] = true;
        r += 1;
    }
    let rank = r;
    // Consistency: every fully eliminated row must have zero right-hand side.
    if m[rank..n].iter().any(|row| !row[n].is_zero()) {
        return Ok(IntSolveOutcome {
            rank,
            solution: None,
        });
    }
    // Back-substitute in rationals; free variables stay zero.
    let mut x = vec![Rational::zero(); n];
    for k in (0..rank).rev() {
        let pc = col_of_pivot[k];
        let mut acc = Rational::from_integer(m[k][n].clone());
        for &c in col_of_pivot.iter().skip(k + 1) {
            if !m[k][c].is_zero() {
                acc -= Rational::from_integer(m[k][c].clone()) * &x[c];
            }
        }
        x[pc] = acc / Rational::from_integer(m[k][pc].clone());
    }
    Ok(IntSolveOutcome {
        rank,
        solution: Some(x),
    })
}

/// `A . B` for integer matrices.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        debug_assert_eq!(a[i].len(), k);
        for (t, bt) in b.iter().enumerate() {
            if a[i][t].is_zero() {
                continue;
            }
            let f = &a[i][t];
            for j in 0..m {
                let prod = f * &bt[j];
                out[i][j] += prod;
            }
        }
    }
    out
}

/// `A . x` for an integer matrix and integer vector.
pub fn mat_vec(a: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(BigInt::zero(), |acc, (aij, xj)| acc + aij * xj)
        })
        .collect()
}

/// `A . x` for an integer matrix and rational vector.
pub fn mat_vec_rational(a: &[Vec<BigInt>], x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter().zip(x).fold(Rational::zero(), |acc, (aij, xj)| {
                if aij.is_zero() {
                    acc
                } else {
                    acc + Rational::from_integer(aij.clone()) * xj
                }
            })
        })
        .collect()
}

/// Exact minimal-norm least-squares solution of `A x = b` for symmetric
/// integer `A`.
#[derive(Debug, Clone)]
pub struct SymmetricSolve {
    pub values: Vec<Rational>,
    /// `A x - b`, exactly.
    pub residual: Vec<Rational>,
    pub rank: usize,
}

/// Solves `A x = b` exactly for symmetric `A`. When `A` is nonsingular this
/// is the unique solution; otherwise the minimal-norm least-squares point is
/// produced by solving `A^3 z = A b` and taking `x = A z` (for symmetric `A`,
/// `range(A^3) = range(A)` makes the inner system consistent, `x` then
/// satisfies the normal equations, and `x` lies in `range(A)`, which is
/// exactly the minimal-norm condition).
pub fn solve_symmetric_least_squares(
    a: &[Vec<BigInt>],
    b: &[BigInt],
) -> Result<SymmetricSolve, LinalgError> {
    let n = a.len();
    let direct = solve_integer_system(a, b)?;
    let values = if direct.rank == n {
        direct.solution.expect("full-rank square system is consistent")
    } else {
        let a2 = mat_mul(a, a);
        let a3 = mat_mul(&a2, a);
        let ab = mat_vec(a, b);
        let inner = solve_integer_system(&a3, &ab)?;
        let z = inner
            .solution
            .expect("A^3 z = A b is consistent for symmetric A");
        mat_vec_rational(a, &z)
    };
    let residual: Vec<Rational> = mat_vec_rational(a, &values)
        .into_iter()
        .zip(b)
        .map(|(ax, bi)| ax - Rational::from_integer(bi.clone()))
        .collect();
    Ok(SymmetricSolve {
        values,
        residual,
        rank: direct.rank,
    })
}

/// Floating-point least-squares solve via SVD. Returns the solution and the
/// max-norm residual; singular values below `tol * sigma_max` are treated as
/// zero when inverting.
pub fn solve_least_squares_f64(a: &[Vec<f64>], b: &[f64]) -> (Vec<f64>, f64) {
    let n = a.len();
    let mat = nalgebra::DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let rhs = nalgebra::DVector::from_column_slice(b);
    let svd = mat.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let tol = 1e-12 * sigma_max.max(1.0) * n as f64;
    let x = svd
        .solve(&rhs, tol)
        .expect("SVD solve with computed factors");
    let residual = (&mat * &x - &rhs)
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    (x.iter().copied().collect(), residual)
}
