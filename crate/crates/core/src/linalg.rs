//! Exact rational linear algebra: Gaussian elimination over arbitrary
//! precision rationals, enough for square solves and consistency-checked
//! rectangular systems.

use crate::Rat;
use num_traits::Zero;

/// Outcome of an exact solve of `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Unique(Vec<Rat>),
    /// Consistent but with free variables; the canonical solution sets all
    /// free variables to zero.
    Underdetermined(Vec<Rat>),
    Inconsistent,
}

/// Solve `A x = b` exactly, where `A` is `rows x cols` (rows may exceed
/// cols).  Plain fraction elimination with first-nonzero pivoting.
pub fn solve_exact(a: &[Vec<Rat>], b: &[Rat]) -> SolveOutcome {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = {
            let p = m[rank][col].clone();
            p.recip()
        };
        for v in m[rank].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let sub = &m[rank][c] * &factor;
                    m[r][c] = &m[r][c] - sub;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }

    for row in m.iter().skip(rank) {
        if !row[cols].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }

    let mut x = vec![Rat::zero(); cols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[r][cols].clone();
    }
    if rank == cols {
        SolveOutcome::Unique(x)
    } else {
        SolveOutcome::Underdetermined(x)
    }
}

/// Solve a square system, `None` when singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    match solve_exact(a, b) {
        SolveOutcome::Unique(x) => Some(x),
        _ => None,
    }
}
