//! Exact vertex enumeration for the polytope `P_G` of normalized
//! nonnegative class functions.
//!
//! Writing a function as `sum x_i chi_i` with `x_1 = 1`, the polytope in
//! the remaining `k - 1` coordinates is cut out by `x_i >= 0` (one per
//! non-unital character) and `y_j >= 0` (one per non-identity class), where
//! `y_j` is the class value.  Every vertex is a basic feasible point of
//! some `(k-1)`-subset of those `2k - 2` hyperplanes, so the enumeration
//! solves each square subset system exactly and keeps the feasible,
//! deduplicated solutions.  The subset count `C(2k-2, k-1)` is checked
//! against a work cap first.

use crate::char_table::CharacterTable;
use crate::linalg::solve_square;
use crate::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Error, PartialEq)]
pub enum PolytopeError {
    #[error("vertex enumeration needs a complete table; {0} is declared partial")]
    IncompleteTable(String),
    #[error("vertex enumeration would need {required} subset solves, cap is {cap}")]
    CapExceeded { required: u128, cap: u64 },
}

/// A vertex of `P_G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    /// Coordinates `x_i` for the non-unital characters (the `x_1 = 1`
    /// coordinate is implicit).
    pub x: Vec<Rat>,
    /// Induced class values, identity class included.
    pub y: Vec<Rat>,
    /// Which of the `2k - 2` inequalities are tight, characters first.
    pub tight_set: Vec<bool>,
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All `(k-1)`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct ConstraintSystem {
    /// Row per constraint: coefficients over the `k - 1` free coordinates.
    rows: Vec<Vec<Rat>>,
    /// Right-hand side of the equality form of each constraint.
    rhs: Vec<Rat>,
}

/// Constraint `c` as (coefficient row, rhs) so that tightness is
/// `row . x = rhs` and feasibility is `row . x >= rhs`... character
/// constraints are `x_i >= 0`, class constraints are
/// `1 + sum_i x_i chi_i(C_j) >= 0`, i.e. `sum_i x_i chi_i(C_j) >= -1`.
fn build_constraints(table: &CharacterTable) -> ConstraintSystem {
    let k = table.class_count();
    let dim = k - 1;
    let mut rows = Vec::with_capacity(2 * dim);
    let mut rhs = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        let mut row = vec![Rat::zero(); dim];
        row[i] = Rat::one();
        rows.push(row);
        rhs.push(Rat::zero());
    }
    for j in 1..k {
        let row: Vec<Rat> = table
            .chars
            .iter()
            .skip(1)
            .map(|chi| Rat::from_integer(chi.values[j].clone()))
            .collect();
        rows.push(row);
        rhs.push(-Rat::one());
    }
    ConstraintSystem { rows, rhs }
}

fn vertex_from_subset(
    table: &CharacterTable,
    sys: &ConstraintSystem,
    subset: &[usize],
) -> Option<(Vec<Rat>, Vertex)> {
    let dim = table.class_count() - 1;
    let a: Vec<Vec<Rat>> = subset.iter().map(|&c| sys.rows[c].clone()).collect();
    let b: Vec<Rat> = subset.iter().map(|&c| sys.rhs[c].clone()).collect();
    let x = solve_square(&a, &b)?;
    if x.iter().any(Signed::is_negative) {
        return None;
    }
    // Induced class values; feasibility needs all of them nonnegative.
    let k = table.class_count();
    let mut y = vec![Rat::zero(); k];
    for j in 0..k {
        let mut v = Rat::one();
        for (i, chi) in table.chars.iter().skip(1).enumerate() {
            v += &x[i] * Rat::from_integer(chi.values[j].clone());
        }
        y[j] = v;
    }
    if y.iter().any(Signed::is_negative) {
        return None;
    }
    let mut tight = vec![false; 2 * dim];
    for (i, xv) in x.iter().enumerate() {
        tight[i] = xv.is_zero();
    }
    for j in 1..k {
        tight[dim + j - 1] = y[j].is_zero();
    }
    let key = x.clone();
    Some((
        key,
        Vertex {
            x,
            y,
            tight_set: tight,
        },
    ))
}

fn merge(found: Vec<(Vec<Rat>, Vertex)>) -> Vec<Vertex> {
    let mut map: BTreeMap<Vec<Rat>, Vertex> = BTreeMap::new();
    for (key, v) in found {
        map.entry(key).or_insert(v);
    }
    map.into_values().collect()
}

fn check_preconditions(table: &CharacterTable, cap: u64) -> Result<Vec<Vec<usize>>, PolytopeError> {
    if !table.complete {
        return Err(PolytopeError::IncompleteTable(table.group_name.clone()));
    }
    let k = table.class_count() as u64;
    let required = binomial(2 * k - 2, k - 1);
    if required > cap as u128 {
        return Err(PolytopeError::CapExceeded { required, cap });
    }
    Ok(combinations(2 * (k as usize) - 2, k as usize - 1))
}

/// Sequential enumeration; always available and used as the fallback when
/// the `parallel` feature is disabled.
pub fn enumerate_vertices_seq(
    table: &CharacterTable,
    cap: u64,
) -> Result<Vec<Vertex>, PolytopeError> {
    let subsets = check_preconditions(table, cap)?;
    let sys = build_constraints(table);
    let found: Vec<_> = subsets
        .iter()
        .filter_map(|s| vertex_from_subset(table, &sys, s))
        .collect();
    Ok(merge(found))
}

/// Enumerate all vertices of `P_G`, exact and deduplicated, including the
/// unital point (all `x_i = 0`) and the regular character (all class
/// values zero).
#[cfg(feature = "parallel")]
pub fn enumerate_vertices(table: &CharacterTable, cap: u64) -> Result<Vec<Vertex>, PolytopeError> {
    let subsets = check_preconditions(table, cap)?;
    let sys = build_constraints(table);
    let found: Vec<_> = subsets
        .par_iter()
        .filter_map(|s| vertex_from_subset(table, &sys, s))
        .collect();
    Ok(merge(found))
}

#[cfg(not(feature = "parallel"))]
pub fn enumerate_vertices(table: &CharacterTable, cap: u64) -> Result<Vec<Vertex>, PolytopeError> {
    enumerate_vertices_seq(table, cap)
}

/// Default cap on subset solves (covers tables up to 11 classes).
pub const DEFAULT_VERTEX_CAP: u64 = 10_000_000;
