//! Tame ramification quantities and the exponent bracket.
//!
//! For a class `tau` of element order `m` and a rational class function
//! `psi`,
//!
//! ```text
//! c_hat_tau(psi) = psi(e) - psi(tau)
//! c_tau(psi)     = psi(e) - (1/m) sum_{k | m} totient(m/k) psi(tau^k)
//! ```
//!
//! `c_tau` is the tame conductor exponent (it counts non-unital eigenvalues
//! of a representing matrix); `c_hat_tau` bounds wild contributions.  The
//! bracket minimizes their ratios over nonidentity classes:
//! `alpha_hat <= alpha`, and normalized by `phi(e)/chi(e)` these become the
//! conductor-relation exponents `walp <= alp`.

use crate::char_table::{CharacterTable, ClassFunction, TableError};
use crate::Rat;
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TameError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("every ratio in the minimum is undefined (phi is constant)")]
    AllRatiosUndefined,
}

/// Tame quantities of one (character, class) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct TameRow {
    pub class_label: String,
    pub c_hat: Rat,
    pub c_tame: Rat,
}

/// The exponent bracket `[walp, alp]` for a pair `(chi, phi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentBracket {
    pub alpha_hat: Rat,
    pub alpha: Rat,
    /// `alpha_hat * phi(e) / chi(e)`.
    pub walp: Rat,
    /// `alpha * phi(e) / chi(e)`.
    pub alp: Rat,
    pub equal: bool,
    /// Classes attaining the `alpha_hat` minimum.
    pub argmin_hat: Vec<String>,
    /// Classes attaining the `alpha` minimum.
    pub argmin_tame: Vec<String>,
}

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `c_hat_tau(f) = f(e) - f(tau)`.
pub fn c_hat(table: &CharacterTable, f: &ClassFunction, class_idx: usize) -> Rat {
    debug_assert_eq!(f.len(), table.class_count());
    &f.values[0] - &f.values[class_idx]
}

/// `c_tau(f)` with Euler-totient weights over the divisors of the element
/// order, the power classes resolved through the table's power maps.
pub fn c_tame(table: &CharacterTable, f: &ClassFunction, class_idx: usize) -> Rat {
    let m = table.classes[class_idx].element_order;
    let mut acc = Rat::zero();
    for k in 1..=m {
        if m % k == 0 {
            let weight = Rat::from_integer(BigInt::from(totient(m / k)));
            let target = table.class_power(class_idx, k);
            acc += weight * &f.values[target];
        }
    }
    &f.values[0] - acc / Rat::from_integer(BigInt::from(m))
}

/// The exponent bracket for `(chi, phi)`.
///
/// Classes where numerator and denominator both vanish are skipped; a
/// positive numerator over a zero denominator is `+inf` and cannot
/// constrain the minimum.  If every class is skipped the bracket is
/// undefined (`phi` constant).
pub fn exponent_bracket(
    table: &CharacterTable,
    chi: &ClassFunction,
    phi: &ClassFunction,
) -> Result<ExponentBracket, TameError> {
    if chi.len() != table.class_count() || phi.len() != table.class_count() {
        return Err(TameError::Table(TableError::LengthMismatch {
            got: chi.len().max(phi.len()),
            want: table.class_count(),
        }));
    }
    let mut min_hat: Option<Rat> = None;
    let mut min_tame: Option<Rat> = None;
    let mut argmin_hat = Vec::new();
    let mut argmin_tame = Vec::new();
    for idx in 1..table.class_count() {
        let label = table.classes[idx].label.clone();
        let num_hat = c_hat(table, chi, idx);
        let den_hat = c_hat(table, phi, idx);
        if !den_hat.is_zero() {
            let ratio = num_hat / den_hat;
            match &min_hat {
                Some(best) if ratio > *best => {}
                Some(best) if ratio == *best => argmin_hat.push(label.clone()),
                _ => {
                    min_hat = Some(ratio);
                    argmin_hat = vec![label.clone()];
                }
            }
        }
        let num_tame = c_tame(table, chi, idx);
        let den_tame = c_tame(table, phi, idx);
        if !den_tame.is_zero() {
            let ratio = num_tame / den_tame;
            match &min_tame {
                Some(best) if ratio > *best => {}
                Some(best) if ratio == *best => argmin_tame.push(label.clone()),
                _ => {
                    min_tame = Some(ratio);
                    argmin_tame = vec![label.clone()];
                }
            }
        }
    }
    let (alpha_hat, alpha) = match (min_hat, min_tame) {
        (Some(h), Some(t)) => (h, t),
        _ => return Err(TameError::AllRatiosUndefined),
    };
    let scale = &phi.values[0] / &chi.values[0];
    let walp = &alpha_hat * &scale;
    let alp = &alpha * &scale;
    let equal = walp == alp;
    Ok(ExponentBracket {
        alpha_hat,
        alpha,
        walp,
        alp,
        equal,
        argmin_hat,
        argmin_tame,
    })
}

/// Tame quantities for every (character row, class) pair, in table order.
pub fn tame_table(table: &CharacterTable) -> Vec<(String, Vec<TameRow>)> {
    table
        .chars
        .iter()
        .map(|row| {
            let f = row.class_function();
            let rows = (0..table.class_count())
                .map(|idx| TameRow {
                    class_label: table.classes[idx].label.clone(),
                    c_hat: c_hat(table, &f, idx),
                    c_tame: c_tame(table, &f, idx),
                })
                .collect();
            (row.label.clone(), rows)
        })
        .collect()
}
