//! Asymptotic floors for sequences of types.
//!
//! A profile records the shape data that controls the limiting bound: the
//! ratios `check/n` and `hat/n` and the constituent count `(chi, chi)`.
//! The two hypothesis paths give finite-stage floors
//!
//! ```text
//! A:  M(n/check + 1, r/check + 1, (chi,chi))^{1 + check/n}
//! B:  M(|G|, 0, (chi,chi))^{1 - hat/n}
//! ```
//!
//! whose limits (ratios to zero, degree to infinity) climb to `Omega`, or
//! to `Theta` in the totally real variant.  No limits are taken here; the
//! module evaluates finite-stage floors and lets callers compare against
//! the analytic constants.

use crate::char_table::{CharacterTable, TableError};
use crate::kernel::{big_m, KernelError};
use crate::Rat;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AsymptoticsError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("constituent count (chi, chi) = {0} is not a positive integer")]
    BadConstituents(String),
    #[error("no floor is computable: check ratio is zero and no group order was supplied")]
    NoPath,
}

/// Shape data of one type in a sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceProfile {
    pub n: Rat,
    /// `check / n`, in [0, 1].
    pub check_ratio: Rat,
    /// `hat / n`, in [0, 1].
    pub hat_ratio: Rat,
    /// `(chi, chi)`.
    pub constituents: u64,
}

/// Which hypothesis path produced the floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FloorPath {
    CheckRatio,
    HatRatio,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FloorReport {
    pub value: f64,
    pub path: FloorPath,
    /// The competing floor when both paths were computable.
    pub other: Option<f64>,
}

/// Profile of a character on a table.
pub fn profile(
    table: &CharacterTable,
    char_label: &str,
) -> Result<SequenceProfile, AsymptoticsError> {
    let chi = table.char_row(char_label)?.class_function();
    let ex = table.value_extremes(&chi)?;
    let n = chi.values[0].clone();
    let norm = table.inner_product(&chi, &chi)?;
    if !norm.is_integer() || !norm.is_positive() {
        return Err(AsymptoticsError::BadConstituents(norm.to_string()));
    }
    Ok(SequenceProfile {
        check_ratio: &ex.check / &n,
        hat_ratio: &ex.hat / &n,
        constituents: norm.to_integer().to_u64().unwrap(),
        n,
    })
}

/// The larger of the case-A and case-B floors computable from the profile.
///
/// Case A needs a positive check ratio; case B needs the group order.
/// `totally_real` places complex conjugation at the identity, replacing the
/// `Omega`-type limit by the `Theta`-type one.
pub fn floor_for_profile(
    p: &SequenceProfile,
    group_order: Option<u64>,
    totally_real: bool,
    tol: f64,
) -> Result<FloorReport, AsymptoticsError> {
    let mut case_a = None;
    if p.check_ratio.is_positive() {
        let cr = p.check_ratio.to_f64().unwrap();
        let n1 = 1.0 / cr + 1.0;
        let r1 = if totally_real { n1 } else { 1.0 };
        let m = big_m(n1, r1, p.constituents as f64, tol)?;
        case_a = Some(m.value.powf(1.0 + cr));
    }
    let mut case_b = None;
    if let Some(g) = group_order {
        let hr = p.hat_ratio.to_f64().unwrap();
        let r = if totally_real { g as f64 } else { 0.0 };
        let m = big_m(g as f64, r, p.constituents as f64, tol)?;
        case_b = Some(m.value.powf(1.0 - hr));
    }
    match (case_a, case_b) {
        (Some(a), Some(b)) => Ok(if a >= b {
            FloorReport {
                value: a,
                path: FloorPath::CheckRatio,
                other: Some(b),
            }
        } else {
            FloorReport {
                value: b,
                path: FloorPath::HatRatio,
                other: Some(a),
            }
        }),
        (Some(a), None) => Ok(FloorReport {
            value: a,
            path: FloorPath::CheckRatio,
            other: None,
        }),
        (None, Some(b)) => Ok(FloorReport {
            value: b,
            path: FloorPath::HatRatio,
            other: None,
        }),
        (None, None) => Err(AsymptoticsError::NoPath),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::kernel::{omega, theta, DEFAULT_TOL};
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn profile_examples() {
        let s5 = bundled::s5();
        let p = profile(&s5, "4a").unwrap();
        assert_eq!(p.check_ratio, rat(1, 4));
        assert_eq!(p.hat_ratio, rat(2, 4));
        assert_eq!(p.constituents, 1);

        let q8 = bundled::q8();
        let spin = profile(&q8, "2").unwrap();
        assert_eq!(spin.check_ratio, rat(1, 1));
        assert!(spin.hat_ratio.is_zero());
    }

    #[test]
    fn spin_profile_uses_case_b() {
        let q8 = bundled::q8();
        let spin = profile(&q8, "2").unwrap();
        let f = floor_for_profile(&spin, Some(8), false, DEFAULT_TOL).unwrap();
        assert_eq!(f.path, FloorPath::HatRatio);
        // Exponent 1 - 0 = 1, so the floor is M(8, 0, 1) itself.
        let m = big_m(8.0, 0.0, 1.0, DEFAULT_TOL).unwrap().value;
        assert!((f.value - m).abs() < 1e-9);
    }

    #[test]
    fn small_check_ratio_lands_in_the_sandwich() {
        // check/n -> 0 with one constituent: between M(10^6, ., 1) and Omega.
        let p = SequenceProfile {
            n: Rat::from_integer(BigInt::from(1_000_000)),
            check_ratio: rat(1, 1_000_000),
            hat_ratio: rat(0, 1),
            constituents: 1,
        };
        let f = floor_for_profile(&p, None, false, DEFAULT_TOL).unwrap();
        let lower = big_m(1_000_000.0, 0.0, 1.0, DEFAULT_TOL).unwrap().value;
        assert!(f.value > lower - 1e-6, "{} vs {lower}", f.value);
        assert!(f.value < omega());
    }

    #[test]
    fn totally_real_variant_approaches_theta() {
        let p = SequenceProfile {
            n: Rat::from_integer(BigInt::from(1_000_000)),
            check_ratio: rat(1, 1_000_000),
            hat_ratio: rat(0, 1),
            constituents: 1,
        };
        let f = floor_for_profile(&p, None, true, DEFAULT_TOL).unwrap();
        assert!(f.value < theta());
        assert!(f.value > omega());
    }

    #[test]
    fn floor_is_monotone_in_hat_ratio() {
        let mk = |hr: Rat| SequenceProfile {
            n: Rat::from_integer(BigInt::from(8)),
            check_ratio: rat(0, 1),
            hat_ratio: hr,
            constituents: 1,
        };
        let lo = floor_for_profile(&mk(rat(1, 10)), Some(8), false, DEFAULT_TOL).unwrap();
        let hi = floor_for_profile(&mk(rat(2, 10)), Some(8), false, DEFAULT_TOL).unwrap();
        assert!(lo.value >= hi.value);
    }

    #[test]
    fn no_computable_path_errors() {
        let p = SequenceProfile {
            n: Rat::from_integer(BigInt::from(4)),
            check_ratio: rat(0, 1),
            hat_ratio: rat(0, 1),
            constituents: 1,
        };
        assert!(matches!(
            floor_for_profile(&p, None, false, DEFAULT_TOL),
            Err(AsymptoticsError::NoPath)
        ));
    }
}
