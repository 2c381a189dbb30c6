//! Presentation rounding.
//!
//! Table cells (bounds, cutoffs, observed minima) print rounded to nearest
//! at two decimals, the convention the reference values follow; `floor2`
//! stays available for callers who want a truncation that can never exceed
//! the underlying bound.

use crate::Rat;
use num_traits::ToPrimitive;

/// Round down to two decimals (never exceeds the input).
pub fn floor2(x: f64) -> String {
    format!("{:.2}", (x * 100.0).floor() / 100.0)
}

/// Round to nearest at two decimals; the table presentation convention.
pub fn round2(x: f64) -> String {
    format!("{:.2}", x)
}

/// Exact fraction rendering, `3/4` or `2` when integral.
pub fn frac(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fraction plus its two-decimal float, e.g. `5/6 (0.83)`.
pub fn frac_and_float(r: &Rat) -> String {
    format!("{} ({:.2})", frac(r), r.to_f64().unwrap_or(f64::NAN))
}
