//! Adaptive Simpson quadrature on a finite interval.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuadError {
    #[error("quadrature did not converge within the subdivision budget (residual {residual:e})")]
    NonConvergence { residual: f64 },
    #[error("invalid interval [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },
}

const MAX_DEPTH: u32 = 60;

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Classic adaptive Simpson with Richardson correction: a panel is accepted
/// when the two-half refinement moves the estimate by less than `15 * tol`
/// for that panel's share of the tolerance.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, QuadError>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(QuadError::BadInterval { a, b });
    }
    if a == b {
        return Ok(0.0);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0;
    panel(&f, a, m, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn panel<F>(
    f: &F,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, QuadError>
where
    F: Fn(f64) -> f64,
{
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) * (fa + 4.0 * flm + fm) / 6.0;
    let right = (b - m) * (fm + 4.0 * frm + fb) / 6.0;
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(QuadError::NonConvergence {
            residual: delta.abs(),
        });
    }
    let half = 0.5 * tol;
    Ok(panel(f, a, lm, m, fa, flm, fm, left, half, depth - 1)?
        + panel(f, m, rm, b, fm, frm, fb, right, half, depth - 1)?)
}
