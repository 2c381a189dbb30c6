//! Explicit-formula kernels and the optimized lower bound `M(n, r, u)`.
//!
//! The test function is Odlyzko's
//! `f(x) = (1 - x) cos(pi x) + sin(pi x) / pi` on `[0, 1]`, zero beyond.
//! For `z > 0` the three kernels are
//!
//! ```text
//! N(z) = gamma + log(8 pi) + int_0^z (f(x/z) - 1) / (2 sinh(x/2)) dx
//!                          - log((e^{z/2} + 1) / (e^{z/2} - 1))
//! R(z) = int_0^z f(x/z) / (2 cosh(x/2)) dx
//! P(z) = 256 pi^2 z cosh^2(z/4) / (z^2 + 4 pi^2)^2
//! ```
//!
//! and the bound itself is
//! `M(n, r, u) = max_z exp(N(z) + (r/n) R(z) - (u/n) P(z))`,
//! located by a coarse geometric scan followed by golden-section refinement.
//! `N(z)` and `R(z)` increase to `N(inf) = gamma + log(8 pi)` and
//! `R(inf) = pi/2`; the derived constants `Omega = e^{N(inf)}` and
//! `Theta = e^{N(inf) + R(inf)}` are the limiting bounds for general and
//! totally real types respectively.

use crate::quad::{adaptive_simpson, QuadError};
use std::f64::consts::PI;
use thiserror::Error;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default absolute quadrature tolerance per integral.
pub const DEFAULT_TOL: f64 = 1e-11;

/// Default cap on the geometric scan in `z`.
pub const DEFAULT_Z_CAP: f64 = 5000.0;

#[derive(Debug, Error, PartialEq)]
pub enum KernelError {
    #[error("z must be positive, got {0}")]
    NonPositiveZ(f64),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTol(f64),
    #[error("arguments out of range: n = {n}, r = {r}, u = {u} (need n > 0, u > 0, |r| <= n)")]
    BadMArgs { n: f64, r: f64, u: f64 },
    #[error("signature bound needs degree n >= 2, got {0}")]
    DegreeTooSmall(f64),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// Kernel values at a single `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub z: f64,
    pub n: f64,
    pub r: f64,
    pub p: f64,
}

/// Result of maximizing the explicit-formula objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MResult {
    pub n: f64,
    pub r: f64,
    pub u: f64,
    /// The bound `M(n, r, u)`.
    pub value: f64,
    /// Location of the maximum.
    pub argmax_z: f64,
    /// The scan hit the z cap while the objective was still improving.
    pub scan_capped: bool,
}

/// Odlyzko's test function.
pub fn test_f(x: f64) -> f64 {
    if x > 1.0 {
        0.0
    } else {
        (1.0 - x) * (PI * x).cos() + (PI * x).sin() / PI
    }
}

/// `N(inf) = gamma + log(8 pi)`.
pub fn n_limit() -> f64 {
    EULER_GAMMA + (8.0 * PI).ln()
}

/// `R(inf) = pi / 2`.
pub fn r_limit() -> f64 {
    0.5 * PI
}

/// Limiting bound for general types, `Omega = e^{N(inf)}`.
pub fn omega() -> f64 {
    n_limit().exp()
}

/// Limiting bound for totally real types, `Theta = e^{N(inf) + R(inf)}`.
pub fn theta() -> f64 {
    (n_limit() + r_limit()).exp()
}

/// `log((e^{z/2} + 1) / (e^{z/2} - 1))`, stable for large `z`.
fn log_coth_quarter(z: f64) -> f64 {
    let e = (-0.5 * z).exp();
    e.ln_1p() - (-e).ln_1p()
}

/// Evaluate `N`, `R`, `P` at `z` with absolute quadrature error `<= tol`.
///
/// The `N` integrand has a removable singularity at the origin
/// (`f(t) - 1 = O(t^2)`), assigned its limit value 0.  Both integrands
/// decay like `e^{-x/2}`, so for large `z` the interval is truncated where
/// the tail drops below `tol / 10`; otherwise the first Simpson panels
/// sample only the exponentially dead region and accept a spurious zero.
pub fn kernels(z: f64, tol: f64) -> Result<KernelValue, KernelError> {
    if !(z > 0.0) {
        return Err(KernelError::NonPositiveZ(z));
    }
    if !(tol > 0.0) {
        return Err(KernelError::NonPositiveTol(tol));
    }
    // Tail of either integral beyond T is < 2 e^{-T/2}.
    let t_cut = z.min(2.0 * (20.0 / tol).ln());
    let n_integrand = |x: f64| {
        if x == 0.0 {
            0.0
        } else {
            (test_f(x / z) - 1.0) / (2.0 * (0.5 * x).sinh())
        }
    };
    let r_integrand = |x: f64| test_f(x / z) / (2.0 * (0.5 * x).cosh());
    let n = n_limit() + adaptive_simpson(n_integrand, 0.0, t_cut, tol)? - log_coth_quarter(z);
    let r = adaptive_simpson(r_integrand, 0.0, t_cut, tol)?;
    Ok(KernelValue {
        z,
        n,
        r,
        p: p_closed(z),
    })
}

/// Closed form of `P(z)`.
pub fn p_closed(z: f64) -> f64 {
    let c = (0.25 * z).cosh();
    let d = z * z + 4.0 * PI * PI;
    256.0 * PI * PI * z * c * c / (d * d)
}

/// `P(z)` by quadrature of its integral definition
/// `4 int_0^inf f(x/z) cosh(x/2) dx`, truncated at `x = z` by the support
/// of `f`. Cross-check for the closed form.
pub fn p_quadrature(z: f64, tol: f64) -> Result<f64, KernelError> {
    if !(z > 0.0) {
        return Err(KernelError::NonPositiveZ(z));
    }
    let v = adaptive_simpson(|x| test_f(x / z) * (0.5 * x).cosh(), 0.0, z, tol)?;
    Ok(4.0 * v)
}

/// Options for the maximization in [`big_m_with`].
#[derive(Debug, Clone, Copy)]
pub struct BigMOptions {
    pub tol: f64,
    pub z_cap: f64,
}

impl Default for BigMOptions {
    fn default() -> Self {
        BigMOptions {
            tol: DEFAULT_TOL,
            z_cap: DEFAULT_Z_CAP,
        }
    }
}

/// `M(n, r, u)` with default tolerance and scan cap.
pub fn big_m(n: f64, r: f64, u: f64, tol: f64) -> Result<MResult, KernelError> {
    big_m_with(
        n,
        r,
        u,
        BigMOptions {
            tol,
            ..BigMOptions::default()
        },
    )
}

/// `M(n, r, u) = max_z exp(N(z) + (r/n) R(z) - (u/n) P(z))`.
///
/// The objective tends to `-inf` at both ends of `(0, inf)` and is treated
/// as unimodal after a coarse scan: geometric grid `z = 0.05 * 1.1^j`,
/// stopping once the running max has not improved for 40 steps or `z`
/// exceeds the cap, then golden-section refinement of the bracketing triple
/// to width `1e-6` in `z`.  Hitting the cap while still improving sets
/// `scan_capped` rather than silently truncating.
pub fn big_m_with(n: f64, r: f64, u: f64, opts: BigMOptions) -> Result<MResult, KernelError> {
    const SLACK: f64 = 1e-12;
    if !(n > 0.0) || !(u > 0.0) || r.abs() > n * (1.0 + SLACK) || !r.is_finite() {
        return Err(KernelError::BadMArgs { n, r, u });
    }
    let objective = |z: f64| -> Result<f64, KernelError> {
        let k = kernels(z, opts.tol)?;
        Ok(k.n + (r / n) * k.r - (u / n) * k.p)
    };

    // Coarse geometric scan.
    let mut zs = vec![0.05 / 1.1];
    let mut vals = vec![objective(zs[0])?];
    let mut best = 0usize;
    let mut since_improve = 0u32;
    let mut scan_capped = false;
    let mut j = 0u32;
    loop {
        let z = 0.05 * 1.1f64.powi(j as i32);
        if z > opts.z_cap {
            // Cap reached; if the tail was still improving, flag it.
            if since_improve < 2 {
                scan_capped = true;
            }
            break;
        }
        let v = objective(z)?;
        zs.push(z);
        vals.push(v);
        if v > vals[best] {
            best = zs.len() - 1;
            since_improve = 0;
        } else {
            since_improve += 1;
            if since_improve >= 40 {
                break;
            }
        }
        j += 1;
    }
    if best + 1 >= zs.len() {
        scan_capped = true;
    }

    // Golden-section refinement on the bracketing triple.
    let mut a = zs[best.saturating_sub(1)];
    let mut b = zs[(best + 1).min(zs.len() - 1)];
    if b <= a {
        b = a + 1.0;
    }
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = objective(x1)?;
    let mut f2 = objective(x2)?;
    while b - a > 1e-6 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = objective(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = objective(x1)?;
        }
    }
    let (argmax_z, fmax) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Ok(MResult {
        n,
        r,
        u,
        value: fmax.exp(),
        argmax_z,
        scan_capped,
    })
}

/// `Omega^{1-eps} * Theta^{eps}`; with `totally_real` both bases become
/// `Theta` (real-place-split variant), so the floor is `Theta` itself.
pub fn asymptotic_floor(eps: f64, totally_real: bool) -> f64 {
    if totally_real {
        theta()
    } else {
        omega().powf(1.0 - eps) * theta().powf(eps)
    }
}

/// Degree-based (signature) limiting floor
/// `Omega^{(1-eps^2)/2} * Theta^{eps^2/2}`; equals `sqrt(Omega)` at
/// `eps = 0` and `sqrt(Theta)` at `eps = 1`.
pub fn signature_floor(eps: f64) -> f64 {
    asymptotic_floor(eps * eps, false).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_f_endpoints() {
        assert_eq!(test_f(0.0), 1.0);
        assert!(test_f(1.0).abs() < 1e-15);
        assert_eq!(test_f(2.0), 0.0);
    }

    #[test]
    fn p_closed_at_two_pi() {
        // Direct substitution: P(2 pi) = 8 cosh^2(pi/2) / pi.
        let c = (0.5 * PI).cosh();
        let expect = 8.0 * c * c / PI;
        assert!((p_closed(2.0 * PI) - expect).abs() < 1e-12);
    }

    #[test]
    fn constants_from_first_principles() {
        assert!((omega() - 44.7632).abs() < 1e-4);
        assert!((theta() - 215.3325).abs() < 1e-4);
        assert!((signature_floor(0.0) - 6.6905).abs() < 1e-4);
        assert!((signature_floor(1.0) - 14.6742).abs() < 1e-4);
    }

    #[test]
    fn geometric_mean_floor() {
        let v = asymptotic_floor(0.5, false);
        assert!((v - (omega() * theta()).sqrt()).abs() < 1e-9);
        assert!((v - 98.17).abs() < 0.01);
    }

    #[test]
    fn totally_real_floor_is_theta() {
        assert_eq!(asymptotic_floor(0.3, true), theta());
    }

    #[test]
    fn kernels_reject_bad_args() {
        assert!(kernels(0.0, 1e-9).is_err());
        assert!(kernels(1.0, 0.0).is_err());
        assert!(big_m(2.0, 3.0, 1.0, 1e-9).is_err());
        assert!(big_m(-1.0, 0.0, 1.0, 1e-9).is_err());
    }

    #[test]
    fn m_scale_identity() {
        let a = big_m(10.0, 4.0, 2.0, DEFAULT_TOL).unwrap().value;
        let b = big_m(5.0, 2.0, 1.0, DEFAULT_TOL).unwrap().value;
        assert!((a - b).abs() / b < 1e-6, "{a} vs {b}");
    }

    #[test]
    fn kernel_ranges_on_a_grid() {
        // R lives in [0, pi/2], P is positive, N increases in z.
        let mut prev_n = f64::NEG_INFINITY;
        for z in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 60.0, 150.0] {
            let k = kernels(z, DEFAULT_TOL).unwrap();
            assert!(k.r >= 0.0 && k.r <= r_limit() + 1e-12, "R({z}) = {}", k.r);
            assert!(k.p > 0.0);
            assert!(k.n > prev_n, "N not increasing at z = {z}");
            prev_n = k.n;
        }
    }

    #[test]
    fn scan_cap_is_reported() {
        let m = big_m_with(
            1e6,
            0.0,
            1.0,
            BigMOptions {
                tol: DEFAULT_TOL,
                z_cap: 1.0,
            },
        )
        .unwrap();
        assert!(m.scan_capped);
    }

    #[test]
    fn argmax_is_a_local_max() {
        let m = big_m(6.0, 0.0, 1.0, DEFAULT_TOL).unwrap();
        assert!(!m.scan_capped);
        let at = |z: f64| {
            let k = kernels(z, DEFAULT_TOL).unwrap();
            k.n - k.p / 6.0
        };
        let center = at(m.argmax_z);
        assert!(center >= at(m.argmax_z * 1.001) - 1e-12);
        assert!(center >= at(m.argmax_z * 0.999) - 1e-12);
    }
}
