//! Bessel functions of the first kind J_ν for real ν ≥ 0 and their first zero.
//!
//! Small arguments use the ascending series. Beyond the range where the series
//! stays well conditioned we switch to Schläfli's integral
//! J_ν(x) = (1/π)∫₀^π cos(νt − x sin t) dt − (sin νπ/π)∫₀^∞ e^{−x sinh t − νt} dt,
//! evaluated with the adaptive quadrature.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::integrate_with;

pub const MAX_ARGUMENT: f64 = 50.0;
pub const MAX_ZERO_ORDER: f64 = 10.0;

fn series_is_stable(nu: f64, x: f64) -> bool {
    x <= 12.0 || x * x <= 4.0 * (nu + 1.0)
}

fn check(nu: f64, x: f64) -> Result<()> {
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(Error::range(nu, "[0, inf) for the Bessel order"));
    }
    if !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(Error::range(x, "[0, 50] for the Bessel argument"));
    }
    Ok(())
}

/// Σ_k (−1)^k (x/2)^{2k} / (k! Γ(k+ν+1)), i.e. J_ν(x) / (x/2)^ν.
fn reduced_series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0 / libm::tgamma(nu + 1.0);
    let mut sum = term;
    for k in 0..500 {
        let kf = k as f64;
        term *= -q / ((kf + 1.0) * (kf + 1.0 + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn schlafli(nu: f64, x: f64) -> f64 {
    let oscill = integrate_with(|t: f64| (nu * t - x * t.sin()).cos(), 0.0, PI, 1e-14, 1e-15) / PI;
    let s = (nu * PI).sin();
    if s.abs() < 1e-15 {
        return oscill;
    }
    let upper = (40.0 / x).asinh() + 1.0;
    let tail = integrate_with(|t: f64| (-x * t.sinh() - nu * t).exp(), 0.0, upper, 1e-14, 1e-16);
    oscill - s / PI * tail
}

/// J_ν(x) for ν ≥ 0, 0 ≤ x ≤ 50.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if series_is_stable(nu, x) {
        Ok((0.5 * x).powf(nu) * reduced_series(nu, x))
    } else {
        Ok(schlafli(nu, x))
    }
}

/// J_ν(x) / x^ν, finite at x = 0 where it equals 1 / (2^ν Γ(ν+1)).
pub fn bessel_j_scaled(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    if series_is_stable(nu, x) {
        Ok(0.5f64.powf(nu) * reduced_series(nu, x))
    } else {
        Ok(schlafli(nu, x) / x.powf(nu))
    }
}

/// J'_ν(x) = (ν/x) J_ν(x) − J_{ν+1}(x), for x > 0.
pub fn bessel_j_derivative(nu: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::range(x, "(0, 50] for the Bessel derivative"));
    }
    Ok(nu / x * bessel_j(nu, x)? - bessel_j(nu + 1.0, x)?)
}

/// First positive zero j_{ν,1} of J_ν, for ν ∈ [0, 10].
///
/// The zero lies in (ν + 1, ν + 2ν^{1/3} + 3) throughout this order range and
/// is the only one there; the bracket is scanned for the first sign change,
/// then polished with Newton steps guarded by bisection.
pub fn bessel_first_zero(nu: f64) -> Result<f64> {
    if !(0.0..=MAX_ZERO_ORDER).contains(&nu) {
        return Err(Error::range(nu, "[0, 10] for the order of the first zero"));
    }
    let lo0 = nu + 1.0;
    let hi0 = nu + 2.0 * nu.cbrt() + 3.0;
    let steps = 64;
    let mut lo = lo0;
    let mut f_lo = bessel_j(nu, lo)?;
    let mut hi = f64::NAN;
    for k in 1..=steps {
        let x = lo0 + (hi0 - lo0) * k as f64 / steps as f64;
        let f = bessel_j(nu, x)?;
        if f_lo > 0.0 && f <= 0.0 {
            hi = x;
            break;
        }
        lo = x;
        f_lo = f;
    }
    if hi.is_nan() {
        return Err(Error::BracketFailure { lo: lo0, hi: hi0 });
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let f = bessel_j(nu, x)?;
        if f > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let d = bessel_j_derivative(nu, x)?;
        let newton = x - f / d;
        let next = if d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 1e-15 * x {
            return Ok(next);
        }
        x = next;
        if hi - lo <= 1e-15 * x {
            return Ok(x);
        }
    }
    Ok(x)
}
