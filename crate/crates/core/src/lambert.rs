//! Principal branch of the Lambert W function.
//!
//! `W0(z)` is the solution `w >= -1` of `w * e^w = z` for `z >= -1/e`. Used
//! here as a closed-form cross-check for `x^x = y`: `x * ln x = ln y`
//! gives `ln x = W0(ln y)`.

use core::f64::consts::E;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::{Error, Result};

/// Iteration cap for Halley's method.
pub const MAX_HALLEY_ITERATIONS: usize = 50;

/// Above this argument `w * e^w` is evaluated in log form, since `e^w` would
/// overflow near the top of the double range.
const LOG_FORM_THRESHOLD: f64 = 1e100;

/// Principal branch `W0(z)`.
///
/// Starts from `ln(1 + z)` for `z >= 0` and from `z * e` for
/// `-1/e < z < 0`, then applies Halley steps until the update is within four
/// ulps of the iterate or [`MAX_HALLEY_ITERATIONS`] is reached.
///
/// Returns a domain error for `z < -1/e` or NaN. `W0(inf) = inf`.
pub fn lambert_w0(z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(Error::domain("lambert_w0 argument is NaN"));
    }
    let branch_point = -(-1.0f64).exp();
    if z < branch_point {
        return Err(Error::domain("lambert_w0 requires z >= -1/e"));
    }
    if z == branch_point {
        return Ok(-1.0);
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z.is_infinite() {
        return Ok(f64::INFINITY);
    }
    if z > LOG_FORM_THRESHOLD {
        return Ok(halley_log_form(z));
    }

    let mut w = if z >= 0.0 { z.ln_1p() } else { z * E };
    for _ in 0..MAX_HALLEY_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - z;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let mut next = w - f / denom;
        if !next.is_finite() {
            break;
        }
        // The principal branch never goes below -1.
        if next < -1.0 {
            next = 0.5 * (w - 1.0);
        }
        let step = (next - w).abs();
        w = next;
        if step <= 4.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    Ok(w)
}

/// Halley on `g(w) = w + ln w - ln z`, which has the same root for `z > e`.
fn halley_log_form(z: f64) -> f64 {
    let log_z = z.ln();
    let mut w = z.ln_1p();
    for _ in 0..MAX_HALLEY_ITERATIONS {
        let g = w + w.ln() - log_z;
        let g1 = 1.0 + 1.0 / w;
        let g2 = -1.0 / (w * w);
        let next = w - 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2);
        let step = (next - w).abs();
        w = next;
        if step <= 4.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    w
}
