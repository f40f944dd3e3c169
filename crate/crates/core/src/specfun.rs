//! Double-precision special functions: the principal (positive) branch of
//! Lambert-W, the normalized sinc, log-gamma and beta.
//!
//! Everything here is a pure function of its arguments.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Below this radius `sinc` switches to its Taylor expansion.
pub const SINC_SERIES_THRESHOLD: f64 = 1e-4;

const W_MAX_ITERATIONS: usize = 8;
const W_RESIDUAL_TOL: f64 = 1e-14;
/// Above this argument `w e^w` may overflow, so the log form is iterated.
const W_LOG_FORM_THRESHOLD: f64 = 1e300;

/// Outcome of a Lambert-W evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WResult {
    pub value: f64,
    pub iterations: usize,
    /// Absolute residual `|w e^w - x|` at the returned value.
    pub residual: f64,
}

/// Principal branch `W0(x)` for `x >= 0`, i.e. the `w >= 0` solving `w e^w = x`.
///
/// Starts from `ln(1 + x)` and applies Halley steps until the residual drops
/// below `1e-14 * max(1, x)`.
pub fn lambert_w0(x: f64) -> Result<WResult> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain("lambert_w0", format!("argument {x} is not a finite non-negative number")));
    }
    if x == 0.0 {
        return Ok(WResult {
            value: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }
    if x > W_LOG_FORM_THRESHOLD {
        return Ok(lambert_w0_log_form(x));
    }

    let tol = W_RESIDUAL_TOL * x.max(1.0);
    let mut w = x.ln_1p();
    let mut iterations = 0;
    let mut residual = w * w.exp() - x;
    while residual.abs() > tol && iterations < W_MAX_ITERATIONS {
        let ew = w.exp();
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * residual / (2.0 * wp1);
        let next = w - residual / denom;
        iterations += 1;
        if next == w {
            break;
        }
        w = next;
        residual = w * w.exp() - x;
    }

    Ok(WResult {
        value: w,
        iterations,
        residual: residual.abs(),
    })
}

// Newton on w + ln w - ln x = 0; avoids forming w e^w near the overflow limit.
fn lambert_w0_log_form(x: f64) -> WResult {
    let lx = x.ln();
    let mut w = lx - lx.ln();
    let mut iterations = 0;
    while iterations < W_MAX_ITERATIONS {
        let g = w + w.ln() - lx;
        let next = w - g * w / (w + 1.0);
        iterations += 1;
        if (next - w).abs() <= f64::EPSILON * w {
            w = next;
            break;
        }
        w = next;
    }
    // Relative residual scaled back to x; w e^w itself may not be representable.
    let rel = (w + w.ln() - lx).exp_m1().abs();
    WResult {
        value: w,
        iterations,
        residual: rel * x,
    }
}

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    // Every double of this magnitude is an even integer.
    if x.abs() >= 9_007_199_254_740_992.0 {
        return 0.0;
    }
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if (n as i64) & 1 == 1 {
        -s
    } else {
        s
    }
}

/// Normalized sinc, `sin(pi x) / (pi x)`, with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_SERIES_THRESHOLD {
        let t = (PI * x) * (PI * x);
        1.0 - t / 6.0 + t * t / 120.0
    } else {
        sin_pi(x) / (PI * x)
    }
}

const LANCZOS_G_SHIFT: f64 = 5.242_187_5;
const LANCZOS_SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const LANCZOS_BASE: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_76e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_88e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// `ln Gamma(x)` for `x > 0` (Lanczos approximation, 14 terms).
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("log_gamma", format!("argument {x} must be positive and finite")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    let tmp = x + LANCZOS_G_SHIFT;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = LANCZOS_BASE;
    let mut y = x;
    for c in LANCZOS_COEFFS {
        y += 1.0;
        ser += c / y;
    }
    Ok(tmp + (LANCZOS_SQRT_2PI * ser / x).ln())
}

/// `ln B(a, b)`.
pub fn log_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::domain("beta", format!("arguments ({a}, {b}) must be positive")));
    }
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

/// Euler beta function `B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    log_beta(a, b).map(f64::exp)
}
