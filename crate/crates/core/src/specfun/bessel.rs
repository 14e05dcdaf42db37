use std::f64::consts::PI;

use super::gamma::ln_gamma_pos;
use crate::error::{Error, Result};

/// Below this argument the power series is used; above it the Hankel
/// asymptotic expansion (orders `nu <= 3`, error below 1e-10 at the switch).
pub const BESSEL_SERIES_SWITCH: f64 = 12.0;

/// Orders above this use upward recurrence from the fractional base order.
const HANKEL_MAX_ORDER: f64 = 3.0;

/// Bessel function of the first kind `J_nu(t)` for `nu >= 0`, `t >= 0`.
pub fn bessel_j(nu: f64, t: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::domain("bessel_j", format!("order must be >= 0, got {nu}")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain("bessel_j", format!("argument must be >= 0, got {t}")));
    }
    Ok(bessel_j_unchecked(nu, t))
}

pub(crate) fn bessel_j_unchecked(nu: f64, t: f64) -> f64 {
    if t < BESSEL_SERIES_SWITCH || nu >= t {
        series(nu, t)
    } else if nu <= HANKEL_MAX_ORDER {
        hankel(nu, t)
    } else {
        upward(nu, t)
    }
}

fn series(nu: f64, t: f64) -> f64 {
    if t == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * t;
    let mut term = (nu * half.ln() - ln_gamma_pos(nu + 1.0)).exp();
    let q = -half * half;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k > half {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    sum
}

/// Hankel expansion `J = sqrt(2/(pi t)) (P cos w - Q sin w)`, summed until the
/// terms stop decreasing.
fn hankel(nu: f64, t: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let w = t - (0.5 * nu + 0.25) * PI;
    let mut p = 1.0;
    let mut q = 0.0;
    // a_k(nu) / t^k; the alternating signs are applied in the match below
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= (mu - odd * odd) / (kf * 8.0 * t);
        if a == 0.0 || a.abs() >= prev {
            break;
        }
        prev = a.abs();
        // P = a0 - a2 + a4 - ..., Q = a1 - a3 + a5 - ...
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    (2.0 / (PI * t)).sqrt() * (p * w.cos() - q * w.sin())
}

/// `J_{nu0 + k}` by the recurrence `J_{m+1} = (2m/t) J_m - J_{m-1}`, stable while `m < t`.
fn upward(nu: f64, t: f64) -> f64 {
    let base = nu.fract();
    let steps = (nu - base).round() as usize;
    let mut j_prev = hankel(base, t);
    let mut j = hankel(base + 1.0, t);
    if steps == 0 {
        return j_prev;
    }
    for m in 1..steps {
        let order = base + m as f64;
        let next = 2.0 * order / t * j - j_prev;
        j_prev = j;
        j = next;
    }
    j
}
