use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::specfun::quadrature::gauss_legendre;
use crate::specfun::{bessel_j, log_gamma};

/// End of the power-series piece.
const SPLIT: f64 = 2.0;
/// Start of the asymptotic tail.
const CUTOFF: f64 = 1000.0;
/// Gauss-Legendre nodes per unit-length panel on `[SPLIT, CUTOFF]`.
const PANEL_NODES: usize = 16;

/// `2^{a/2 + d} int_0^inf J_{d/2}(t)^2 t^{-1-a} dt`, the large-`L` limit of
/// [`proposition7_lhs`](super::proposition7_lhs). Finite exactly for `-1 < a < d`.
///
/// `[0, 2]` is integrated term by term from the series of `J_nu^2`, `[2, 1000]`
/// by composite Gauss-Legendre, and the tail from the Hankel expansion: the
/// mean of `J_nu^2` is `(1 + (mu-1)/(8t^2) + 3(mu-1)(mu-9)/(128t^4)) / (pi t)`
/// with `mu = 4 nu^2`, and its oscillating part `sin(2t - nu pi) / (pi t)`
/// contributes one integration-by-parts boundary term.
pub fn proposition7_limit(d: usize, a: f64) -> Result<f64> {
    let df = d as f64;
    if d == 0 || !(a > -1.0 && a < df) {
        return Err(Error::domain("proposition7_limit", format!("need -1 < a < d = {d}, got {a}")));
    }
    let nu = df / 2.0;
    let head = series_head(nu, a)?;

    let rule = gauss_legendre(PANEL_NODES)?;
    let mut middle = CompensatedSum::new();
    let panels = (CUTOFF - SPLIT) as usize;
    for k in 0..panels {
        let lo = SPLIT + k as f64;
        let mut err = None;
        middle.add(rule.integrate_on(lo, lo + 1.0, |t| match bessel_j(nu, t) {
            Ok(j) => j * j * t.powf(-1.0 - a),
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        }));
        if let Some(e) = err {
            return Err(e);
        }
    }

    let mu = 4.0 * nu * nu;
    let coeffs = [1.0, (mu - 1.0) / 8.0, 3.0 * (mu - 1.0) * (mu - 9.0) / 128.0];
    let t = CUTOFF;
    let mean: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let p = 1.0 + a + 2.0 * j as f64;
            c * t.powf(-p) / p
        })
        .sum::<f64>()
        / PI;
    let oscillating = (2.0 * t - nu * PI).cos() * t.powf(-2.0 - a) / (2.0 * PI);

    let total = head + middle.value() + mean + oscillating;
    Ok((a / 2.0 + df).exp2() * total)
}

/// `int_0^2 J_nu(t)^2 t^{-1-a} dt` from
/// `J_nu(t)^2 = sum_k (-1)^k (2nu+2k)! / (k! (nu+k)!^2 (2nu+k)!) (t/2)^{2nu+2k}`.
fn series_head(nu: f64, a: f64) -> Result<f64> {
    let scale = (-a).exp2() * (SPLIT / 2.0).powf(2.0 * nu - a);
    let mut sum = CompensatedSum::new();
    for k in 0..200 {
        let kf = k as f64;
        let ln = log_gamma(2.0 * nu + 2.0 * kf + 1.0)?
            - log_gamma(kf + 1.0)?
            - 2.0 * log_gamma(nu + kf + 1.0)?
            - log_gamma(2.0 * nu + kf + 1.0)?
            + 2.0 * kf * (SPLIT / 2.0).ln();
        let term = ln.exp() / (2.0 * nu + 2.0 * kf - a);
        sum.add(if k % 2 == 0 { term } else { -term });
        if k > 4 && term < 1e-18 * sum.value().abs() {
            break;
        }
    }
    Ok(scale * sum.value())
}
