use std::f64::consts::PI;

use super::ExpectedValue;
use crate::error::{Error, Result};
use crate::specfun::quadrature::gauss_jacobi;
use crate::specfun::{gamma, jacobi_unchecked, DimensionTable};
use crate::wce::SobolevOrder;

/// Extra Gauss-Jacobi nodes beyond the `L + 1` that make the integrals exact.
const EXTRA_NODES: usize = 32;

/// `c_d = Gamma((d+1)/2) / (sqrt(pi) Gamma(d/2))`, the density of `<x, e>`
/// against `(1 - t^2)^{d/2 - 1} dt` for `x` uniform on `S^d`.
fn zonal_constant(d: usize) -> Result<f64> {
    let df = d as f64;
    Ok(gamma((df + 1.0) / 2.0)? / (PI.sqrt() * gamma(df / 2.0)?))
}

/// `int (P_L(t) / P_L(1))^2 (1 - t)^alpha (1 + t)^{d/2 - 1} dt` for the
/// kernel polynomial `P_L = P_L^{(d/2, d/2 - 1)}`.
fn normalized_kernel_integral(d: usize, degree: usize, alpha: f64) -> Result<f64> {
    let lambda = d as f64 / 2.0 - 1.0;
    let rule = gauss_jacobi(degree + EXTRA_NODES, alpha, lambda)?;
    let p1 = jacobi_unchecked(1.0 + lambda, lambda, degree, 1.0);
    Ok(rule.integrate(|t| {
        let p = jacobi_unchecked(1.0 + lambda, lambda, degree, t) / p1;
        p * p
    }))
}

/// `E[E_s] - V_s N^2 = -int int |K(x, y)|^2 |x - y|^{-s}` for the harmonic
/// ensemble, with `K = N P_L(<x,y>) / P_L(1)`.
pub(crate) fn harmonic_excess(d: usize, degree: usize, s: f64) -> Result<f64> {
    if d == 0 || !(s < d as f64) {
        return Err(Error::domain("harmonic_excess", format!("need d >= 1 and s < d, got d = {d}, s = {s}")));
    }
    let n = DimensionTable::new(d)?.polynomials(degree) as f64;
    // |x - y|^{-s} = 2^{-s/2} (1 - t)^{-s/2}
    let alpha = d as f64 / 2.0 - 1.0 - s / 2.0;
    let integral = normalized_kernel_integral(d, degree, alpha)?;
    Ok(-n * n * zonal_constant(d)? * (-s / 2.0).exp2() * integral)
}

/// `E[wce^2]` of the harmonic ensemble of degree `L` when `d/2 < s < d/2 + 1`:
///
/// `c_d 2^{s - d/2} / P_L(1)^2 * int P_L(t)^2 (1 - t)^{s-1} (1 + t)^{d/2 - 1} dt`
///
/// with `P_L = P_L^{(d/2, d/2 - 1)}`. The weight is carried by a Gauss-Jacobi
/// rule, so the quadrature is exact up to rounding.
pub fn expected_wce2_harmonic_quadrature(d: usize, degree: usize, s: f64) -> Result<ExpectedValue> {
    let order = SobolevOrder::new(d, s)?;
    if order.m() != 0 {
        return Err(Error::domain(
            "expected_wce2_harmonic_quadrature",
            format!("need d/2 < s < d/2 + 1, got s = {s} on S^{d}"),
        ));
    }
    let df = d as f64;
    let integral = normalized_kernel_integral(d, degree, s - 1.0)?;
    Ok(ExpectedValue::exact(zonal_constant(d)? * (s - df / 2.0).exp2() * integral))
}

/// `L^{-a} int P_L^{(1+lambda, lambda)}(t)^2 (1 - t)^{lambda - a/2} (1 + t)^lambda dt`
/// with `lambda = d/2 - 1`.
pub fn proposition7_lhs(d: usize, a: f64, degree: usize) -> Result<f64> {
    let df = d as f64;
    if d == 0 || !(a > -1.0 && a < df) {
        return Err(Error::domain("proposition7_lhs", format!("need -1 < a < d = {d}, got {a}")));
    }
    if degree == 0 {
        return Err(Error::domain("proposition7_lhs", "degree must be >= 1"));
    }
    let lambda = df / 2.0 - 1.0;
    let rule = gauss_jacobi(degree + EXTRA_NODES, lambda - a / 2.0, lambda)?;
    let integral = rule.integrate(|t| {
        let p = jacobi_unchecked(1.0 + lambda, lambda, degree, t);
        p * p
    });
    Ok((degree as f64).powf(-a) * integral)
}
