use crate::error::{Error, Result};

/// Arguments below this are shifted upward before the Stirling series is applied.
const STIRLING_MIN: f64 = 10.0;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2k} / (2k (2k-1))` for k = 1..8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Tail of the Stirling series, `ln Gamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2]`, for x >= 10.
fn stirling_correction(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for c in STIRLING_COEFFS.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc * inv
}

fn ln_gamma_large(x: f64) -> f64 {
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + stirling_correction(x)
}

/// Moves `x` above [`STIRLING_MIN`]; returns the shifted argument and the
/// product `x (x+1) ... (shifted-1)`.
fn shift_up(x: f64) -> (f64, f64) {
    let mut y = x;
    let mut prod = 1.0;
    while y < STIRLING_MIN {
        prod *= y;
        y += 1.0;
    }
    (y, prod)
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    let (y, prod) = shift_up(x);
    ln_gamma_large(y) - prod.abs().ln()
}

/// Natural logarithm of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("log_gamma", format!("x = {x} is not a finite positive number")));
    }
    Ok(ln_gamma_pos(x))
}

/// Gamma function for any real argument that is not a non-positive integer.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || (x <= 0.0 && x == x.round()) {
        return Err(Error::domain("gamma", format!("pole or non-finite argument x = {x}")));
    }
    if x > 0.0 {
        return Ok(ln_gamma_pos(x).exp());
    }
    let (y, prod) = shift_up(x);
    Ok(ln_gamma_large(y).exp() / prod)
}

/// `Gamma(x) / Gamma(x + a)` for `x > 0` and `x + a > 0`.
///
/// Both arguments are shifted above 10 and the ratio of the shifted gammas is
/// taken from the difference of Stirling series written with `ln_1p`, so the
/// result keeps full relative precision even when `x` is in the millions.
pub fn gamma_ratio(x: f64, a: f64) -> Result<f64> {
    let z = x + a;
    if !(x > 0.0) || !(z > 0.0) || !x.is_finite() || !a.is_finite() {
        return Err(Error::domain(
            "gamma_ratio",
            format!("need x > 0 and x + a > 0, got x = {x}, a = {a}"),
        ));
    }
    if a == 0.0 {
        return Ok(1.0);
    }
    let (xs, px) = shift_up(x);
    let (zs, pz) = shift_up(z);
    // Gamma(x)/Gamma(z) = [Gamma(xs)/px] / [Gamma(zs)/pz]
    let b = zs - xs;
    let ln_ratio = -b * xs.ln() - (zs - 0.5) * (b / xs).ln_1p() + b + stirling_correction(xs)
        - stirling_correction(zs);
    Ok(ln_ratio.exp() * (pz / px))
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)` as a literal product.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (x + k as f64))
}

/// `(a)_n / (b)_n` as a product of ratios; stays finite where the two
/// Pochhammer symbols individually overflow. Signs are exact.
pub fn pochhammer_ratio(a: f64, b: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * ((a + k as f64) / (b + k as f64)))
}

/// Generalized binomial coefficient `binom(a + n, n) = (a+1)_n / n!`.
pub fn binomial(a_plus_n: f64, n: usize) -> f64 {
    let a = a_plus_n - n as f64;
    (1..=n).fold(1.0, |acc, j| acc * ((a + j as f64) / j as f64))
}
