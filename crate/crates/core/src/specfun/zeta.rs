use crate::error::{Error, Result};

/// Number of explicit terms before the Euler-Maclaurin correction.
const EM_TERMS: usize = 16;

/// Bernoulli numbers `B_2, B_4, ..., B_20`.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174_611.0 / 330.0,
];

/// Riemann zeta function for real `s > 1`.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) || s.is_nan() {
        return Err(Error::domain("zeta", format!("only s > 1 is supported, got {s}")));
    }
    if s.is_infinite() {
        return Ok(1.0);
    }
    let n = EM_TERMS as f64;
    // head sum from the smallest term upward
    let mut sum = 0.0;
    for k in (1..EM_TERMS).rev() {
        sum += (k as f64).powf(-s);
    }
    let n_pow = n.powf(-s);
    sum += n * n_pow / (s - 1.0) + 0.5 * n_pow;
    // sum_k B_{2k}/(2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}
    let mut rising = s; // s (s+1) ... (s+2k-2)
    let mut fact = 2.0; // (2k)!
    let mut power = n_pow / n; // N^{-s-2k+1}
    for (k, b) in BERNOULLI.iter().enumerate() {
        let term = b / fact * rising * power;
        sum += term;
        let m = 2.0 * (k as f64 + 1.0);
        rising *= (s + m - 1.0) * (s + m);
        fact *= (m + 1.0) * (m + 2.0);
        power /= n * n;
    }
    Ok(sum)
}
