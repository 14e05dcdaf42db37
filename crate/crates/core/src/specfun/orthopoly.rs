use crate::error::{Error, Result};

/// Largest polynomial degree accepted by the recurrences.
pub const MAX_DEGREE: usize = 4096;

/// Exponents `(alpha, beta)` of the Jacobi weight `(1-t)^alpha (1+t)^beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) {
            return Err(Error::domain(
                "JacobiParams::new",
                format!("need alpha, beta > -1, got ({alpha}, {beta})"),
            ));
        }
        Ok(Self { alpha, beta })
    }

    /// The pair `(1 + lambda, lambda)` with `lambda = (d-2)/2` used by the
    /// reproducing kernel of degree-`L` polynomials on `S^d`.
    pub fn harmonic(d: usize) -> Result<Self> {
        let lambda = (d as f64 - 2.0) / 2.0;
        Self::new(1.0 + lambda, lambda)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `P_n^{(alpha, beta)}(1) = binom(n + alpha, n)`.
    pub fn value_at_one(&self, n: usize) -> f64 {
        super::binomial(n as f64 + self.alpha, n)
    }
}

fn check_degree(function: &'static str, n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::domain(function, format!("degree {n} exceeds cap {MAX_DEGREE}")));
    }
    Ok(())
}

fn check_unit_interval(function: &'static str, t: f64) -> Result<()> {
    if !(t.abs() <= 1.0) {
        return Err(Error::domain(function, format!("|t| <= 1 required, got t = {t}")));
    }
    Ok(())
}

pub(crate) fn jacobi_unchecked(alpha: f64, beta: f64, n: usize, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let mut p_prev = 1.0;
    let mut p = (alpha + 1.0) + (ab + 2.0) * (t - 1.0) / 2.0;
    for k in 1..n {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let a1 = 2.0 * (k + 1.0) * (k + ab + 1.0) * c;
        let a2 = (c + 1.0) * (alpha * alpha - beta * beta);
        let a3 = c * (c + 1.0) * (c + 2.0);
        let a4 = 2.0 * (k + alpha) * (k + beta) * (c + 2.0);
        let next = ((a2 + a3 * t) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    p
}

/// Jacobi polynomial `P_n^{(alpha, beta)}(t)` in the standard normalization
/// `P_n(1) = binom(n + alpha, n)`.
pub fn jacobi_eval(params: JacobiParams, n: usize, t: f64) -> Result<f64> {
    check_degree("jacobi_eval", n)?;
    check_unit_interval("jacobi_eval", t)?;
    Ok(jacobi_unchecked(params.alpha, params.beta, n, t))
}

/// Derivative `d/dt P_n^{(alpha, beta)}(t) = (n + alpha + beta + 1)/2 * P_{n-1}^{(alpha+1, beta+1)}(t)`.
pub fn jacobi_derivative(params: JacobiParams, n: usize, t: f64) -> Result<f64> {
    check_degree("jacobi_derivative", n)?;
    check_unit_interval("jacobi_derivative", t)?;
    Ok(jacobi_derivative_unchecked(params.alpha, params.beta, n, t))
}

pub(crate) fn jacobi_derivative_unchecked(alpha: f64, beta: f64, n: usize, t: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    0.5 * (n as f64 + alpha + beta + 1.0) * jacobi_unchecked(alpha + 1.0, beta + 1.0, n - 1, t)
}

/// Gegenbauer polynomial on `S^d` normalized by `P_l^{(d)}(1) = 1`.
///
/// For `d = 2` these are the Legendre polynomials, for `d = 1` the Chebyshev
/// polynomials of the first kind.
pub fn gegenbauer_eval(d: usize, l: usize, t: f64) -> Result<f64> {
    check_degree("gegenbauer_eval", l)?;
    check_unit_interval("gegenbauer_eval", t)?;
    if d == 0 {
        return Err(Error::domain("gegenbauer_eval", "sphere dimension must be >= 1"));
    }
    let mut out = vec![0.0; l + 1];
    fill_gegenbauer(d, t, &mut out);
    Ok(out[l])
}

/// Values `P_0^{(d)}(t), ..., P_lmax^{(d)}(t)` written into a new vector.
pub fn gegenbauer_all(d: usize, lmax: usize, t: f64) -> Result<Vec<f64>> {
    check_degree("gegenbauer_all", lmax)?;
    check_unit_interval("gegenbauer_all", t)?;
    if d == 0 {
        return Err(Error::domain("gegenbauer_all", "sphere dimension must be >= 1"));
    }
    let mut out = vec![0.0; lmax + 1];
    fill_gegenbauer(d, t, &mut out);
    Ok(out)
}

/// Normalized recurrence `p_{n+1} = [2(n+mu) t p_n - n p_{n-1}] / (n + 2 mu)`, `mu = (d-1)/2`.
pub(crate) fn fill_gegenbauer(d: usize, t: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = t;
    let mu = (d as f64 - 1.0) / 2.0;
    for n in 1..out.len() - 1 {
        let nf = n as f64;
        out[n + 1] = (2.0 * (nf + mu) * t * out[n] - nf * out[n - 1]) / (nf + 2.0 * mu);
    }
}
