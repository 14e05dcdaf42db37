use std::f64::consts::LN_2;

use super::harmonic::harmonic_excess;
use super::{little_o, ExpectedValue};
use crate::energy::{continuous_energy, continuous_log_energy, RieszExponent};
use crate::error::{Error, Result};
use crate::specfun::{gamma, gamma_ratio, zeta, DimensionTable};
use crate::wce::{q_coefficients, SobolevOrder, BOUNDARY_GAP};

/// A random point family whose expected energies are known in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyModel {
    /// `n` independent uniform points on `S^d`.
    Uniform { d: usize, n: usize },
    /// Harmonic ensemble: all polynomials of degree `<= degree` on `S^d`.
    Harmonic { d: usize, degree: usize },
    /// Spherical ensemble with `n` points on `S^2`.
    Spherical { n: usize },
    /// Stereographic images of the zeros of a degree-`n` elliptic polynomial.
    Elliptic { n: usize },
}

/// `E[E_s] - V_s N^2`, with the exponent of the dropped remainder when the
/// value is asymptotic.
#[derive(Debug, Clone, Copy)]
struct Excess {
    value: f64,
    remainder: Option<f64>,
}

impl Excess {
    fn exact(value: f64) -> Self {
        Self { value, remainder: None }
    }
}

impl EnergyModel {
    pub fn d(&self) -> usize {
        match *self {
            EnergyModel::Uniform { d, .. } | EnergyModel::Harmonic { d, .. } => d,
            EnergyModel::Spherical { .. } | EnergyModel::Elliptic { .. } => 2,
        }
    }

    /// Number of points.
    pub fn len(&self) -> Result<usize> {
        match *self {
            EnergyModel::Uniform { n, .. } | EnergyModel::Spherical { n } | EnergyModel::Elliptic { n } => Ok(n),
            EnergyModel::Harmonic { d, degree } => Ok(DimensionTable::new(d)?.polynomials(degree) as usize),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.len(), Ok(0))
    }

    fn check(&self) -> Result<usize> {
        if self.d() == 0 {
            return Err(Error::domain("EnergyModel", "sphere dimension must be >= 1"));
        }
        let n = self.len()?;
        if n == 0 {
            return Err(Error::domain("EnergyModel", "need at least one point"));
        }
        Ok(n)
    }

    /// Supremum of the exponents handled for this model.
    fn max_exponent(&self) -> f64 {
        match *self {
            EnergyModel::Uniform { d, .. } | EnergyModel::Harmonic { d, .. } => d as f64,
            // pair correlations vanish like r^2 at the diagonal
            EnergyModel::Spherical { .. } | EnergyModel::Elliptic { .. } => 4.0,
        }
    }

    /// Leading coefficient of `E[E_s]`: `V_s(S^d)`, continued analytically
    /// to `2 < s < 4` on `S^2`.
    fn leading(&self, s: f64) -> Result<f64> {
        let d = self.d();
        if s == 0.0 {
            continuous_log_energy(d)
        } else if s < d as f64 {
            continuous_energy(d, RieszExponent::new(s)?)
        } else {
            Ok((1.0 - s).exp2() / (2.0 - s))
        }
    }

    /// `E[E_s] - V_s N^2`; `s = 0` is the logarithmic energy.
    fn excess(&self, s: f64) -> Result<Excess> {
        let n = self.check()?;
        let nf = n as f64;
        if !s.is_finite() || s >= self.max_exponent() {
            return Err(Error::domain(
                "expected_energy",
                format!("need s < {} for a finite expectation, got {s}", self.max_exponent()),
            ));
        }
        match *self {
            EnergyModel::Uniform { .. } => Ok(Excess::exact(-nf * self.leading(s)?)),
            EnergyModel::Harmonic { d, degree } => {
                if s == 0.0 {
                    return Err(Error::Unsupported {
                        function: "expected_energy",
                        detail: "logarithmic energy of the harmonic ensemble".into(),
                    });
                }
                Ok(Excess::exact(harmonic_excess(d, degree, s)?))
            }
            EnergyModel::Spherical { .. } => {
                if s == 0.0 || (s - 2.0).abs() < BOUNDARY_GAP {
                    return Err(Error::domain(
                        "expected_energy_spherical",
                        format!("s = {s} is excluded (s = 0 and s = 2 are special)"),
                    ));
                }
                let b = 1.0 - s / 2.0;
                Ok(Excess::exact(-nf * nf * gamma(b)? * gamma_ratio(nf, b)? / s.exp2()))
            }
            EnergyModel::Elliptic { .. } => {
                if s == 0.0 {
                    return Ok(Excess::exact(-0.5 * nf * nf.ln() - (0.5 - LN_2) * nf));
                }
                if (s - 2.0).abs() < BOUNDARY_GAP {
                    return Err(Error::domain("expected_energy_elliptic", "s = 2 is excluded"));
                }
                if s == -2.0 {
                    return Ok(Excess {
                        value: -8.0 * zeta(3.0)? / nf,
                        remainder: Some(-1.0),
                    });
                }
                let z = 1.0 - s / 2.0;
                if z <= 1.0 {
                    return Err(Error::Unsupported {
                        function: "expected_energy_elliptic",
                        detail: format!("s = {s} needs zeta({z}), outside (1, inf)"),
                    });
                }
                let c = (-s).exp2() * (s / 2.0) * (1.0 + s / 2.0) * gamma(z)? * zeta(z)?;
                let p = 1.0 + s / 2.0;
                Ok(Excess {
                    value: c * nf.powf(p),
                    remainder: Some(p),
                })
            }
        }
    }
}

fn finish(value: f64, remainder: Option<f64>) -> ExpectedValue {
    match remainder {
        None => ExpectedValue::exact(value),
        Some(p) => ExpectedValue::asymptotic(value, little_o(p)),
    }
}

/// `E[E_s]` for the model; `s = 0` is the logarithmic energy.
pub fn expected_energy(model: EnergyModel, s: f64) -> Result<ExpectedValue> {
    let excess = model.excess(s)?;
    let nf = model.len()? as f64;
    let v = model.leading(s)?;
    Ok(finish(v * nf * nf + excess.value, excess.remainder))
}

/// Expected Riesz `s`-energy of the spherical ensemble with `n` points,
/// `2^{1-s}/(2-s) N^2 - Gamma(N) Gamma(1 - s/2) / (2^s Gamma(N + 1 - s/2)) N^2`.
pub fn expected_energy_spherical(n: usize, s: f64) -> Result<ExpectedValue> {
    if s == 0.0 {
        return Err(Error::domain("expected_energy_spherical", "s = 0 is excluded"));
    }
    expected_energy(EnergyModel::Spherical { n }, s)
}

/// Leading terms of the expected Riesz `s`-energy of elliptic zeros,
/// `2^{1-s}/(2-s) N^2 + C(s) N^{1+s/2}` with
/// `C(s) = 2^{-s} (s/2) (1 + s/2) Gamma(1 - s/2) zeta(1 - s/2)`.
///
/// `s = -2` returns `2N^2 - 8 zeta(3)/N` and `s = 0` the exact logarithmic
/// energy. `C(s)` is only evaluated where `zeta` needs no continuation, so
/// `0 < s < 4` is reported as unsupported.
pub fn expected_energy_elliptic(n: usize, s: f64) -> Result<ExpectedValue> {
    expected_energy(EnergyModel::Elliptic { n }, s)
}

/// `(1/2 - log 2) N^2 - (1/2) N log N - (1/2 - log 2) N`.
pub fn expected_log_energy_elliptic(n: usize) -> Result<ExpectedValue> {
    expected_energy(EnergyModel::Elliptic { n }, 0.0)
}

/// `E[wce^2]` in `H^s(S^d)` for the model.
///
/// With `X_r = E[E_r] - V_r N^2` and `t = 1 - r^2/2`, the pair sums of
/// `P_1` and `P_2` are `-X_{-2}/2` and `(d+1)(X_{-4}/4 - X_{-2})/d`, so
///
/// `N^2 E[wce^2] = (-1)^{M+1} X_{d-2s} + q_1 S_1 + q_2 S_2`
///
/// where `q_l` are the coefficients of `Q_M`. Asymptotic inputs give an
/// asymptotic result whose remainder is the largest input remainder over `N^2`.
pub fn expected_wce2(model: EnergyModel, s: f64) -> Result<ExpectedValue> {
    let order = SobolevOrder::new(model.d(), s)?;
    let nf = model.check()? as f64;
    let df = model.d() as f64;
    let q = q_coefficients(order)?;

    let main = model.excess(df - 2.0 * s)?;
    let mut total = order.sign() * main.value;
    let mut remainder = main.remainder;
    let mut track = |r: Option<f64>| {
        if let Some(p) = r {
            remainder = Some(remainder.map_or(p, |q: f64| q.max(p)));
        }
    };
    if order.m() >= 1 {
        let x2 = model.excess(-2.0)?;
        track(x2.remainder);
        let s1 = -0.5 * x2.value;
        let mut poly = q[1] * s1;
        if order.m() >= 2 {
            let x4 = model.excess(-4.0)?;
            track(x4.remainder);
            let s2 = (df + 1.0) * (0.25 * x4.value - x2.value) / df;
            poly += q[2] * s2;
        }
        total += poly;
    }
    Ok(finish(total / (nf * nf), remainder.map(|p| p - 2.0)))
}

/// `E[wce^2]` for the spherical ensemble when `1 < s < 2`:
/// `(2^{2s} Gamma(s) / 4) Gamma(N) / Gamma(N + s)`.
pub fn expected_wce2_spherical(n: usize, s: f64) -> Result<ExpectedValue> {
    if !(s > 1.0 && s < 2.0) {
        return Err(Error::domain("expected_wce2_spherical", format!("need 1 < s < 2, got {s}")));
    }
    if n == 0 {
        return Err(Error::domain("expected_wce2_spherical", "need at least one point"));
    }
    let c = (2.0 * s).exp2() * gamma(s)? / 4.0;
    Ok(ExpectedValue::exact(c * gamma_ratio(n as f64, s)?))
}
