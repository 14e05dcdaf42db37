//! Discrete Riesz and logarithmic energies, and the continuous energy
//! `V_s(S^d)` of the normalized surface measure.
//!
//! `f_s(r) = r^{-s}` for `s != 0` and `f_0(r) = -log r`. The discrete energy
//! sums `f_s` over ordered pairs `i != j`. An [`InnerProducts`] table holds
//! both `<x_i, x_j>` and `|x_i - x_j|^2` (the latter from coordinate
//! differences, so close pairs keep full relative accuracy) and serves every
//! exponent.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::specfun::{gamma, log_gamma};
use crate::sphere::Configuration;

/// Energy exponent `s`; negative values are positive powers of distance.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RieszExponent(f64);

impl RieszExponent {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::domain("RieszExponent::new", format!("s must be finite, got {s}")));
        }
        Ok(Self(s))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_log(self) -> bool {
        self.0 == 0.0
    }

    /// `f_s(r)`.
    pub fn kernel(self, r: f64) -> f64 {
        if self.0 == 0.0 {
            -r.ln()
        } else {
            r.powf(-self.0)
        }
    }

    /// `f_s` as a function of `t = <x, y>`, using `r^2 = 2 - 2t`.
    #[inline]
    pub fn kernel_of_dot(self, t: f64) -> f64 {
        self.kernel_of_squared(2.0 - 2.0 * t.clamp(-1.0, 1.0))
    }

    /// `f_s` as a function of `r^2`.
    #[inline]
    pub fn kernel_of_squared(self, r2: f64) -> f64 {
        if self.0 == 0.0 {
            -0.5 * r2.ln()
        } else {
            r2.powf(-0.5 * self.0)
        }
    }
}

/// Upper-triangle tables of `<x_i, x_j>` and `|x_i - x_j|^2`, `i < j`, in
/// row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerProducts {
    n: usize,
    dots: Vec<f64>,
    squared: Vec<f64>,
}

impl InnerProducts {
    pub fn new(cfg: &Configuration) -> Self {
        let pts = cfg.points();
        let n = pts.len();
        let m = n * n.saturating_sub(1) / 2;
        let mut dots = Vec::with_capacity(m);
        let mut squared = Vec::with_capacity(m);
        for i in 0..n {
            let a = pts[i].coords();
            for p in &pts[i + 1..] {
                let b = p.coords();
                dots.push(pts[i].dot(p).clamp(-1.0, 1.0));
                squared.push(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().min(4.0));
            }
        }
        Self { n, dots, squared }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Inner products for `i < j`, in the order `(0,1), (0,2), ..., (1,2), ...`.
    pub fn upper(&self) -> &[f64] {
        &self.dots
    }

    /// Squared distances for `i < j`, same order as [`InnerProducts::upper`].
    pub fn squared_distances(&self) -> &[f64] {
        &self.squared
    }

    /// Iterates `(i, j, <x_i, x_j>)` over `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.index_pairs().zip(self.dots.iter().copied()).map(|((i, j), t)| (i, j, t))
    }

    fn index_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// `E_s` over ordered pairs. Any `N >= 0` is accepted (fewer than two
    /// points give 0).
    pub fn riesz_energy(&self, s: RieszExponent) -> Result<f64> {
        let mut acc = CompensatedSum::new();
        for (k, &r2) in self.squared.iter().enumerate() {
            if r2 == 0.0 && s.value() >= 0.0 {
                let (i, j) = self.index_pairs().nth(k).expect("index within table");
                return Err(Error::SingularEnergy { i, j, s: s.value() });
            }
            acc.add(s.kernel_of_squared(r2));
        }
        Ok(2.0 * acc.value())
    }
}

fn require_pairs(cfg: &Configuration, function: &'static str) -> Result<()> {
    if cfg.len() < 2 {
        return Err(Error::domain(function, format!("need N >= 2 points, got {}", cfg.len())));
    }
    Ok(())
}

/// `E_s(x_1, ..., x_N) = sum_{i != j} f_s(|x_i - x_j|)`; `s = 0` gives the
/// logarithmic energy.
pub fn riesz_energy(cfg: &Configuration, s: RieszExponent) -> Result<f64> {
    require_pairs(cfg, "riesz_energy")?;
    InnerProducts::new(cfg).riesz_energy(s)
}

/// `E_0 = sum_{i != j} log(1 / |x_i - x_j|)`.
pub fn log_energy(cfg: &Configuration) -> Result<f64> {
    riesz_energy(cfg, RieszExponent(0.0))
}

/// `V_s(S^d) = 2^{d-s-1} Gamma((d+1)/2) Gamma((d-s)/2) / (sqrt(pi) Gamma(d - s/2))`,
/// the energy of the normalized surface measure, for `s < d`, `s != 0`.
pub fn continuous_energy(d: usize, s: RieszExponent) -> Result<f64> {
    let s = s.value();
    let df = d as f64;
    if d == 0 || !(s < df) || s == 0.0 {
        return Err(Error::domain(
            "continuous_energy",
            format!("need d >= 1, s < d and s != 0, got d = {d}, s = {s}"),
        ));
    }
    let (a, b, c) = ((df + 1.0) / 2.0, (df - s) / 2.0, df - s / 2.0);
    if a.max(b).max(c) < 170.0 {
        Ok((df - s - 1.0).exp2() * gamma(a)? * gamma(b)? / (PI.sqrt() * gamma(c)?))
    } else {
        let ln = (df - s - 1.0) * LN_2 + log_gamma(a)? + log_gamma(b)? - 0.5 * PI.ln() - log_gamma(c)?;
        Ok(ln.exp())
    }
}

/// Logarithmic energy of the normalized surface measure,
/// `-log 2 + (psi(d) - psi(d/2)) / 2`.
pub fn continuous_log_energy(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::domain("continuous_log_energy", "sphere dimension must be >= 1"));
    }
    // psi(d) - psi(d/2) by the recurrence psi(x+1) = psi(x) + 1/x
    let diff = if d.is_multiple_of(2) {
        (d / 2..d).map(|k| 1.0 / k as f64).sum::<f64>()
    } else {
        // psi(d) = -gamma + H_{d-1}, psi(n + 1/2) = -gamma - 2 log 2 + sum_{k<=n} 2/(2k-1)
        let n = (d - 1) / 2;
        let h: f64 = (1..d).map(|k| 1.0 / k as f64).sum();
        let odd: f64 = (1..=n).map(|k| 2.0 / (2 * k - 1) as f64).sum();
        h + 2.0 * LN_2 - odd
    };
    Ok(-LN_2 + 0.5 * diff)
}
