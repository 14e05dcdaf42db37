use crate::energy::{continuous_energy, RieszExponent};
use crate::error::{Error, Result};

/// Values of `s` closer than this to `d/2 + k` are rejected.
pub const BOUNDARY_GAP: f64 = 1e-9;

/// Largest supported `M`.
pub const MAX_ORDER: usize = 2;

/// Smoothness `s > d/2` of the Sobolev space together with
/// `M = floor(s - d/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevOrder {
    d: usize,
    s: f64,
    m: usize,
    v: f64,
}

impl SobolevOrder {
    pub fn new(d: usize, s: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("SobolevOrder::new", "sphere dimension must be >= 1"));
        }
        let excess = s - d as f64 / 2.0;
        if !(excess > 0.0) || !s.is_finite() {
            return Err(Error::domain(
                "SobolevOrder::new",
                format!("need s > d/2 = {}, got s = {s}", d as f64 / 2.0),
            ));
        }
        if (excess - excess.round()).abs() < BOUNDARY_GAP {
            return Err(Error::domain(
                "SobolevOrder::new",
                format!("s - d/2 = {excess} is an integer; the energy formula is undefined there"),
            ));
        }
        let m = excess.floor() as usize;
        if m > MAX_ORDER {
            return Err(Error::domain(
                "SobolevOrder::new",
                format!("s = {s} gives M = {m}; only M <= {MAX_ORDER} (s < d/2 + 3) is supported"),
            ));
        }
        let v = continuous_energy(d, RieszExponent::new(d as f64 - 2.0 * s)?)?;
        Ok(Self { d, s, m, v })
    }

    /// The order at which the error equals a multiple of the cap `L2` discrepancy.
    pub fn stolarsky(d: usize) -> Result<Self> {
        Self::new(d, (d as f64 + 1.0) / 2.0)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Riesz exponent `d - 2s` (negative).
    pub fn energy_exponent(&self) -> RieszExponent {
        RieszExponent::new(self.d as f64 - 2.0 * self.s).expect("finite by construction")
    }

    /// `V_{d-2s}(S^d)`.
    pub fn continuous_energy(&self) -> f64 {
        self.v
    }

    /// `(-1)^{M+1}`.
    pub(crate) fn sign(&self) -> f64 {
        if self.m.is_multiple_of(2) {
            -1.0
        } else {
            1.0
        }
    }
}

/// `alpha_l = V_{d-2s} (-1)^{M+1} (d/2 - s)_l / (d/2 + s)_l` for `l = 1..=lmax`.
///
/// On `S^2` the Pochhammer arguments are `1 - s` and `1 + s`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaCoefficients {
    order: SobolevOrder,
    values: Vec<f64>,
}

impl AlphaCoefficients {
    pub fn order(&self) -> SobolevOrder {
        self.order
    }

    pub fn lmax(&self) -> usize {
        self.values.len()
    }

    /// `alpha_l` for `1 <= l <= lmax`.
    pub fn get(&self, l: usize) -> Option<f64> {
        l.checked_sub(1).and_then(|k| self.values.get(k).copied())
    }

    /// `alpha_1, ..., alpha_lmax`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub fn alpha_coefficients(order: SobolevOrder, lmax: usize) -> Result<AlphaCoefficients> {
    if lmax == 0 {
        return Err(Error::domain("alpha_coefficients", "lmax must be >= 1"));
    }
    let half_d = order.d as f64 / 2.0;
    let (a, b) = (half_d - order.s, half_d + order.s);
    let mut values = Vec::with_capacity(lmax);
    // running product (a)_l / (b)_l
    let mut ratio = 1.0;
    for l in 0..lmax {
        ratio *= (a + l as f64) / (b + l as f64);
        values.push(order.v * order.sign() * ratio);
    }
    Ok(AlphaCoefficients { order, values })
}
