//! Reference values for the random point families: expected Riesz and
//! logarithmic energies, expected squared worst-case errors, and the Bessel
//! integral limit of the harmonic-ensemble Jacobi integrals.
//!
//! Energies are handled through their excess over the continuous value,
//! `X_s = E[E_s] - V_s N^2`, which every family can evaluate without
//! cancelling the `N^2` terms. The expected squared error for any order `M`
//! is then a fixed linear combination of `X_{d-2s}`, `X_{-2}` and `X_{-4}`
//! (see [`expected_wce2`]).

mod energies;
mod harmonic;
mod limit;

use std::fmt;

use serde::Serialize;

pub use energies::{
    expected_energy, expected_energy_elliptic, expected_energy_spherical, expected_log_energy_elliptic,
    expected_wce2, expected_wce2_spherical, EnergyModel,
};
pub use harmonic::{expected_wce2_harmonic_quadrature, proposition7_lhs};
pub use limit::proposition7_limit;

/// Whether a reference value is exact or the leading terms of an expansion.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExpectationKind {
    Exact,
    /// Leading terms only; `error_term` names the order of what was dropped.
    Asymptotic { error_term: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedValue {
    pub value: f64,
    #[serde(flatten)]
    pub kind: ExpectationKind,
}

impl ExpectedValue {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            kind: ExpectationKind::Exact,
        }
    }

    pub fn asymptotic(value: f64, error_term: impl Into<String>) -> Self {
        Self {
            value,
            kind: ExpectationKind::Asymptotic {
                error_term: error_term.into(),
            },
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == ExpectationKind::Exact
    }

    pub fn error_term(&self) -> Option<&str> {
        match &self.kind {
            ExpectationKind::Exact => None,
            ExpectationKind::Asymptotic { error_term } => Some(error_term),
        }
    }
}

impl fmt::Display for ExpectedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExpectationKind::Exact => write!(f, "{:.12e} (exact)", self.value),
            ExpectationKind::Asymptotic { error_term } => write!(f, "{:.12e} + {error_term}", self.value),
        }
    }
}

/// `o(N^p)` with a compact exponent.
pub(crate) fn little_o(p: f64) -> String {
    let rounded = (p * 1e6).round() / 1e6;
    format!("o(N^{rounded})")
}
