//! Worst-case integration error in `H^s(S^d)`.
//!
//! [`wce_squared`] evaluates the error through the Riesz energy with exponent
//! `d - 2s` plus a low-degree polynomial correction when `s > d/2 + 1`.
//! [`wce_squared_spectral`] sums the same quantity degree by degree from the
//! Gegenbauer expansion and returns an explicit truncation bound; it shares
//! no code path with the energy formula beyond the coefficient table and is
//! meant as a cross-check. Cap discrepancies (`L2` through Stolarsky's
//! identity or direct quadrature, and a sampled `L-infinity` lower bound)
//! live in the same module.

mod discrepancy;
mod formula;
mod order;
mod spectral;

pub use discrepancy::{
    discrepancy_l2_quadrature, discrepancy_l2_stolarsky, discrepancy_linf_sampled, fibonacci_centers,
    stolarsky_constant, L2Grid, LinfLowerBound,
};
pub(crate) use formula::q_coefficients;
pub use formula::{wce_squared, wce_squared_from_products, CLAMP_RELATIVE};
pub use order::{alpha_coefficients, AlphaCoefficients, SobolevOrder, BOUNDARY_GAP, MAX_ORDER};
pub use spectral::{wce_squared_spectral, SpectralWce, DEFAULT_LMAX};
