//! Special functions used throughout the crate.
//!
//! Everything here is implemented in-repo so that results are bit-stable
//! across platforms: log-gamma by a shifted Stirling series, Pochhammer
//! symbols as literal products, Jacobi and Gegenbauer polynomials by their
//! three-term recurrences, Bessel `J_nu` by power series / Hankel expansion,
//! and the Riemann zeta function on `(1, inf)` by Euler-Maclaurin.

mod bessel;
mod dims;
mod gamma;
mod orthopoly;
pub mod quadrature;
mod zeta;

pub use bessel::{bessel_j, BESSEL_SERIES_SWITCH};
pub use dims::DimensionTable;
pub use gamma::{binomial, gamma, gamma_ratio, log_gamma, pochhammer, pochhammer_ratio};
pub(crate) use orthopoly::{fill_gegenbauer, jacobi_unchecked};
pub use orthopoly::{
    gegenbauer_all, gegenbauer_eval, jacobi_derivative, jacobi_eval, JacobiParams, MAX_DEGREE,
};
pub use zeta::zeta;
