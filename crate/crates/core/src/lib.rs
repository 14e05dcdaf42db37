//! Random point configurations on spheres and their quadrature quality.
//!
//! The crate samples five families of `N`-point sets on `S^d` (uniform,
//! jittered, harmonic ensemble, spherical ensemble and zeros of elliptic
//! polynomials), evaluates Riesz and logarithmic energies, and turns those
//! energies into worst-case integration errors in the Sobolev spaces
//! `H^s(S^d)`. Closed-form expectations for the random families live in
//! [`closedforms`]; [`harness`] runs seeded Monte Carlo scans over `(N, s)`
//! grids and fits the empirical decay rate of the mean squared error.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`specfun`] | gamma, Pochhammer, Jacobi/Gegenbauer, Bessel J, zeta, Gauss rules |
//! | [`sphere`] | points, caps, stereographic map, equal-area partition, samplers, CSV |
//! | [`detproc`] | projection kernels and the sequential DPP sampler |
//! | [`polyzeros`] | elliptic random polynomials and their zeros |
//! | [`energy`] | discrete Riesz/log energies and `V_s(S^d)` |
//! | [`wce`] | worst-case errors, spectral cross-check, cap discrepancies |
//! | [`closedforms`] | expected energies and errors |
//! | [`harness`] | ensembles, seed splitting, scans, strength fitting |

// NaN-rejecting guards are written as `!(x > 0.0)` throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closedforms;
pub mod detproc;
pub mod energy;
pub mod error;
pub mod harness;
mod numeric;
pub mod polyzeros;
pub mod specfun;
pub mod sphere;
pub mod wce;

pub use error::{Error, Result};
pub use sphere::{Configuration, SpherePoint};
