//! Projection determinantal point processes on spheres.
//!
//! Two kernels are provided: the harmonic ensemble on `S^d` (projection
//! onto polynomials of degree at most `L`) and the spherical ensemble on
//! `S^2`. Both are written with respect to the normalized surface measure,
//! so `K(x, x) = N` everywhere. Samples are drawn with the sequential
//! algorithm of Hough, Krishnapur, Peres and Virag.

mod hkpv;
mod kernel;

pub use hkpv::{conditional_density, gram_matrix, hkpv_sample, hkpv_sample_with_rng, HkpvStats, MAX_RETRIES};
pub use kernel::{harmonic_kernel, spherical_kernel, HarmonicKernel, ProjectionKernel, SphericalKernel, MAX_SPHERICAL_N};
