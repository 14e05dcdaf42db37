//! Elliptic (Kostlan) random polynomials and their zeros on `S^2`.
//!
//! `p(z) = sum_n a_n sqrt(binom(N, n)) z^n` with i.i.d. standard complex
//! Gaussian `a_n`. Its zeros, pushed to the sphere by the inverse
//! stereographic map, form a rotation-invariant point process.

mod aberth;
mod poly;

pub use aberth::{find_roots, RootSet, MAX_ITERATIONS, RESIDUAL_TOLERANCE};
pub use poly::{sample_elliptic, zeros_on_sphere, EllipticPolynomial, MAX_ELLIPTIC_DEGREE};
