use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{jacobi_unchecked, DimensionTable, JacobiParams};
use crate::sphere::SpherePoint;

/// Hermitian projection kernel of finite rank with respect to the
/// normalized surface measure.
pub trait ProjectionKernel: Send + Sync {
    /// Sphere dimension.
    fn d(&self) -> usize;

    /// Rank, which is also the number of points of every sample.
    fn rank(&self) -> usize;

    fn evaluate(&self, x: &SpherePoint, y: &SpherePoint) -> Complex64;

    /// `K(x, x)`.
    fn diagonal(&self, x: &SpherePoint) -> f64 {
        self.evaluate(x, x).re
    }

    /// `sup_x K(x, x)`.
    fn diagonal_bound(&self) -> f64;

    /// Provenance tag given to sampled configurations.
    fn label(&self) -> &'static str;
}

/// Reproducing kernel of polynomials of degree `<= L` on `S^d`,
/// `K_L(x, y) = d(L) / binom(L + d/2, L) * P_L^{(1+lambda, lambda)}(<x, y>)`
/// with `lambda = (d - 2)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicKernel {
    d: usize,
    degree: usize,
    rank: usize,
    params: JacobiParams,
    scale: f64,
}

impl HarmonicKernel {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Real kernel value as a function of the inner product.
    pub fn value_at(&self, t: f64) -> f64 {
        self.scale * jacobi_unchecked(self.params.alpha(), self.params.beta(), self.degree, t.clamp(-1.0, 1.0))
    }
}

pub fn harmonic_kernel(d: usize, degree: usize) -> Result<HarmonicKernel> {
    let dims = DimensionTable::new(d)?;
    if degree > crate::specfun::MAX_DEGREE {
        return Err(Error::domain("harmonic_kernel", format!("degree {degree} is too large")));
    }
    let rank = dims.polynomials(degree) as usize;
    let params = JacobiParams::harmonic(d)?;
    Ok(HarmonicKernel {
        d,
        degree,
        rank,
        params,
        scale: rank as f64 / params.value_at_one(degree),
    })
}

impl ProjectionKernel for HarmonicKernel {
    fn d(&self) -> usize {
        self.d
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn evaluate(&self, x: &SpherePoint, y: &SpherePoint) -> Complex64 {
        Complex64::new(self.value_at(x.dot(y)), 0.0)
    }

    fn diagonal(&self, _x: &SpherePoint) -> f64 {
        self.rank as f64
    }

    fn diagonal_bound(&self) -> f64 {
        self.rank as f64
    }

    fn label(&self) -> &'static str {
        "harmonic"
    }
}

/// Largest supported spherical-ensemble size.
pub const MAX_SPHERICAL_N: usize = 2048;

/// Spherical ensemble with `n` points, pulled back to `S^2` through the
/// stereographic map.
///
/// In the plane the kernel is `(1 + z conj(w))^{n-1}` against
/// `n / (pi (1 + |z|^2)^{n+1}) dm(z)`. Against the normalized surface
/// measure it becomes `n <u(x), u(y)>^{n-1}` with the spinor
/// `u(x) = (sqrt((1 - x_3)/2), sqrt((1 + x_3)/2) e^{i phi})`, which equals
/// `(1, z) / sqrt(1 + |z|^2)` at `x = Phi(z)`. The diagonal is `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalKernel {
    n: usize,
}

impl SphericalKernel {
    pub fn n(&self) -> usize {
        self.n
    }
}

pub fn spherical_kernel(n: usize) -> Result<SphericalKernel> {
    if n == 0 || n > MAX_SPHERICAL_N {
        return Err(Error::domain(
            "spherical_kernel",
            format!("need 1 <= n <= {MAX_SPHERICAL_N}, got {n}"),
        ));
    }
    Ok(SphericalKernel { n })
}

pub(crate) fn spinor(x: &SpherePoint) -> (f64, Complex64) {
    let c = x.coords();
    let u0 = (0.5 * (1.0 - c[2])).max(0.0).sqrt();
    let rho = c[0].hypot(c[1]);
    let mag = (0.5 * (1.0 + c[2])).max(0.0).sqrt();
    let u1 = if rho > 0.0 {
        Complex64::new(c[0], c[1]) * (mag / rho)
    } else {
        Complex64::new(mag, 0.0)
    };
    (u0, u1)
}

impl ProjectionKernel for SphericalKernel {
    fn d(&self) -> usize {
        2
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn evaluate(&self, x: &SpherePoint, y: &SpherePoint) -> Complex64 {
        let (a0, a1) = spinor(x);
        let (b0, b1) = spinor(y);
        let inner = a0 * b0 + a1 * b1.conj();
        inner.powu(self.n as u32 - 1) * self.n as f64
    }

    fn diagonal(&self, _x: &SpherePoint) -> f64 {
        self.n as f64
    }

    fn diagonal_bound(&self) -> f64 {
        self.n as f64
    }

    fn label(&self) -> &'static str {
        "spherical"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::log_gamma;
    use crate::sphere::{inverse_stereographic, sample_uniform, stereographic};

    #[test]
    fn harmonic_diagonal() {
        let k = harmonic_kernel(2, 1).unwrap();
        assert_eq!(k.rank(), 4);
        let x = SpherePoint::north_pole(2);
        assert!((k.evaluate(&x, &x).re - 4.0).abs() < 1e-13);
        for l in [0usize, 3, 8, 20] {
            let k = harmonic_kernel(2, l).unwrap();
            assert!((k.value_at(1.0) - ((l + 1) * (l + 1)) as f64).abs() < 1e-10 * k.value_at(1.0));
        }
    }

    #[test]
    fn harmonic_low_degree_closed_forms() {
        // d = 2, L = 1: K = 1 + 3t;  d = 2, L = 2: K = 1 + 3t + 5 P_2(t)
        let k1 = harmonic_kernel(2, 1).unwrap();
        let k2 = harmonic_kernel(2, 2).unwrap();
        for &t in &[-1.0, -0.3, 0.0, 0.4, 1.0] {
            assert!((k1.value_at(t) - (1.0 + 3.0 * t)).abs() < 1e-13);
            let p2 = 1.5 * t * t - 0.5;
            assert!((k2.value_at(t) - (1.0 + 3.0 * t + 5.0 * p2)).abs() < 1e-13);
        }
    }

    #[test]
    fn harmonic_symmetry() {
        let k = harmonic_kernel(3, 4).unwrap();
        let c = sample_uniform(3, 2, 0).unwrap();
        let (x, y) = (&c.points()[0], &c.points()[1]);
        assert_eq!(k.evaluate(x, y), k.evaluate(y, x));
    }

    /// `sum_k psi_k(z) conj(psi_k(w))` with log-space binomial weights, times
    /// the conformal factors that turn the planar measure into the normalized
    /// sphere measure.
    fn psi_sum(n: usize, z: Complex64, w: Complex64) -> Complex64 {
        let ln_fact = |m: usize| log_gamma(m as f64 + 1.0).unwrap();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let ln_binom = ln_fact(n - 1) - ln_fact(k) - ln_fact(n - 1 - k);
            let zk = z.powu(k as u32);
            let wk = w.conj().powu(k as u32);
            acc += zk * wk * ln_binom.exp();
        }
        let scale = ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).powf(-0.5 * (n as f64 - 1.0));
        acc * scale * n as f64
    }

    #[test]
    fn spherical_matches_basis_expansion() {
        let c = sample_uniform(2, 20, 5).unwrap();
        for n in [1usize, 2, 7, 16, 40] {
            let k = spherical_kernel(n).unwrap();
            for pair in c.points().chunks(2) {
                let (x, y) = (&pair[0], &pair[1]);
                let z = stereographic(x).unwrap();
                let w = stereographic(y).unwrap();
                let a = k.evaluate(x, y);
                let b = psi_sum(n, z, w);
                assert!((a - b).norm() <= 1e-10 * n as f64, "n = {n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn spherical_diagonal_is_constant() {
        let k = spherical_kernel(16).unwrap();
        let c = sample_uniform(2, 100, 6).unwrap();
        for x in c.points() {
            let v = k.evaluate(x, x);
            assert!((v.re - 16.0).abs() < 1e-10 * 16.0 && v.im.abs() < 1e-10);
        }
        // the poles are handled by the spinor branches
        let south = inverse_stereographic(Complex64::new(0.0, 0.0));
        assert!((k.evaluate(&south, &south).re - 16.0).abs() < 1e-12);
        let north = SpherePoint::north_pole(2);
        assert!((k.evaluate(&north, &north).re - 16.0).abs() < 1e-12);
    }

    #[test]
    fn spherical_modulus_identity() {
        let k = spherical_kernel(9).unwrap();
        let c = sample_uniform(2, 2, 7).unwrap();
        let (x, y) = (&c.points()[0], &c.points()[1]);
        let expected = 81.0 * (0.5 * (1.0 + x.dot(y))).powi(8);
        assert!((k.evaluate(x, y).norm_sqr() - expected).abs() < 1e-12 * 81.0);
        assert!((k.evaluate(x, y) - k.evaluate(y, x).conj()).norm() < 1e-13);
    }

    #[test]
    fn spherical_size_guard() {
        assert!(spherical_kernel(0).is_err());
        assert!(spherical_kernel(MAX_SPHERICAL_N + 1).is_err());
        assert!(spherical_kernel(MAX_SPHERICAL_N).is_ok());
    }
}
