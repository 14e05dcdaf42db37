use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::find_roots;
use crate::error::{Error, Result};
use crate::specfun::log_gamma;
use crate::sphere::{inverse_stereographic, seeded_rng, Configuration};

pub const MAX_ELLIPTIC_DEGREE: usize = 1024;

/// Polynomial `sum_n c_n z^n` of degree `N` with nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticPolynomial {
    coeffs: Vec<Complex64>,
    seed: Option<u64>,
}

impl EllipticPolynomial {
    /// Wraps explicit coefficients `c_0, ..., c_N` (lowest degree first).
    pub fn from_coefficients(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Input("a polynomial needs degree >= 1".into()));
        }
        if coeffs.last().unwrap().norm() == 0.0 || coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Input("leading coefficient must be nonzero and all coefficients finite".into()));
        }
        Ok(Self { coeffs, seed: None })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_0, ..., c_N`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Draws `c_n = a_n sqrt(binom(N, n))`, `E|a_n|^2 = 1`, with the binomial
/// taken in log space.
pub fn sample_elliptic(degree: usize, seed: u64) -> Result<EllipticPolynomial> {
    if degree == 0 || degree > MAX_ELLIPTIC_DEGREE {
        return Err(Error::domain(
            "sample_elliptic",
            format!("need 1 <= N <= {MAX_ELLIPTIC_DEGREE}, got {degree}"),
        ));
    }
    let mut rng = seeded_rng(seed);
    let ln_fact_n = log_gamma(degree as f64 + 1.0)?;
    let mut coeffs = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        let mut a = complex_gaussian(&mut rng);
        if n == degree {
            while a.norm() < 1e-12 {
                a = complex_gaussian(&mut rng);
            }
        }
        let ln_binom = ln_fact_n - log_gamma(n as f64 + 1.0)? - log_gamma((degree - n) as f64 + 1.0)?;
        coeffs.push(a * (0.5 * ln_binom).exp());
    }
    Ok(EllipticPolynomial {
        coeffs,
        seed: Some(seed),
    })
}

/// Zeros of a fresh elliptic polynomial of degree `N`, mapped to `S^2`.
pub fn zeros_on_sphere(degree: usize, seed: u64) -> Result<Configuration> {
    let p = sample_elliptic(degree, seed)?;
    let roots = find_roots(&p)?;
    let points = roots.roots.iter().map(|&z| inverse_stereographic(z)).collect();
    Configuration::new(2, points, "elliptic", Some(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one() {
        let p = sample_elliptic(1, 3).unwrap();
        assert_eq!(p.coeffs().len(), 2);
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn deterministic() {
        assert_eq!(sample_elliptic(20, 5).unwrap(), sample_elliptic(20, 5).unwrap());
        assert_ne!(sample_elliptic(20, 5).unwrap(), sample_elliptic(20, 6).unwrap());
    }

    #[test]
    fn largest_degree_is_finite() {
        let p = sample_elliptic(MAX_ELLIPTIC_DEGREE, 1).unwrap();
        assert!(p.coeffs().iter().all(|c| c.re.is_finite() && c.im.is_finite()));
        assert!(sample_elliptic(MAX_ELLIPTIC_DEGREE + 1, 1).is_err());
        assert!(sample_elliptic(0, 1).is_err());
    }

    #[test]
    fn synthetic_input_validation() {
        assert!(EllipticPolynomial::from_coefficients(vec![Complex64::new(1.0, 0.0)]).is_err());
        assert!(EllipticPolynomial::from_coefficients(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).is_err());
        let p = EllipticPolynomial::from_coefficients(vec![
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(p.eval(Complex64::new(2.0, 0.0)), Complex64::new(3.0, 0.0));
    }
}
