use super::binomial;
use crate::error::{Error, Result};

/// Dimensions of spherical-harmonic spaces on `S^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionTable {
    d: usize,
}

fn binom_u(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + j) / j;
    }
    acc as u64
}

impl DimensionTable {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("DimensionTable::new", "sphere dimension must be >= 1"));
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Homogeneous polynomials of degree `l` in `d + 1` variables.
    fn homogeneous(&self, l: i64) -> u64 {
        if l < 0 {
            0
        } else {
            binom_u(l as u64 + self.d as u64, self.d as u64)
        }
    }

    /// `h_l`: dimension of the degree-`l` spherical harmonics.
    pub fn harmonics(&self, l: usize) -> u64 {
        self.homogeneous(l as i64) - self.homogeneous(l as i64 - 2)
    }

    /// `h_l` in floating point, `(2l + d - 1)/(d - 1) * binom(l + d - 2, l)`;
    /// finite far beyond the range where the integer form overflows.
    pub fn harmonics_f64(&self, l: usize) -> f64 {
        match (self.d, l) {
            (_, 0) => 1.0,
            (1, _) => 2.0,
            (d, l) => {
                let df = d as f64;
                (2.0 * l as f64 + df - 1.0) / (df - 1.0) * binomial((l + d - 2) as f64, l)
            }
        }
    }

    /// `d(L)`: dimension of polynomials of degree at most `L` restricted to the sphere.
    pub fn polynomials(&self, degree: usize) -> u64 {
        self.homogeneous(degree as i64) + self.homogeneous(degree as i64 - 1)
    }

    /// Degree `L` with `d(L) = n`, if there is one.
    pub fn degree_for(&self, n: u64) -> Option<usize> {
        let mut l = 0;
        loop {
            let dl = self.polynomials(l);
            if dl == n {
                return Some(l);
            }
            if dl > n {
                return None;
            }
            l += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_s2_counts() {
        let t = DimensionTable::new(2).unwrap();
        for l in 0..100 {
            assert_eq!(t.harmonics(l), 2 * l as u64 + 1);
            assert_eq!(t.polynomials(l), (l as u64 + 1).pow(2));
        }
        assert_eq!(t.polynomials(8), 81);
        assert_eq!(t.degree_for(81), Some(8));
        assert_eq!(t.degree_for(80), None);
    }

    #[test]
    fn circle_and_higher() {
        let c = DimensionTable::new(1).unwrap();
        assert_eq!(c.harmonics(0), 1);
        assert_eq!(c.harmonics(5), 2);
        assert_eq!(c.polynomials(5), 11);
        let s3 = DimensionTable::new(3).unwrap();
        // h_l = (l+1)^2 on S^3
        for l in 0..30 {
            assert_eq!(s3.harmonics(l), (l as u64 + 1).pow(2));
        }
        assert!(DimensionTable::new(0).is_err());
    }

    #[test]
    fn partial_sums_and_differences() {
        for d in 1..=4 {
            let t = DimensionTable::new(d).unwrap();
            assert_eq!(t.harmonics(0), 1);
            let mut acc = 0;
            for l in 0..=50 {
                acc += t.harmonics(l);
                let hf = t.harmonics_f64(l);
                assert!((hf - t.harmonics(l) as f64).abs() <= 1e-13 * hf);
                assert_eq!(t.polynomials(l), acc);
                if l > 0 {
                    assert_eq!(t.polynomials(l) - t.polynomials(l - 1), t.harmonics(l));
                }
            }
        }
    }
}
