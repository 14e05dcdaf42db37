use std::f64::consts::PI;

use super::{wce_squared, SobolevOrder};
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::specfun::{gamma_ratio, quadrature::gauss_legendre};
use crate::sphere::{seeded_rng, uniform_point, Configuration, SpherePoint};

/// `d sqrt(pi) Gamma(d/2) / Gamma((d+1)/2)`; equals 4 on `S^2`.
pub fn stolarsky_constant(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::domain("stolarsky_constant", "sphere dimension must be >= 1"));
    }
    Ok(d as f64 * PI.sqrt() * gamma_ratio(d as f64 / 2.0, 0.5)?)
}

/// `L2` cap discrepancy from the worst-case error at `s = (d+1)/2`.
pub fn discrepancy_l2_stolarsky(cfg: &Configuration) -> Result<f64> {
    let w = wce_squared(cfg, SobolevOrder::stolarsky(cfg.d())?)?;
    Ok((w / stolarsky_constant(cfg.d())?).sqrt())
}

/// Quadrature grid for [`discrepancy_l2_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct L2Grid {
    /// Number of cap centers (a Fibonacci spiral).
    pub centers: usize,
    /// Gauss-Legendre nodes per radial segment.
    pub radial_nodes: usize,
}

impl Default for L2Grid {
    fn default() -> Self {
        Self {
            centers: 2048,
            radial_nodes: 4,
        }
    }
}

/// Fibonacci spiral of `n` nearly equal-area points on `S^2`.
pub fn fibonacci_centers(n: usize) -> Vec<SpherePoint> {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let phi = (golden_angle * i as f64).rem_euclid(2.0 * PI);
            SpherePoint::from_z_phi(z, phi)
        })
        .collect()
}

/// Heights `u_i = <x, x_i>` sorted in decreasing order.
fn sorted_heights(x: &SpherePoint, cfg: &Configuration) -> Vec<f64> {
    let mut a: Vec<f64> = cfg.points().iter().map(|p| x.dot(p).clamp(-1.0, 1.0)).collect();
    a.sort_unstable_by(|p, q| q.total_cmp(p));
    a
}

/// `L2` cap discrepancy of a configuration on `S^2` by direct quadrature,
///
/// `D_2^2 = int_0^pi int_{S^2} (N^{-1} #{i : x_i in D(x, r)} - sigma(D(x, r)))^2 dsigma(x) sin(r) dr`.
///
/// With `u = cos r` the radial integrand is a piecewise quadratic whose
/// breakpoints are the heights `<x, x_i>`; each piece is integrated by
/// Gauss-Legendre. Centers form a Fibonacci spiral with equal weights, which
/// is where the approximation error comes from.
pub fn discrepancy_l2_quadrature(cfg: &Configuration, grid: L2Grid) -> Result<f64> {
    if cfg.d() != 2 {
        return Err(Error::domain("discrepancy_l2_quadrature", "only S^2 is supported"));
    }
    if cfg.is_empty() {
        return Err(Error::domain("discrepancy_l2_quadrature", "empty configuration"));
    }
    if grid.centers < 64 || grid.radial_nodes < 2 {
        return Err(Error::domain(
            "discrepancy_l2_quadrature",
            format!("need at least 64 centers and 2 radial nodes, got {grid:?}"),
        ));
    }
    let rule = gauss_legendre(grid.radial_nodes)?;
    let n = cfg.len() as f64;
    let mut outer = CompensatedSum::new();
    for x in fibonacci_centers(grid.centers) {
        let a = sorted_heights(&x, cfg);
        let mut inner = 0.0;
        let mut upper = 1.0;
        // on (a[k], upper) exactly k points lie in the cap
        for (k, &lower) in a.iter().chain(std::iter::once(&-1.0)).enumerate() {
            if upper > lower {
                let frac = k as f64 / n;
                inner += rule.integrate_on(lower, upper, |u| {
                    let g = frac - 0.5 * (1.0 - u);
                    g * g
                });
            }
            upper = lower;
        }
        outer.add(inner);
    }
    Ok((outer.value() / grid.centers as f64).max(0.0).sqrt())
}

/// Sampled `L-infinity` cap discrepancy.
///
/// `value` never exceeds the true supremum; it is a lower bound only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinfLowerBound {
    pub value: f64,
    /// Number of cap centers examined.
    pub centers: usize,
}

/// Lower bound on `sup_{x, r} |N^{-1} #{x_i in D(x, r)} - sigma(D(x, r))|` on `S^2`.
///
/// Centers are `n_caps` uniform random points plus the data points. For
/// each center the supremum over all radii is exact: the deviation is
/// linear in `cos r` between the heights of the data points, so it is
/// checked on both sides of every height.
pub fn discrepancy_linf_sampled(cfg: &Configuration, n_caps: usize, seed: u64) -> Result<LinfLowerBound> {
    if cfg.d() != 2 {
        return Err(Error::domain("discrepancy_linf_sampled", "only S^2 is supported"));
    }
    if cfg.is_empty() {
        return Err(Error::domain("discrepancy_linf_sampled", "empty configuration"));
    }
    let mut rng = seeded_rng(seed);
    let centers: Vec<SpherePoint> = (0..n_caps)
        .map(|_| uniform_point(2, &mut rng))
        .chain(cfg.points().iter().cloned())
        .collect();
    let n = cfg.len() as f64;
    let mut best = 0.0f64;
    for x in &centers {
        let a = sorted_heights(x, cfg);
        let mut k = 0;
        while k < a.len() {
            let mut end = k;
            while end + 1 < a.len() && a[end + 1] == a[k] {
                end += 1;
            }
            let sigma = 0.5 * (1.0 - a[k]);
            let inside = (end + 1) as f64 / n - sigma;
            let outside = k as f64 / n - sigma;
            best = best.max(inside.abs()).max(outside.abs());
            k = end + 1;
        }
    }
    Ok(LinfLowerBound {
        value: best,
        centers: centers.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> Configuration {
        let pts = vec![
            SpherePoint::new(vec![0.0, 0.0, 1.0]).unwrap(),
            SpherePoint::new(vec![0.0, 0.0, -1.0]).unwrap(),
        ];
        Configuration::new(2, pts, "pair", None).unwrap()
    }

    #[test]
    fn constant_values() {
        assert!((stolarsky_constant(2).unwrap() - 4.0).abs() < 1e-14);
        // d = 1: sqrt(pi) Gamma(1/2) / Gamma(1) = pi
        assert!((stolarsky_constant(1).unwrap() - PI).abs() < 1e-14);
    }

    #[test]
    fn antipodal_pair() {
        let c = pair();
        let s = discrepancy_l2_stolarsky(&c).unwrap();
        assert!((s * s - 1.0 / 12.0).abs() < 1e-14);
        let grid = L2Grid {
            centers: 2048,
            radial_nodes: 4,
        };
        let q = discrepancy_l2_quadrature(&c, grid).unwrap();
        assert!((q - 12f64.sqrt().recip()).abs() < 1e-3 / 12f64.sqrt());
    }

    #[test]
    fn fibonacci_centers_are_balanced() {
        let pts = fibonacci_centers(1000);
        let mean_z: f64 = pts.iter().map(|p| p.coords()[2]).sum::<f64>() / 1000.0;
        assert!(mean_z.abs() < 1e-12);
    }

    #[test]
    fn single_point_sup() {
        let c = Configuration::new(2, vec![SpherePoint::north_pole(2)], "one", None).unwrap();
        let b = discrepancy_linf_sampled(&c, 50, 3).unwrap();
        assert!(b.value >= 0.5);
        assert!(b.value <= 1.0);
        assert_eq!(b.centers, 51);
    }

    #[test]
    fn rejects_other_dimensions() {
        let c = Configuration::new(3, vec![SpherePoint::north_pole(3)], "one", None).unwrap();
        assert!(discrepancy_l2_quadrature(&c, L2Grid::default()).is_err());
        assert!(discrepancy_linf_sampled(&c, 10, 0).is_err());
        assert!(discrepancy_l2_stolarsky(&c).is_ok());
    }
}
