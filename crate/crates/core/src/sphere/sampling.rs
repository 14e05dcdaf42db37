use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{build_equal_area_partition, Configuration, SpherePoint};
use crate::error::{Error, Result};

/// Random stream used by every sampler in the crate.
pub type SphereRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SphereRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One point from `sigma_d`: `d + 1` standard normals, normalized.
pub fn uniform_point<R: Rng + ?Sized>(d: usize, rng: &mut R) -> SpherePoint {
    loop {
        let v: Vec<f64> = (0..=d).map(|_| rng.sample(StandardNormal)).collect();
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-300 {
            let inv = n2.sqrt().recip();
            return SpherePoint::from_unit(v.into_iter().map(|x| x * inv).collect());
        }
    }
}

/// `n` i.i.d. points from the normalized surface measure on `S^d`.
pub fn sample_uniform(d: usize, n: usize, seed: u64) -> Result<Configuration> {
    if d == 0 || n == 0 {
        return Err(Error::domain(
            "sample_uniform",
            format!("need d >= 1 and n >= 1, got d = {d}, n = {n}"),
        ));
    }
    let mut rng = seeded_rng(seed);
    let points = (0..n).map(|_| uniform_point(d, &mut rng)).collect();
    Configuration::new(d, points, "uniform", Some(seed))
}

/// One uniform point in each cell of the zonal equal-area partition of `S^2`.
pub fn sample_jittered(n: usize, seed: u64) -> Result<Configuration> {
    let partition = build_equal_area_partition(n)?;
    let mut rng = seeded_rng(seed);
    let points = partition
        .cells()
        .iter()
        .map(|c| {
            let z = c.z_lo + rng.random::<f64>() * (c.z_hi - c.z_lo);
            let phi = c.phi_lo + rng.random::<f64>() * (c.phi_hi - c.phi_lo);
            SpherePoint::from_z_phi(z, phi.rem_euclid(TAU))
        })
        .collect();
    Configuration::new(2, points, "jittered", Some(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_norm(c: &Configuration) -> f64 {
        let n = c.len() as f64;
        let mut m = vec![0.0; c.d() + 1];
        for p in c.points() {
            for (a, x) in m.iter_mut().zip(p.coords()) {
                *a += x / n;
            }
        }
        m.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    #[test]
    fn uniform_is_deterministic() {
        let a = sample_uniform(2, 4, 99).unwrap();
        let b = sample_uniform(2, 4, 99).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_uniform(2, 4, 100).unwrap());
    }

    #[test]
    fn uniform_mean_is_small() {
        // E|mean|^2 = 1/N, so |mean| > 0.1 has probability far below 1%
        let mut bad = 0;
        for seed in 0..100 {
            if mean_norm(&sample_uniform(2, 1000, seed).unwrap()) > 0.1 {
                bad += 1;
            }
        }
        assert!(bad <= 1, "{bad} runs out of 100 had a large mean");
    }

    #[test]
    fn uniform_hemisphere_fraction() {
        for seed in 0..20 {
            let c = sample_uniform(2, 1000, seed).unwrap();
            let frac = c.points().iter().filter(|p| p.coords()[2] > 0.0).count() as f64 / 1000.0;
            assert!((frac - 0.5).abs() <= 0.05, "seed {seed}: {frac}");
        }
    }

    #[test]
    fn uniform_in_higher_dimension() {
        let c = sample_uniform(5, 2000, 3).unwrap();
        assert_eq!(c.d(), 5);
        for p in c.points() {
            let n2: f64 = p.coords().iter().map(|x| x * x).sum();
            assert!((n2 - 1.0).abs() < 1e-12);
        }
        assert!(mean_norm(&c) < 0.1);
    }

    #[test]
    fn jittered_has_one_point_per_cell() {
        let partition = build_equal_area_partition(100).unwrap();
        let c = sample_jittered(100, 5).unwrap();
        assert_eq!(c.len(), 100);
        for (cell, p) in partition.cells().iter().zip(c.points()) {
            assert!(cell.contains(p));
        }
        let mut owners: Vec<usize> = c.points().iter().map(|p| partition.locate(p)).collect();
        owners.sort_unstable();
        assert_eq!(owners, (0..100).collect::<Vec<_>>());
        assert_eq!(c, sample_jittered(100, 5).unwrap());
    }

    #[test]
    fn rejects_degenerate_sizes() {
        assert!(sample_uniform(2, 0, 1).is_err());
        assert!(sample_uniform(0, 5, 1).is_err());
        assert!(sample_jittered(1, 1).is_err());
    }
}
