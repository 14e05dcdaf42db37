use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphere_qmc::closedforms::{
    expected_energy, expected_energy_spherical, expected_wce2, expected_wce2_harmonic_quadrature,
    expected_wce2_spherical, proposition7_lhs, proposition7_limit, EnergyModel,
};
use sphere_qmc::detproc::{harmonic_kernel, hkpv_sample, spherical_kernel};
use sphere_qmc::energy::{continuous_energy, riesz_energy, RieszExponent};
use sphere_qmc::specfun::quadrature::gauss_jacobi;
use sphere_qmc::specfun::{gamma, jacobi_eval, zeta, JacobiParams};
use sphere_qmc::wce::{alpha_coefficients, wce_squared, SobolevOrder};
use sphere_qmc::{Configuration, SpherePoint};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

#[test]
fn spherical_wce_equals_energy_identity_in_expectation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n: usize = rng.random_range(2..=64);
        let s = 1.0 + 1e-3 + rng.random::<f64>() * (1.0 - 2e-3);
        let sigma = 2.0 - 2.0 * s;
        let e = expected_energy_spherical(n, sigma).unwrap().value;
        let v = continuous_energy(2, RieszExponent::new(sigma).unwrap()).unwrap();
        let nf = n as f64;
        let assembled = -(e - v * nf * nf) / (nf * nf);
        let closed = expected_wce2_spherical(n, s).unwrap().value;
        assert!(rel(closed, assembled) < 1e-12, "n={n} s={s}: {closed} vs {assembled}");
    }
}

#[test]
fn spherical_wce_rate_constant() {
    for s in [1.2, 1.5, 1.8] {
        let n = 1e4;
        let scaled = expected_wce2_spherical(10_000, s).unwrap().value * f64::powf(n, s);
        let limit = (2.0 * s).exp2() * gamma(s).unwrap() / 4.0;
        assert!(rel(scaled, limit) < 1e-3, "s={s}");
    }
}

#[test]
fn spherical_saturation_above_two() {
    // N^2 E = -12 alpha_1 N/(N+1) - (2^{2s} Gamma(s)/4) Gamma(N)/Gamma(N+s) N^2
    let gap = |s: f64, n: usize| {
        let a1 = alpha_coefficients(SobolevOrder::new(2, s).unwrap(), 1).unwrap().get(1).unwrap();
        let nf = n as f64;
        let scaled = nf * nf * expected_wce2(EnergyModel::Spherical { n }, s).unwrap().value;
        let hand = -12.0 * a1 * nf / (nf + 1.0)
            - (2.0 * s).exp2() * gamma(s).unwrap() / 4.0 * (sphere_qmc::specfun::gamma_ratio(nf, s).unwrap()) * nf * nf;
        assert!(rel(scaled, hand) < 1e-9, "s={s} n={n}: {scaled} vs {hand}");
        rel(scaled, -12.0 * a1)
    };
    for s in [2.75, 2.9] {
        assert!(gap(s, 1_000) < 0.01);
        assert!(gap(s, 10_000) < 0.01);
    }
    assert!(gap(2.5, 10_000) < 0.01);
    // the approach is monotone everywhere in (2, 3), only slower near 2
    for s in [2.1, 2.25, 2.5, 2.75] {
        assert!(gap(s, 100_000) < gap(s, 10_000) && gap(s, 10_000) < gap(s, 1_000));
    }
}

#[test]
fn elliptic_saturation_above_three() {
    let z3 = zeta(3.0).unwrap();
    let gap = |s: f64, n: usize| {
        let a2 = alpha_coefficients(SobolevOrder::new(2, s).unwrap(), 2).unwrap().get(2).unwrap();
        let nf = n as f64;
        let w = expected_wce2(EnergyModel::Elliptic { n }, s).unwrap();
        assert_eq!(w.error_term(), Some("o(N^-3)"));
        rel(nf.powi(3) * w.value, -360.0 * z3 * a2)
    };
    for s in [3.5, 3.75] {
        assert!(gap(s, 10_000) < 0.02, "s={s}: {}", gap(s, 10_000));
    }
    for s in [3.1, 3.25, 3.5] {
        assert!(gap(s, 100_000) < gap(s, 10_000));
    }
}

/// `int_0^inf J_nu(t)^2 t^{-mu} dt` (Weber-Schafheitlin, equal orders).
fn weber_schafheitlin(nu: f64, mu: f64) -> f64 {
    let g = |x: f64| gamma(x).unwrap();
    g(mu) * g(nu + (1.0 - mu) / 2.0) / (mu.exp2() * g((1.0 + mu) / 2.0).powi(2) * g(nu + (1.0 + mu) / 2.0))
}

#[test]
fn bessel_limit_against_weber_schafheitlin() {
    for d in [1usize, 2, 3, 4] {
        let df = d as f64;
        for a in [-0.5, 0.0, 0.5, 1.0, 0.75 * df].into_iter().filter(|&a| a < df) {
            let oracle = (a / 2.0 + df).exp2() * weber_schafheitlin(df / 2.0, 1.0 + a);
            let value = proposition7_limit(d, a).unwrap();
            assert!(rel(value, oracle) < 1e-7, "d={d} a={a}: {value} vs {oracle}");
        }
    }
    // d = 2, a = 1 by hand: 2^{5/2} * 4 / (3 pi)
    let hand = 2f64.powf(2.5) * 4.0 / (3.0 * std::f64::consts::PI);
    assert!(rel(proposition7_limit(2, 1.0).unwrap(), hand) < 1e-7);
}

#[test]
fn bessel_limit_blows_up_at_d() {
    let near = proposition7_limit(2, 1.99).unwrap();
    let mid = proposition7_limit(2, 1.5).unwrap();
    assert!(near > mid && near > 10.0 * mid, "{near} vs {mid}");
}

#[test]
fn jacobi_integral_approaches_bessel_limit() {
    for a in [0.5, 1.0] {
        let limit = proposition7_limit(2, a).unwrap();
        assert!(rel(proposition7_lhs(2, a, 200).unwrap(), limit) < 0.02, "a={a}");
    }
    // a = -1/2 converges like L^{-1/2}: gaps shrink by about 1/sqrt(2) per doubling
    let limit = proposition7_limit(2, -0.5).unwrap();
    let gaps: Vec<f64> = [200usize, 400, 800, 1600]
        .iter()
        .map(|&l| (proposition7_lhs(2, -0.5, l).unwrap() - limit).abs() / limit)
        .collect();
    for w in gaps.windows(2) {
        let ratio = w[1] / w[0];
        assert!((0.65..0.75).contains(&ratio), "{gaps:?}");
    }
    assert!(gaps[3] < 0.01);
}

#[test]
fn harmonic_quadrature_node_doubling() {
    // independent evaluation with plain Jacobi polynomials and two node counts
    let (degree, s) = (8usize, 1.5);
    let p = JacobiParams::new(1.0, 0.0).unwrap();
    let p1 = jacobi_eval(p, degree, 1.0).unwrap();
    let eval = |nodes: usize| {
        gauss_jacobi(nodes, s - 1.0, 0.0)
            .unwrap()
            .integrate(|t| (jacobi_eval(p, degree, t).unwrap() / p1).powi(2))
            * 0.5
            * (s - 1.0).exp2()
    };
    let (coarse, fine) = (eval(4 * degree + 64), eval(8 * degree + 128));
    assert!(rel(coarse, fine) < 1e-10);
    let value = expected_wce2_harmonic_quadrature(2, degree, s).unwrap().value;
    assert!(rel(value, fine) < 1e-12);
}

#[test]
fn harmonic_rate_constant_converges() {
    // L^{2s} E[wce^2] for d/2 < s < (d+1)/2: increments shrink geometrically
    let s = 1.25;
    let scaled: Vec<f64> = [16usize, 32, 64, 128, 256]
        .iter()
        .map(|&l| (l as f64).powf(2.0 * s) * expected_wce2_harmonic_quadrature(2, l, s).unwrap().value)
        .collect();
    let incr: Vec<f64> = scaled.windows(2).map(|w| w[1] - w[0]).collect();
    for w in incr.windows(2) {
        assert!(w[0] > 0.0 && w[1] < 0.75 * w[0], "{scaled:?}");
    }
    // at (d+1)/2 the same sequence keeps growing instead
    let s = 1.5;
    let scaled: Vec<f64> = [16usize, 32, 64, 128, 256]
        .iter()
        .map(|&l| (l as f64).powf(2.0 * s) * expected_wce2_harmonic_quadrature(2, l, s).unwrap().value)
        .collect();
    let incr: Vec<f64> = scaled.windows(2).map(|w| w[1] - w[0]).collect();
    for w in incr.windows(2) {
        assert!(w[1] > 0.8 * w[0], "{scaled:?}");
    }
}

#[test]
fn spherical_energy_monte_carlo() {
    let kernel = spherical_kernel(16).unwrap();
    let s = RieszExponent::new(1.0).unwrap();
    let samples: Vec<f64> = (0..5000)
        .map(|r| {
            let (cfg, _) = hkpv_sample(&kernel, 1000 + r).unwrap();
            riesz_energy(&cfg, s).unwrap()
        })
        .collect();
    let (m, se) = mean_and_se(&samples);
    let expected = expected_energy_spherical(16, 1.0).unwrap().value;
    assert!((m - expected).abs() < 3.0 * se, "{m} +- {se} vs {expected}");
}

#[test]
fn harmonic_energies_monte_carlo() {
    let kernel = harmonic_kernel(2, 3).unwrap();
    let model = EnergyModel::Harmonic { d: 2, degree: 3 };
    let cfgs: Vec<Configuration> = (0..3000).map(|r| hkpv_sample(&kernel, 7000 + r).unwrap().0).collect();
    for sigma in [-2.0, -1.0, 1.0] {
        let e = RieszExponent::new(sigma).unwrap();
        let samples: Vec<f64> = cfgs.iter().map(|c| riesz_energy(c, e).unwrap()).collect();
        let (m, se) = mean_and_se(&samples);
        let expected = expected_energy(model, sigma).unwrap().value;
        assert!((m - expected).abs() < 3.0 * se, "sigma={sigma}: {m} +- {se} vs {expected}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn uniform_expectation_is_single_point_error_over_n(
        d in 1usize..=4,
        frac in 0.01f64..0.99,
        band in 0usize..3,
        n in 1usize..500,
        lat in -1.0f64..1.0,
    ) {
        let s = d as f64 / 2.0 + band as f64 + frac;
        let order = SobolevOrder::new(d, s).unwrap();
        let mut coords = vec![0.0; d + 1];
        coords[0] = lat;
        coords[d] = 1.0;
        let single = Configuration::new(d, vec![SpherePoint::new(coords).unwrap()], "one", None).unwrap();
        let one = wce_squared(&single, order).unwrap();
        let w = expected_wce2(EnergyModel::Uniform { d, n }, s).unwrap();
        prop_assert!(w.is_exact());
        prop_assert!(rel(w.value, one / n as f64) < 1e-10);
    }

    #[test]
    fn spherical_expectation_positive_and_decreasing(s in 1.01f64..3.99, n in 2usize..2000) {
        prop_assume!((s - 2.0).abs() > 1e-3 && (s - 3.0).abs() > 1e-3);
        let a = expected_wce2(EnergyModel::Spherical { n }, s).unwrap().value;
        let b = expected_wce2(EnergyModel::Spherical { n: n + 1 }, s).unwrap().value;
        prop_assert!(a > 0.0 && b < a);
    }
}
