use super::{alpha_coefficients, SobolevOrder};
use crate::energy::InnerProducts;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::specfun::fill_gegenbauer;
use crate::specfun::DimensionTable;
use crate::sphere::Configuration;

pub const DEFAULT_LMAX: usize = 400;

/// Truncated degree-by-degree evaluation of the squared worst-case error.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralWce {
    /// `sum_{l=1}^{lmax} terms[l-1]`.
    pub value: f64,
    /// Upper bound on the omitted degrees `l > lmax`.
    pub tail_bound: f64,
    /// `|alpha_l| h_l N^{-2} sum_{i,j} P_l(x_i . x_j)`, each a nonnegative quadratic form.
    pub terms: Vec<f64>,
}

/// Spectral sum with coefficients `|alpha_l|`.
///
/// Since `|P_l| <= 1`, each omitted degree contributes at most `|alpha_l| h_l`.
/// Those are summed explicitly up to `K = max(64 lmax, 10^5)`; beyond `K`
/// the terms decay like `l^{-(2s-d+1)}` and the remainder is bounded by
/// `1.05 t_K K / (2s - d)`.
pub fn wce_squared_spectral(cfg: &Configuration, order: SobolevOrder, lmax: usize) -> Result<SpectralWce> {
    if cfg.d() != order.d() {
        return Err(Error::Input(format!(
            "configuration lives on S^{} but the Sobolev order is for S^{}",
            cfg.d(),
            order.d()
        )));
    }
    if cfg.is_empty() {
        return Err(Error::domain("wce_squared_spectral", "empty configuration"));
    }
    let alpha = alpha_coefficients(order, lmax)?;
    let dims = DimensionTable::new(order.d())?;
    let products = InnerProducts::new(cfg);
    let n = cfg.len() as f64;

    // S_l = N + 2 sum_{i<j} P_l(t_ij); the diagonal has P_l(1) = 1
    let mut sums = vec![CompensatedSum::new(); lmax + 1];
    let mut p = vec![0.0; lmax + 1];
    for &t in products.upper() {
        fill_gegenbauer(order.d(), t, &mut p);
        for (acc, &x) in sums.iter_mut().zip(&p) {
            acc.add(x);
        }
    }
    let terms: Vec<f64> = (1..=lmax)
        .map(|l| {
            let s_l = n + 2.0 * sums[l].value();
            alpha.get(l).unwrap().abs() * dims.harmonics_f64(l) * s_l / (n * n)
        })
        .collect();
    let value = terms.iter().copied().collect::<CompensatedSum>().value();

    Ok(SpectralWce {
        value,
        tail_bound: tail_bound(order, lmax, *alpha.values().last().unwrap()),
        terms,
    })
}

fn tail_bound(order: SobolevOrder, lmax: usize, alpha_lmax: f64) -> f64 {
    let d = order.d() as f64;
    let half_d = d / 2.0;
    let (a, b) = (half_d - order.s(), half_d + order.s());
    let k = (64 * lmax).max(100_000);
    let mut alpha = alpha_lmax.abs();
    let mut h = DimensionTable::new(order.d()).unwrap().harmonics_f64(lmax);
    let mut acc = CompensatedSum::new();
    let mut last = 0.0;
    for l in lmax..k {
        let lf = l as f64;
        // step alpha_l -> alpha_{l+1} and h_l -> h_{l+1}
        alpha *= ((a + lf) / (b + lf)).abs();
        h = if order.d() == 1 {
            2.0
        } else {
            h * (2.0 * lf + d + 1.0) * (lf + d - 1.0) / ((2.0 * lf + d - 1.0) * (lf + 1.0))
        };
        last = alpha * h;
        acc.add(last);
    }
    acc.value() + 1.05 * last * k as f64 / (2.0 * order.s() - d)
}
