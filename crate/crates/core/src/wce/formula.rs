use super::{alpha_coefficients, SobolevOrder};
use crate::energy::InnerProducts;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::specfun::fill_gegenbauer;
use crate::specfun::DimensionTable;
use crate::sphere::Configuration;

/// Relative size of a negative result that is still treated as rounding.
pub const CLAMP_RELATIVE: f64 = 1e-10;

/// Coefficients of `Q_M` by degree `0..=M` (degree 0 is always zero).
pub(crate) fn q_coefficients(order: SobolevOrder) -> Result<Vec<f64>> {
    let m = order.m();
    if m == 0 {
        return Ok(vec![0.0]);
    }
    let alpha = alpha_coefficients(order, m)?;
    let dims = DimensionTable::new(order.d())?;
    Ok((0..=m)
        .map(|l| {
            if l == 0 {
                return 0.0;
            }
            let flip = if (m + 1 - l).is_multiple_of(2) { 1.0 } else { -1.0 };
            (flip - 1.0) * alpha.get(l).unwrap() * dims.harmonics_f64(l)
        })
        .collect())
}

/// Squared worst-case error of the equal-weight rule on `cfg` in `H^s(S^d)`.
///
/// For `M = 0` this is `-(E_{d-2s} - V_{d-2s} N^2) / N^2`. For `M >= 1` the
/// degrees `l <= M`, whose coefficients have the wrong sign, are corrected by
/// `Q_M(t) = sum_{l<=M} ((-1)^{M+1-l} - 1) alpha_l h_l P_l(t)` summed over
/// all pairs `(i, j)` including `i = j`.
///
/// Tiny negative values from cancellation are clamped to zero; anything
/// below `-CLAMP_RELATIVE * (1 + scale)` is reported as an error.
pub fn wce_squared(cfg: &Configuration, order: SobolevOrder) -> Result<f64> {
    if cfg.d() != order.d() {
        return Err(Error::Input(format!(
            "configuration lives on S^{} but the Sobolev order is for S^{}",
            cfg.d(),
            order.d()
        )));
    }
    wce_squared_from_products(&InnerProducts::new(cfg), order)
}

/// [`wce_squared`] from precomputed inner products.
pub fn wce_squared_from_products(products: &InnerProducts, order: SobolevOrder) -> Result<f64> {
    let n = products.len();
    if n == 0 {
        return Err(Error::domain("wce_squared", "empty configuration"));
    }
    let n2 = (n as f64) * (n as f64);
    let energy = products.riesz_energy(order.energy_exponent())?;
    let v = order.continuous_energy();
    let energy_term = energy / n2 - v;

    let m = order.m();
    let (value, scale) = if m == 0 {
        (-energy_term, energy.abs() / n2 + v)
    } else {
        let q = q_coefficients(order)?;
        let mut p = vec![0.0; m + 1];
        let mut q_of = |t: f64| {
            fill_gegenbauer(order.d(), t, &mut p);
            q.iter().zip(&p).map(|(c, x)| c * x).sum::<f64>()
        };
        let mut pair_sum = CompensatedSum::new();
        for &t in products.upper() {
            pair_sum.add(q_of(t));
        }
        let q_total = n as f64 * q_of(1.0) + 2.0 * pair_sum.value();
        (
            q_total / n2 + order.sign() * energy_term,
            energy.abs() / n2 + v + q_total.abs() / n2,
        )
    };

    let tolerance = CLAMP_RELATIVE * (1.0 + scale);
    if value >= 0.0 {
        Ok(value)
    } else if value >= -tolerance {
        Ok(0.0)
    } else {
        Err(Error::NegativeWce { value, tolerance })
    }
}
