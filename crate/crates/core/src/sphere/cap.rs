use std::f64::consts::PI;

use super::SpherePoint;
use crate::error::{Error, Result};
use crate::specfun::{gamma_ratio, quadrature::gauss_legendre};

/// Closed geodesic ball `{y : angle(x, y) <= r}` with `0 < r < pi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cap {
    center: SpherePoint,
    geodesic_radius: f64,
}

impl Cap {
    pub fn new(center: SpherePoint, geodesic_radius: f64) -> Result<Self> {
        if !(geodesic_radius > 0.0 && geodesic_radius < PI) {
            return Err(Error::domain(
                "Cap::new",
                format!("radius must lie in (0, pi), got {geodesic_radius}"),
            ));
        }
        Ok(Self {
            center,
            geodesic_radius,
        })
    }

    pub fn center(&self) -> &SpherePoint {
        &self.center
    }

    pub fn geodesic_radius(&self) -> f64 {
        self.geodesic_radius
    }

    pub fn contains(&self, p: &SpherePoint) -> bool {
        self.center.dot(p) >= self.geodesic_radius.cos()
    }
}

/// Normalized surface measure `sigma_d` of a cap,
/// `int_0^r sin^{d-1} / int_0^pi sin^{d-1}`.
pub fn cap_measure(cap: &Cap, d: usize) -> Result<f64> {
    let r = cap.geodesic_radius;
    match d {
        0 => Err(Error::domain("cap_measure", "sphere dimension must be >= 1")),
        1 => Ok(r / PI),
        2 => Ok(0.5 * (1.0 - r.cos())),
        _ => {
            // int_0^pi sin^{d-1} = sqrt(pi) Gamma(d/2) / Gamma((d+1)/2)
            let total = PI.sqrt() * gamma_ratio(d as f64 / 2.0, 0.5)?;
            let rule = gauss_legendre(64)?;
            let (a, b, flip) = if r <= 0.5 * PI { (0.0, r, false) } else { (r, PI, true) };
            let part = rule.integrate_on(a, b, |t| t.sin().powi(d as i32 - 1)) / total;
            Ok(if flip { 1.0 - part } else { part })
        }
    }
}
