use std::f64::consts::TAU;

use log::debug;
use num_complex::Complex64;

use super::EllipticPolynomial;
use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;

/// Largest accepted `|p(z)| / sum |c_n| |z|^n` after polishing.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

const STEP_TOLERANCE: f64 = 1e-13;
const RESTARTS: usize = 5;

/// All roots of a polynomial, with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// Largest relative residual over the roots.
    pub residual: f64,
    pub iterations: usize,
}

/// `(p(z) / p'(z), relative residual)`; for `|z| > 1` works with the
/// reversed polynomial `q(w) = w^N p(1/w)`, using `p/p' = z q / (N q - w q')`.
fn newton_ratio(c: &[Complex64], z: Complex64) -> (Complex64, f64) {
    let n = c.len() - 1;
    let zero = Complex64::new(0.0, 0.0);
    if z.norm_sqr() <= 1.0 {
        let (mut p, mut dp, mut scale) = (zero, zero, 0.0);
        let r = z.norm();
        for ck in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + ck;
            scale = scale * r + ck.norm();
        }
        (p / dp, p.norm() / scale)
    } else {
        let w = z.inv();
        let (mut q, mut dq, mut scale) = (zero, zero, 0.0);
        let r = w.norm();
        for ck in c.iter() {
            dq = dq * w + q;
            q = q * w + ck;
            scale = scale * r + ck.norm();
        }
        (z * q / (q * n as f64 - w * dq), q.norm() / scale)
    }
}

fn aberth(c: &[Complex64], radius: f64, phase: f64) -> (Vec<Complex64>, usize) {
    let n = c.len() - 1;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let r = radius * (1.0 + 0.1 * k as f64 / n as f64);
            Complex64::from_polar(r, TAU * k as f64 / n as f64 + phase)
        })
        .collect();
    // roots whose last step was below tolerance are frozen
    let mut done = vec![false; n];
    for it in 1..=MAX_ITERATIONS {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (ratio, _) = newton_ratio(c, z[k]);
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                done[k] = step.norm() < STEP_TOLERANCE * z[k].norm().max(f64::MIN_POSITIVE);
            }
        }
        if done.iter().all(|&x| x) {
            return (z, it);
        }
    }
    (z, MAX_ITERATIONS)
}

/// Aberth-Ehrlich simultaneous iteration followed by one Newton step per root.
///
/// Coefficients are scaled by `max |c_n|`; the starting circle has radius
/// `|c_0 / c_N|^{1/N}`. A run whose residual exceeds the tolerance is
/// restarted from a rotated, rescaled circle.
pub fn find_roots(p: &EllipticPolynomial) -> Result<RootSet> {
    let big = p.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let c: Vec<Complex64> = p.coeffs().iter().map(|x| x / big).collect();
    let n = p.degree();
    let mut radius = (c[0].norm() / c[n].norm()).powf(1.0 / n as f64);
    if !(radius.is_finite() && radius > 0.0) {
        radius = 1.0;
    }
    let mut last = f64::INFINITY;
    for attempt in 0..=RESTARTS {
        let phase = 0.4 + 0.7 * attempt as f64;
        let scale = 1.0 + 0.25 * attempt as f64;
        let (mut roots, iterations) = aberth(&c, radius * scale, phase);
        let mut residual = 0.0f64;
        for z in roots.iter_mut() {
            let (ratio, before) = newton_ratio(&c, *z);
            let polished = *z - ratio;
            let after = newton_ratio(&c, polished).1;
            if after.is_finite() && after <= before {
                *z = polished;
                residual = residual.max(after);
            } else {
                residual = residual.max(before);
            }
        }
        if residual <= RESIDUAL_TOLERANCE && roots.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Ok(RootSet {
                roots,
                residual,
                iterations,
            });
        }
        debug!("root finding attempt {attempt} for degree {n}: residual {residual:e}");
        last = residual;
    }
    Err(Error::RootFinding {
        degree: n,
        detail: format!("residual {last:e} after {} restarts", RESTARTS),
    })
}
