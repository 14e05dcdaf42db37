//! Gauss rules on `[-1, 1]`.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::gamma::ln_gamma_pos;
use super::orthopoly::{jacobi_derivative_unchecked, jacobi_unchecked};
use crate::error::{Error, Result};

/// Nodes in increasing order with matching weights.
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(x_i)`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Same rule mapped affinely onto `[a, b]`.
    pub fn integrate_on(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self.integrate(|x| f(mid + half * x))
    }
}

/// `n`-point Gauss-Legendre rule, nodes by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::domain("gauss_legendre", "need at least one node"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(GaussRule { nodes, weights })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let p_prev = if n == 0 { 0.0 } else { p0 };
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

/// `n`-point Gauss-Jacobi rule for the weight `(1-t)^alpha (1+t)^beta`.
///
/// Initial nodes come from the eigenvalues of the Jacobi matrix
/// (Golub-Welsch); each node is then polished by Newton's method on
/// `P_n^{(alpha, beta)}` and the weights are taken from the closed form
/// `w_i = C_n / ((1 - x_i^2) P_n'(x_i)^2)`.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::domain("gauss_jacobi", "need at least one node"));
    }
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(Error::domain(
            "gauss_jacobi",
            format!("need alpha, beta > -1, got ({alpha}, {beta})"),
        ));
    }
    let ab = alpha + beta;
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        jm[(k, k)] = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / (c * (c + 2.0))
        };
        if k + 1 < n {
            let m = kf + 1.0;
            let cm = 2.0 * m + ab;
            let b2 = if m == 1.0 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * m * (m + alpha) * (m + beta) * (m + ab) / (cm * cm * (cm + 1.0) * (cm - 1.0))
            };
            let b = b2.sqrt();
            jm[(k, k + 1)] = b;
            jm[(k + 1, k)] = b;
        }
    }
    let mut nodes: Vec<f64> = jm.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));

    let nf = n as f64;
    let ln_c = (ab + 1.0) * std::f64::consts::LN_2 + ln_gamma_pos(nf + alpha + 1.0)
        + ln_gamma_pos(nf + beta + 1.0)
        - ln_gamma_pos(nf + ab + 1.0)
        - ln_gamma_pos(nf + 1.0);
    let c = ln_c.exp();
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..8 {
            let p = jacobi_unchecked(alpha, beta, n, *x);
            let d = jacobi_derivative_unchecked(alpha, beta, n, *x);
            let step = p / d;
            let next = (*x - step).clamp(-1.0, 1.0);
            let done = step.abs() <= 1e-16 * x.abs().max(1e-3);
            *x = next;
            if done {
                break;
            }
        }
        let d = jacobi_derivative_unchecked(alpha, beta, n, *x);
        weights.push(c / ((1.0 - *x * *x) * d * d));
    }
    Ok(GaussRule { nodes, weights })
}
