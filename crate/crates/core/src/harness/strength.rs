use std::fmt::Write as _;

use serde::Serialize;

use super::scan::ScanResult;
use crate::error::{Error, Result};

/// Default half-width accepted around the optimal slope `-2s/d`.
pub const DEFAULT_TOLERANCE: f64 = 0.15;
/// Fewest distinct sizes per `s` for a slope fit.
pub const MIN_SIZES: usize = 4;

/// Least-squares slope of `log mean_wce2` against `log N` at one `s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeEstimate {
    pub s: f64,
    pub beta: f64,
    pub stderr: f64,
    pub intercept: f64,
    pub sizes: usize,
    /// `-2s/d`, the slope of an `s`-QMC design sequence.
    pub optimal: f64,
}

impl SlopeEstimate {
    pub fn within(&self, tol: f64) -> bool {
        (self.beta - self.optimal).abs() <= tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrengthFit {
    pub ensemble: String,
    pub d: usize,
    pub tolerance: f64,
    /// Sorted by `s`.
    pub slopes: Vec<SlopeEstimate>,
    /// Largest grid `s` whose slope is within `tolerance` of `-2s/d`.
    pub strength: Option<f64>,
}

/// Ordinary least squares of `log y` on `log x`: `(slope, stderr, intercept)`.
/// The standard error is `NaN` for exactly two points.
pub fn fit_slope(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Input(format!(
            "need at least two (x, y) pairs of equal length, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.iter().chain(y).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Input("log-log fit needs finite positive values".into()));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Input("log-log fit needs at least two distinct x values".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let beta = sxy / sxx;
    let intercept = my - beta * mx;
    let ssr: f64 = lx.iter().zip(&ly).map(|(a, b)| (b - intercept - beta * a).powi(2)).sum();
    let stderr = if lx.len() > 2 { (ssr / (n - 2.0) / sxx).sqrt() } else { f64::NAN };
    Ok((beta, stderr, intercept))
}

/// Per-`s` decay rates of the mean squared error and the resulting strength
/// estimate. Rows must come from one ensemble on `S^d`.
pub fn fit_strength(result: &ScanResult, d: usize, tol: f64) -> Result<StrengthFit> {
    if !(tol > 0.0) {
        return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
    }
    let Some(first) = result.rows.first() else {
        return Err(Error::Input("scan has no rows".into()));
    };
    if let Some(r) = result.rows.iter().find(|r| r.ensemble != first.ensemble || r.d != d) {
        return Err(Error::Input(format!(
            "rows must share one ensemble on S^{d}; found {} on S^{}",
            r.ensemble, r.d
        )));
    }
    let mut grid: Vec<f64> = result.rows.iter().map(|r| r.s).collect();
    grid.sort_by(|a, b| a.total_cmp(b));
    grid.dedup();

    let mut slopes = Vec::with_capacity(grid.len());
    for s in grid {
        let mut cells: Vec<(f64, f64)> = result
            .rows
            .iter()
            .filter(|r| r.s == s)
            .map(|r| (r.n as f64, r.mean_wce2))
            .collect();
        cells.sort_by(|a, b| a.0.total_cmp(&b.0));
        cells.dedup_by(|a, b| a.0 == b.0);
        if cells.len() < MIN_SIZES {
            return Err(Error::Input(format!(
                "s = {s}: need at least {MIN_SIZES} distinct N values, got {}",
                cells.len()
            )));
        }
        let (x, y): (Vec<f64>, Vec<f64>) = cells.into_iter().unzip();
        let (beta, stderr, intercept) = fit_slope(&x, &y)?;
        slopes.push(SlopeEstimate {
            s,
            beta,
            stderr,
            intercept,
            sizes: x.len(),
            optimal: -2.0 * s / d as f64,
        });
    }
    let strength = slopes.iter().rev().find(|e| e.within(tol)).map(|e| e.s);
    Ok(StrengthFit {
        ensemble: first.ensemble.clone(),
        d,
        tolerance: tol,
        slopes,
        strength,
    })
}

impl StrengthFit {
    /// Plain-text table of slopes with the decision rule stated in the header.
    pub fn report(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ensemble: {} on S^{}", self.ensemble, self.d);
        let _ = writeln!(
            out,
            "rule: strength = largest s with |beta(s) + 2s/d| <= {} (heuristic read of finite-N slopes)",
            self.tolerance
        );
        let _ = writeln!(out, "{:>8} {:>10} {:>9} {:>10} {:>6}  ok", "s", "beta", "stderr", "-2s/d", "sizes");
        for e in &self.slopes {
            let _ = writeln!(
                out,
                "{:>8.4} {:>10.4} {:>9.4} {:>10.4} {:>6}  {}",
                e.s,
                e.beta,
                e.stderr,
                e.optimal,
                e.sizes,
                if e.within(self.tolerance) { "yes" } else { "no" }
            );
        }
        match self.strength {
            Some(s) => {
                let _ = writeln!(out, "estimated strength: s* >= {s}");
            }
            None => {
                let _ = writeln!(out, "estimated strength: none of the grid values attains the optimal rate");
            }
        }
        out
    }
}
