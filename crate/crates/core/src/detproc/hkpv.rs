use log::{debug, warn};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::ProjectionKernel;
use crate::error::{Error, Result};
use crate::sphere::{seeded_rng, uniform_point, Configuration, SpherePoint};

/// Ill-conditioned draws tolerated per point before giving up.
pub const MAX_RETRIES: usize = 100;

/// Accepted points whose conditional density is below this fraction of
/// `K(x, x)` would push the Gram condition number past about `1e12`.
const MIN_RELATIVE_RESIDUAL: f64 = 1e-12;

/// Cholesky factor is rebuilt from the Gram matrix this often.
const REFACTOR_EVERY: usize = 32;

/// Proposals allowed per point. The expected count is at most `N`.
const MAX_PROPOSALS_PER_POINT: usize = 10_000_000;

/// Bookkeeping from one run of the sampler.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HkpvStats {
    pub proposals: usize,
    pub accepted: usize,
    pub retries: usize,
}

impl HkpvStats {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.proposals.max(1) as f64
    }
}

/// Lower-triangular `L` with `G = L L^H` for the Gram matrix of the points
/// placed so far; rows are stored densely.
struct GramFactor {
    gram: Vec<Vec<Complex64>>,
    chol: Vec<Vec<Complex64>>,
}

impl GramFactor {
    fn new() -> Self {
        Self {
            gram: Vec::new(),
            chol: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.chol.len()
    }

    /// Solves `L w = v` into `w` and returns `|w|^2`, stopping early (with
    /// `None`) once the partial sum exceeds `limit`.
    fn solve_bounded(&self, v: &[Complex64], w: &mut Vec<Complex64>, limit: f64) -> Option<f64> {
        w.clear();
        let mut norm = 0.0;
        for (i, row) in self.chol.iter().enumerate() {
            let mut acc = v[i];
            for (l, x) in row[..i].iter().zip(w.iter()) {
                acc -= l * x;
            }
            let wi = acc / row[i].re;
            norm += wi.norm_sqr();
            if norm > limit {
                return None;
            }
            w.push(wi);
        }
        Some(norm)
    }

    /// Appends a point with kernel column `v`, diagonal `kxx`, and
    /// `w = L^{-1} v`.
    fn push(&mut self, v: &[Complex64], kxx: f64, w: &[Complex64], residual: f64) -> Result<()> {
        let mut grow = v.to_vec();
        grow.push(Complex64::new(kxx, 0.0));
        self.gram.push(grow);
        let mut row: Vec<Complex64> = w.iter().map(|x| x.conj()).collect();
        row.push(Complex64::new(residual.sqrt(), 0.0));
        self.chol.push(row);
        if self.len().is_multiple_of(REFACTOR_EVERY) {
            self.refactor()?;
        }
        Ok(())
    }

    fn refactor(&mut self) -> Result<()> {
        let k = self.len();
        // gram[j][i] = K(y_i, y_j) for i <= j, i.e. G_{ij}
        let g = DMatrix::from_fn(k, k, |i, j| if i <= j { self.gram[j][i] } else { self.gram[i][j].conj() });
        let chol = g.cholesky().ok_or_else(|| Error::Sampling {
            index: k,
            detail: "Gram matrix lost positive definiteness at refactorization".into(),
        })?;
        let l = chol.l();
        for (i, row) in self.chol.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = l[(i, j)];
            }
        }
        debug!("refactored Gram matrix at {k} points");
        Ok(())
    }
}

/// One exact sample of the projection DPP, seeded.
pub fn hkpv_sample<K: ProjectionKernel + ?Sized>(kernel: &K, seed: u64) -> Result<(Configuration, HkpvStats)> {
    let mut rng = seeded_rng(seed);
    let (points, stats) = hkpv_sample_with_rng(kernel, &mut rng)?;
    Ok((Configuration::new(kernel.d(), points, kernel.label(), Some(seed))?, stats))
}

/// Sequential sampler: point `k+1` has density
/// `(K(x, x) - v^H G_k^{-1} v) / (N - k)` against the surface measure,
/// with `v_j = K(y_j, x)`. Proposals are uniform and are accepted with
/// probability `residual / sup K(x, x)`.
pub fn hkpv_sample_with_rng<K: ProjectionKernel + ?Sized, R: Rng + ?Sized>(
    kernel: &K,
    rng: &mut R,
) -> Result<(Vec<SpherePoint>, HkpvStats)> {
    let n = kernel.rank();
    let d = kernel.d();
    let bound = kernel.diagonal_bound();
    let mut stats = HkpvStats::default();
    let mut points: Vec<SpherePoint> = Vec::with_capacity(n);
    let mut factor = GramFactor::new();
    let mut v = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);

    while points.len() < n {
        let k = points.len();
        let mut retries = 0;
        let mut proposals = 0;
        loop {
            if proposals >= MAX_PROPOSALS_PER_POINT {
                return Err(Error::Sampling {
                    index: k,
                    detail: format!("no acceptance after {proposals} proposals"),
                });
            }
            proposals += 1;
            stats.proposals += 1;
            let x = uniform_point(d, rng);
            let u: f64 = rng.random();
            let kxx = kernel.diagonal(&x);
            // accept iff kxx - |w|^2 >= u * bound
            let limit = kxx - u * bound;
            if limit < 0.0 {
                continue;
            }
            v.clear();
            v.extend(points.iter().map(|y| kernel.evaluate(y, &x)));
            let Some(norm) = factor.solve_bounded(&v, &mut w, limit) else {
                continue;
            };
            let residual = kxx - norm;
            if residual < MIN_RELATIVE_RESIDUAL * kxx {
                retries += 1;
                stats.retries += 1;
                warn!("point {k}: conditional density {residual:e} is ill-conditioned, redrawing");
                if retries > MAX_RETRIES {
                    return Err(Error::Sampling {
                        index: k,
                        detail: format!("{MAX_RETRIES} consecutive ill-conditioned draws"),
                    });
                }
                continue;
            }
            factor.push(&v, kxx, &w, residual)?;
            points.push(x);
            stats.accepted += 1;
            break;
        }
    }
    Ok((points, stats))
}

/// Gram matrix `(K(x_i, x_j))` of a configuration.
pub fn gram_matrix<K: ProjectionKernel + ?Sized>(kernel: &K, cfg: &Configuration) -> DMatrix<Complex64> {
    let p = cfg.points();
    DMatrix::from_fn(p.len(), p.len(), |i, j| kernel.evaluate(&p[i], &p[j]))
}

/// Conditional density of the next point given `given`, computed with a
/// fresh dense Cholesky factorization.
pub fn conditional_density<K: ProjectionKernel + ?Sized>(
    kernel: &K,
    given: &[SpherePoint],
    x: &SpherePoint,
) -> Result<f64> {
    let k = given.len();
    let n = kernel.rank();
    if k >= n {
        return Err(Error::domain(
            "conditional_density",
            format!("{k} points already fill a rank-{n} kernel"),
        ));
    }
    let kxx = kernel.diagonal(x);
    if k == 0 {
        return Ok(kxx / n as f64);
    }
    let g = DMatrix::from_fn(k, k, |i, j| kernel.evaluate(&given[i], &given[j]));
    let v = nalgebra::DVector::from_fn(k, |i, _| kernel.evaluate(&given[i], x));
    let chol = g.cholesky().ok_or_else(|| Error::Sampling {
        index: k,
        detail: "conditioning points have a singular Gram matrix".into(),
    })?;
    let sol = chol.solve(&v);
    let quad = v.iter().zip(sol.iter()).map(|(a, b)| (a.conj() * b).re).sum::<f64>();
    Ok(((kxx - quad) / (n - k) as f64).max(0.0))
}
