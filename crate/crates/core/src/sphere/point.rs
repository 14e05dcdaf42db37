use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unit vector in `R^{d+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Normalizes `coords` onto the sphere. Fails on an empty, zero or non-finite vector.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Input(format!(
                "a sphere point needs at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Input(format!("cannot normalize vector with norm {norm}")));
        }
        Ok(Self {
            coords: coords.into_iter().map(|x| x / norm).collect(),
        })
    }

    /// Wraps coordinates already known to be unit length.
    pub(crate) fn from_unit(coords: Vec<f64>) -> Self {
        debug_assert!((coords.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-9);
        Self { coords }
    }

    /// `(sin(theta) cos(phi), sin(theta) sin(phi), z)` with `z = cos(theta)`.
    pub fn from_z_phi(z: f64, phi: f64) -> Self {
        let z = z.clamp(-1.0, 1.0);
        let r = (1.0 - z * z).max(0.0).sqrt();
        Self {
            coords: vec![r * phi.cos(), r * phi.sin(), z],
        }
    }

    pub fn north_pole(d: usize) -> Self {
        let mut coords = vec![0.0; d + 1];
        coords[d] = 1.0;
        Self { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Sphere dimension `d` (the point lives in `R^{d+1}`).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        dot(&self.coords, &other.coords)
    }

    /// Euclidean distance `sqrt(2 - 2 <x, y>)` with the inner product clamped to `[-1, 1]`.
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        // coordinate differences keep relative accuracy for close points
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
            .min(2.0)
    }

    /// Geodesic distance `acos(<x, y>)`.
    pub fn geodesic_distance(&self, other: &SpherePoint) -> f64 {
        self.dot(other).clamp(-1.0, 1.0).acos()
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Finite point set on `S^d` together with where it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    d: usize,
    points: Vec<SpherePoint>,
    label: String,
    seed: Option<u64>,
}

impl Configuration {
    /// Checks that every point lives on `S^d`.
    pub fn new(d: usize, points: Vec<SpherePoint>, label: impl Into<String>, seed: Option<u64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Input("sphere dimension must be >= 1".into()));
        }
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.dim() != d) {
            return Err(Error::Input(format!(
                "point {i} lives on S^{} but the configuration is on S^{d}",
                p.dim()
            )));
        }
        Ok(Self {
            d,
            points,
            label: label.into(),
            seed,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Applies a linear map given as a row-major `(d+1) x (d+1)` matrix and
    /// renormalizes. Used for rotation-invariance checks.
    pub fn transformed(&self, matrix: &[f64]) -> Result<Self> {
        let n = self.d + 1;
        if matrix.len() != n * n {
            return Err(Error::Input(format!("expected a {n}x{n} matrix")));
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                let c = p.coords();
                SpherePoint::new((0..n).map(|r| dot(&matrix[r * n..(r + 1) * n], c)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            d: self.d,
            points,
            label: self.label.clone(),
            seed: self.seed,
        })
    }
}
