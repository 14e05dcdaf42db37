use std::f64::consts::{PI, TAU};

use super::SpherePoint;
use crate::error::{Error, Result};

/// One cell of a zonal partition of `S^2`: a band in `z = cos(theta)` times
/// an azimuthal interval. Polar caps span the full azimuth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    /// 0 for the north cap, `bands + 1` for the south cap.
    pub band: usize,
    pub z_lo: f64,
    pub z_hi: f64,
    pub phi_lo: f64,
    pub phi_hi: f64,
}

impl Cell {
    /// Normalized surface measure. On `S^2` the area element is `dz dphi / (4 pi)`.
    pub fn area(&self) -> f64 {
        (self.z_hi - self.z_lo) * (self.phi_hi - self.phi_lo) / (2.0 * TAU)
    }

    pub fn is_cap(&self) -> bool {
        self.phi_hi - self.phi_lo >= TAU
    }

    /// Closed-cell membership test.
    pub fn contains(&self, p: &SpherePoint) -> bool {
        let (z, phi) = z_phi(p);
        if z < self.z_lo || z > self.z_hi {
            return false;
        }
        if self.is_cap() {
            return true;
        }
        // a pole sits on every band corner it touches
        if 1.0 - z.abs() < 1e-15 {
            return true;
        }
        phi >= self.phi_lo && phi <= self.phi_hi
    }

    /// Polar angle interval `(theta_lo, theta_hi)`.
    pub fn polar_interval(&self) -> (f64, f64) {
        (self.z_hi.acos(), self.z_lo.acos())
    }

    /// Chordal diameter.
    ///
    /// Caps use `2 sin(theta)` directly. For a band cell the farthest pair
    /// lies on the boundary, which is sampled at `resolution` points per edge
    /// and refined; the result undershoots the true diameter by `O(h^2)`.
    pub fn diameter(&self, resolution: usize) -> f64 {
        if self.is_cap() {
            let z_edge = if self.z_hi >= 1.0 { self.z_lo } else { self.z_hi };
            if (self.z_hi >= 1.0 && z_edge <= 0.0) || (self.z_lo <= -1.0 && z_edge >= 0.0) {
                return 2.0;
            }
            return 2.0 * (1.0 - z_edge * z_edge).max(0.0).sqrt();
        }
        let m = resolution.max(2);
        let mut boundary = Vec::with_capacity(4 * m);
        for k in 0..m {
            let t = k as f64 / (m - 1) as f64;
            let phi = self.phi_lo + t * (self.phi_hi - self.phi_lo);
            let z = self.z_lo + t * (self.z_hi - self.z_lo);
            boundary.push(SpherePoint::from_z_phi(self.z_lo, phi));
            boundary.push(SpherePoint::from_z_phi(self.z_hi, phi));
            boundary.push(SpherePoint::from_z_phi(z, self.phi_lo));
            boundary.push(SpherePoint::from_z_phi(z, self.phi_hi));
        }
        let mut min_dot = 1.0f64;
        for (i, a) in boundary.iter().enumerate() {
            for b in &boundary[i + 1..] {
                min_dot = min_dot.min(a.dot(b));
            }
        }
        (2.0 - 2.0 * min_dot.clamp(-1.0, 1.0)).sqrt()
    }
}

fn z_phi(p: &SpherePoint) -> (f64, f64) {
    let c = p.coords();
    let mut phi = c[1].atan2(c[0]);
    if phi < 0.0 {
        phi += TAU;
    }
    (c[2], phi)
}

/// Equal-area partition of `S^2` into two polar caps and latitude bands of
/// congruent cells.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualAreaPartition {
    n: usize,
    /// Band boundaries in `z`, from 1 down to -1.
    z_bounds: Vec<f64>,
    /// Number of cells in each zone, caps included.
    counts: Vec<usize>,
    cells: Vec<Cell>,
}

impl EqualAreaPartition {
    pub fn d(&self) -> usize {
        2
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Number of bands between the caps.
    pub fn band_count(&self) -> usize {
        self.counts.len().saturating_sub(2)
    }

    /// Cells per zone from north to south, caps included.
    pub fn zone_counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn z_bounds(&self) -> &[f64] {
        &self.z_bounds
    }

    /// Index of the cell containing `p`, using half-open intervals so that
    /// every point has exactly one owner.
    pub fn locate(&self, p: &SpherePoint) -> usize {
        let (z, phi) = z_phi(p);
        let zone = self
            .z_bounds
            .windows(2)
            .position(|w| z > w[1] && z <= w[0])
            .unwrap_or(self.counts.len() - 1);
        let first: usize = self.counts[..zone].iter().sum();
        let m = self.counts[zone];
        let k = ((phi / TAU) * m as f64).floor() as usize;
        first + k.min(m - 1)
    }

    pub fn max_diameter(&self, resolution: usize) -> f64 {
        self.cells
            .iter()
            .map(|c| c.diameter(resolution))
            .fold(0.0, f64::max)
    }
}

/// Zonal equal-area partition of `S^2` into `n` cells.
///
/// The caps have area `1/n`. The remaining polar angle is split into
/// `round((pi - 2 theta_c) / sqrt(4 pi / n))` collars; their ideal cell
/// counts are rounded with carried remainders, and collar boundaries are
/// then moved so each collar has area exactly `count / n`.
pub fn build_equal_area_partition(n: usize) -> Result<EqualAreaPartition> {
    if n < 2 {
        return Err(Error::domain(
            "build_equal_area_partition",
            format!("need at least 2 cells, got {n}"),
        ));
    }
    let nf = n as f64;
    let counts = if n == 2 {
        vec![1, 1]
    } else {
        let theta_c = (1.0 - 2.0 / nf).acos();
        let ideal_height = (4.0 * PI / nf).sqrt();
        let collars = (((PI - 2.0 * theta_c) / ideal_height).round() as usize).max(1);
        let height = (PI - 2.0 * theta_c) / collars as f64;
        let mut counts = vec![1];
        let mut carry = 0.0;
        let mut placed = 0usize;
        for i in 0..collars {
            let a = theta_c + i as f64 * height;
            let b = a + height;
            let ideal = nf * (a.cos() - b.cos()) / 2.0;
            let m = if i + 1 == collars {
                n - 2 - placed
            } else {
                let m = (ideal + carry).round().max(1.0) as usize;
                carry += ideal - m as f64;
                m.min(n - 2 - placed - (collars - 1 - i))
            };
            if m == 0 {
                return Err(Error::domain(
                    "build_equal_area_partition",
                    format!("empty collar for n = {n}"),
                ));
            }
            placed += m;
            counts.push(m);
        }
        counts.push(1);
        counts
    };

    let mut z_bounds = Vec::with_capacity(counts.len() + 1);
    z_bounds.push(1.0);
    let mut cumulative = 0usize;
    for (zone, &m) in counts.iter().enumerate() {
        cumulative += m;
        z_bounds.push(if zone + 1 == counts.len() {
            -1.0
        } else {
            1.0 - 2.0 * cumulative as f64 / nf
        });
    }

    let mut cells = Vec::with_capacity(n);
    for (zone, &m) in counts.iter().enumerate() {
        let (z_hi, z_lo) = (z_bounds[zone], z_bounds[zone + 1]);
        let full = zone == 0 || zone + 1 == counts.len();
        for k in 0..m {
            let (phi_lo, phi_hi) = if full {
                (0.0, TAU)
            } else {
                (TAU * k as f64 / m as f64, TAU * (k + 1) as f64 / m as f64)
            };
            cells.push(Cell {
                band: zone,
                z_lo,
                z_hi,
                phi_lo,
                phi_hi,
            });
        }
    }
    debug_assert_eq!(cells.len(), n);
    Ok(EqualAreaPartition {
        n,
        z_bounds,
        counts,
        cells,
    })
}
