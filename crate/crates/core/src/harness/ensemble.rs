use std::fmt;
use std::str::FromStr;

use crate::closedforms::{expected_energy, expected_wce2, EnergyModel, ExpectedValue};
use crate::detproc::{harmonic_kernel, hkpv_sample, spherical_kernel, HarmonicKernel, SphericalKernel};
use crate::error::{Error, Result};
use crate::polyzeros::zeros_on_sphere;
use crate::specfun::DimensionTable;
use crate::sphere::{sample_jittered, sample_uniform, Configuration};

/// Largest `N` that [`split_seed`] keeps collision-free.
pub const MAX_SPLIT_N: usize = (1 << 20) - 1;
/// Largest replicate count that [`split_seed`] keeps collision-free.
pub const MAX_REPLICATES: usize = u32::MAX as usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnsembleKind {
    Uniform,
    Jittered,
    Harmonic,
    Spherical,
    Elliptic,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 5] = [
        EnsembleKind::Uniform,
        EnsembleKind::Jittered,
        EnsembleKind::Harmonic,
        EnsembleKind::Spherical,
        EnsembleKind::Elliptic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Uniform => "uniform",
            EnsembleKind::Jittered => "jittered",
            EnsembleKind::Harmonic => "harmonic",
            EnsembleKind::Spherical => "spherical",
            EnsembleKind::Elliptic => "elliptic",
        }
    }

    fn tag(self) -> u64 {
        match self {
            EnsembleKind::Uniform => 1,
            EnsembleKind::Jittered => 2,
            EnsembleKind::Harmonic => 3,
            EnsembleKind::Spherical => 4,
            EnsembleKind::Elliptic => 5,
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EnsembleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::Input(format!(
                    "unknown ensemble {s:?}; expected one of uniform, jittered, harmonic, spherical, elliptic"
                ))
            })
    }
}

fn mix64(mut z: u64) -> u64 {
    // splitmix64 finalizer, a bijection on u64
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of replicate `r` at size `n`. The key `tag << 52 | n << 32 | r` is
/// injective for `n <= MAX_SPLIT_N`, `r <= MAX_REPLICATES`, and every step
/// after it is a bijection, so distinct keys never share a seed.
pub fn split_seed(master: u64, kind: EnsembleKind, n: usize, r: usize) -> Result<u64> {
    if n > MAX_SPLIT_N || r > MAX_REPLICATES {
        return Err(Error::Input(format!(
            "seed key out of range: N = {n} (max {MAX_SPLIT_N}), replicate {r} (max {MAX_REPLICATES})"
        )));
    }
    let key = kind.tag() << 52 | (n as u64) << 32 | r as u64;
    Ok(mix64(master ^ mix64(key)))
}

/// Ensemble, dimension and master seed of a Monte Carlo study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleSpec {
    kind: EnsembleKind,
    d: usize,
    master_seed: u64,
}

/// A sampler prepared for one `N`, so kernels are built once per size.
pub(crate) enum Prepared {
    Uniform { d: usize, n: usize },
    Jittered { n: usize },
    Harmonic(HarmonicKernel),
    Spherical(SphericalKernel),
    Elliptic { n: usize },
}

impl Prepared {
    pub(crate) fn sample(&self, seed: u64) -> Result<Configuration> {
        match self {
            Prepared::Uniform { d, n } => sample_uniform(*d, *n, seed),
            Prepared::Jittered { n } => sample_jittered(*n, seed),
            Prepared::Harmonic(k) => Ok(hkpv_sample(k, seed)?.0),
            Prepared::Spherical(k) => Ok(hkpv_sample(k, seed)?.0),
            Prepared::Elliptic { n } => zeros_on_sphere(*n, seed),
        }
    }
}

impl EnsembleSpec {
    /// Harmonic and uniform points live on any `S^d`; the other families on `S^2`.
    pub fn new(kind: EnsembleKind, d: usize, master_seed: u64) -> Result<Self> {
        let ok = match kind {
            EnsembleKind::Uniform | EnsembleKind::Harmonic => d >= 1,
            _ => d == 2,
        };
        if !ok {
            return Err(Error::Input(format!("{kind} points are not available on S^{d}")));
        }
        Ok(Self { kind, d, master_seed })
    }

    pub fn kind(&self) -> EnsembleKind {
        self.kind
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Polynomial degree `L` with `N = dim Pi_L(S^d)`, if `n` is such a size.
    pub fn harmonic_degree(&self, n: usize) -> Result<usize> {
        DimensionTable::new(self.d)?.degree_for(n as u64).ok_or_else(|| {
            Error::Input(format!(
                "harmonic ensemble on S^{} needs N = dim of polynomials of degree <= L; {n} is not of that form",
                self.d
            ))
        })
    }

    /// Number of points for the harmonic ensemble of degree `degree`.
    pub fn harmonic_size(&self, degree: usize) -> Result<usize> {
        Ok(DimensionTable::new(self.d)?.polynomials(degree) as usize)
    }

    /// Checks that `n` is a valid size for this ensemble.
    pub fn validate_size(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::Input(format!("need N >= 2, got {n}")));
        }
        if self.kind == EnsembleKind::Harmonic {
            self.harmonic_degree(n)?;
        }
        Ok(())
    }

    pub(crate) fn prepare(&self, n: usize) -> Result<Prepared> {
        self.validate_size(n)?;
        Ok(match self.kind {
            EnsembleKind::Uniform => Prepared::Uniform { d: self.d, n },
            EnsembleKind::Jittered => Prepared::Jittered { n },
            EnsembleKind::Harmonic => Prepared::Harmonic(harmonic_kernel(self.d, self.harmonic_degree(n)?)?),
            EnsembleKind::Spherical => Prepared::Spherical(spherical_kernel(n)?),
            EnsembleKind::Elliptic => Prepared::Elliptic { n },
        })
    }

    pub fn replicate_seed(&self, n: usize, r: usize) -> Result<u64> {
        split_seed(self.master_seed, self.kind, n, r)
    }

    /// Replicate `r` of size `n`.
    pub fn sample(&self, n: usize, r: usize) -> Result<Configuration> {
        self.prepare(n)?.sample(self.replicate_seed(n, r)?)
    }

    /// Closed-form model of `N`-point configurations (none for jittered points).
    pub fn energy_model(&self, n: usize) -> Result<EnergyModel> {
        Ok(match self.kind {
            EnsembleKind::Uniform => EnergyModel::Uniform { d: self.d, n },
            EnsembleKind::Harmonic => EnergyModel::Harmonic {
                d: self.d,
                degree: self.harmonic_degree(n)?,
            },
            EnsembleKind::Spherical => EnergyModel::Spherical { n },
            EnsembleKind::Elliptic => EnergyModel::Elliptic { n },
            EnsembleKind::Jittered => {
                return Err(Error::Unsupported {
                    function: "energy_model",
                    detail: "no closed form for jittered points".into(),
                })
            }
        })
    }

    /// Closed-form `E[wce^2]` where one is available.
    pub fn expected_wce2(&self, n: usize, s: f64) -> Result<ExpectedValue> {
        expected_wce2(self.energy_model(n)?, s)
    }

    /// Closed-form `E[E_s]` where one is available; `s = 0` is the log energy.
    pub fn expected_energy(&self, n: usize, s: f64) -> Result<ExpectedValue> {
        expected_energy(self.energy_model(n)?, s)
    }
}
