use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of a function.
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// Two points coincide while the energy kernel is singular at zero distance.
    #[error("singular energy: points {i} and {j} coincide (s = {s})")]
    SingularEnergy { i: usize, j: usize, s: f64 },

    /// A worst-case error evaluated to a clearly negative number.
    #[error("negative squared worst-case error {value:e} (tolerance {tolerance:e}); formula or sign regression")]
    NegativeWce { value: f64, tolerance: f64 },

    /// The sequential DPP sampler could not place a point.
    #[error("DPP sampling failed at point {index}: {detail}")]
    Sampling { index: usize, detail: String },

    /// Simultaneous iteration did not converge to all roots.
    #[error("root finding failed for degree {degree}: {detail}")]
    RootFinding { degree: usize, detail: String },

    /// A closed form exists in principle but is not implemented for these arguments.
    #[error("unsupported arguments for {function}: {detail}")]
    Unsupported {
        function: &'static str,
        detail: String,
    },

    /// Malformed input data (CSV rows, configuration files, scan tables).
    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    /// Whether the failure comes from the numerics rather than from the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NegativeWce { .. }
                | Error::Sampling { .. }
                | Error::RootFinding { .. }
                | Error::SingularEnergy { .. }
        )
    }
}
