//! Seeded Monte Carlo scans over `(N, s)` grids and decay-rate fitting.
//!
//! A scan samples `R` configurations per `N` from one [`EnsembleSpec`],
//! evaluates the squared worst-case error for every `s` from a single table
//! of inner products, and aggregates per `(N, s)`. Replicate seeds depend
//! only on `(master seed, ensemble, N, r)` and aggregation runs in replicate
//! order, so results are bit-identical for any thread count.

mod ensemble;
mod scan;
mod strength;

pub use ensemble::{split_seed, EnsembleKind, EnsembleSpec, MAX_REPLICATES, MAX_SPLIT_N};
pub use scan::{filter_s_grid, run_scan, RowFailure, ScanMetadata, ScanResult, ScanRow};
pub use strength::{fit_slope, fit_strength, SlopeEstimate, StrengthFit, DEFAULT_TOLERANCE, MIN_SIZES};
