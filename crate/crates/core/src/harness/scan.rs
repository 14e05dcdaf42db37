use std::io::{Read, Write};

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ensemble::EnsembleSpec;
use crate::energy::InnerProducts;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::wce::{wce_squared_from_products, SobolevOrder, BOUNDARY_GAP};

/// One aggregated `(N, s)` cell of a scan. Field names are the CSV/JSON columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub ensemble: String,
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub s: f64,
    pub reps: usize,
    pub mean_wce2: f64,
    pub stderr_wce2: f64,
    pub min_wce2: f64,
    pub max_wce2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanMetadata {
    pub seed: u64,
    pub version: String,
    /// Left empty unless requested, so repeated runs produce identical files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl ScanMetadata {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            version: format!("sphere-qmc {}", env!("CARGO_PKG_VERSION")),
            timestamp: None,
        }
    }
}

/// A grid cell (or a whole size when `s` is `None`) that could not be computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowFailure {
    #[serde(rename = "N")]
    pub n: usize,
    pub s: Option<f64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub metadata: ScanMetadata,
    pub rows: Vec<ScanRow>,
    /// Grid values dropped because `s - d/2` is an integer.
    #[serde(default)]
    pub excluded_s: Vec<f64>,
    #[serde(default)]
    pub failures: Vec<RowFailure>,
}

const HEADER: [&str; 9] = [
    "ensemble",
    "d",
    "N",
    "s",
    "reps",
    "mean_wce2",
    "stderr_wce2",
    "min_wce2",
    "max_wce2",
];

fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_real(field: &str, what: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|e| Error::Input(format!("cannot parse {what} {field:?}: {e}")))
}

impl ScanResult {
    /// CSV with `#` comment lines for metadata, exclusions and failures.
    /// Reals are written with 17 significant digits, which round-trips.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# seed={}", self.metadata.seed)?;
        writeln!(out, "# version={}", self.metadata.version)?;
        if let Some(t) = &self.metadata.timestamp {
            writeln!(out, "# timestamp={t}")?;
        }
        if !self.excluded_s.is_empty() {
            let list: Vec<String> = self.excluded_s.iter().map(|&s| fmt_real(s)).collect();
            writeln!(out, "# excluded_s={}", list.join(";"))?;
        }
        for f in &self.failures {
            let s = f.s.map_or_else(|| "-".to_string(), fmt_real);
            writeln!(out, "# failure={};{};{}", f.n, s, f.reason.replace('\n', " "))?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.ensemble.clone(),
                r.d.to_string(),
                r.n.to_string(),
                fmt_real(r.s),
                r.reps.to_string(),
                fmt_real(r.mean_wce2),
                fmt_real(r.stderr_wce2),
                fmt_real(r.min_wce2),
                fmt_real(r.max_wce2),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Input(e.to_string()))
    }

    /// Inverse of [`ScanResult::write_csv`]. A file without a seed line is
    /// accepted with seed 0 and an empty version.
    pub fn read_csv<R: Read>(mut input: R) -> Result<Self> {
        let mut text = String::new();
        input.read_to_string(&mut text)?;
        let mut metadata = ScanMetadata {
            seed: 0,
            version: String::new(),
            timestamp: None,
        };
        let mut excluded_s = Vec::new();
        let mut failures = Vec::new();
        let mut body = String::new();
        for line in text.lines() {
            let Some(comment) = line.strip_prefix('#') else {
                body.push_str(line);
                body.push('\n');
                continue;
            };
            let Some((key, value)) = comment.trim().split_once('=') else {
                continue;
            };
            match key {
                "seed" => {
                    metadata.seed = value
                        .parse()
                        .map_err(|e| Error::Input(format!("bad seed {value:?}: {e}")))?
                }
                "version" => metadata.version = value.to_string(),
                "timestamp" => metadata.timestamp = Some(value.to_string()),
                "excluded_s" => {
                    for s in value.split(';').filter(|s| !s.is_empty()) {
                        excluded_s.push(parse_real(s, "excluded s")?);
                    }
                }
                "failure" => {
                    let mut parts = value.splitn(3, ';');
                    let (n, s, reason) = (parts.next(), parts.next(), parts.next());
                    let (Some(n), Some(s), Some(reason)) = (n, s, reason) else {
                        return Err(Error::Input(format!("malformed failure line {value:?}")));
                    };
                    failures.push(RowFailure {
                        n: n.parse().map_err(|e| Error::Input(format!("bad N {n:?}: {e}")))?,
                        s: if s == "-" { None } else { Some(parse_real(s, "s")?) },
                        reason: reason.to_string(),
                    });
                }
                _ => {}
            }
        }
        let mut reader = csv::Reader::from_reader(body.as_bytes());
        let headers = reader.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != HEADER {
            return Err(Error::Input(format!(
                "expected columns {}, found {}",
                HEADER.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let rows = reader.deserialize().collect::<std::result::Result<Vec<ScanRow>, _>>()?;
        Ok(Self {
            metadata,
            rows,
            excluded_s,
            failures,
        })
    }
}

/// Splits an `s` grid into usable orders, boundary values (`s - d/2` an
/// integer, dropped with a warning) and other invalid values with reasons.
pub fn filter_s_grid(d: usize, s_grid: &[f64]) -> (Vec<SobolevOrder>, Vec<f64>, Vec<(f64, String)>) {
    let half = d as f64 / 2.0;
    let mut orders = Vec::new();
    let mut excluded = Vec::new();
    let mut invalid = Vec::new();
    for &s in s_grid {
        let excess = s - half;
        if excess > 0.0 && (excess - excess.round()).abs() < BOUNDARY_GAP {
            warn!("dropping s = {s}: s - d/2 is an integer and the error formula is undefined there");
            excluded.push(s);
            continue;
        }
        match SobolevOrder::new(d, s) {
            Ok(o) => orders.push(o),
            Err(e) => invalid.push((s, e.to_string())),
        }
    }
    (orders, excluded, invalid)
}

/// Monte Carlo means of `wce^2` over `reps` replicates for every `(N, s)`.
///
/// Invalid sizes and `s` values, and cells where any replicate fails, are
/// recorded in [`ScanResult::failures`] while the rest of the grid runs.
/// Output does not depend on `threads`.
pub fn run_scan(spec: &EnsembleSpec, n_list: &[usize], s_grid: &[f64], reps: usize, threads: usize) -> Result<ScanResult> {
    if reps < 2 {
        return Err(Error::Input(format!("need at least 2 replicates, got {reps}")));
    }
    if threads == 0 {
        return Err(Error::Input("thread count must be >= 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Input(format!("cannot start worker pool: {e}")))?;

    let (orders, excluded_s, invalid) = filter_s_grid(spec.d(), s_grid);
    let mut result = ScanResult {
        metadata: ScanMetadata::new(spec.master_seed()),
        rows: Vec::new(),
        excluded_s,
        failures: Vec::new(),
    };

    for &n in n_list {
        for (s, reason) in &invalid {
            result.failures.push(RowFailure {
                n,
                s: Some(*s),
                reason: reason.clone(),
            });
        }
        let prepared = match spec.prepare(n) {
            Ok(p) => p,
            Err(e) => {
                result.failures.push(RowFailure {
                    n,
                    s: None,
                    reason: e.to_string(),
                });
                continue;
            }
        };
        if orders.is_empty() {
            continue;
        }
        info!("{} N = {n}: {reps} replicates, {} values of s", spec.kind(), orders.len());

        let replicates: Vec<Result<Vec<Result<f64>>>> = pool.install(|| {
            (0..reps)
                .into_par_iter()
                .map(|r| {
                    let cfg = prepared.sample(spec.replicate_seed(n, r)?)?;
                    let products = InnerProducts::new(&cfg);
                    Ok(orders
                        .iter()
                        .map(|&o| wce_squared_from_products(&products, o))
                        .collect())
                })
                .collect()
        });

        let mut values = Vec::with_capacity(reps);
        let mut sample_error = None;
        for (r, rep) in replicates.into_iter().enumerate() {
            match rep {
                Ok(v) => values.push(v),
                Err(e) => {
                    sample_error = Some(format!("replicate {r}: {e}"));
                    break;
                }
            }
        }
        if let Some(reason) = sample_error {
            result.failures.push(RowFailure { n, s: None, reason });
            continue;
        }

        for (k, order) in orders.iter().enumerate() {
            let mut column = Vec::with_capacity(reps);
            let mut failure = None;
            for (r, v) in values.iter().enumerate() {
                match &v[k] {
                    Ok(x) => column.push(*x),
                    Err(e) => {
                        failure = Some(format!("replicate {r}: {e}"));
                        break;
                    }
                }
            }
            if let Some(reason) = failure {
                result.failures.push(RowFailure {
                    n,
                    s: Some(order.s()),
                    reason,
                });
                continue;
            }
            result.rows.push(aggregate(spec, n, order.s(), &column));
        }
    }
    Ok(result)
}

fn aggregate(spec: &EnsembleSpec, n: usize, s: f64, xs: &[f64]) -> ScanRow {
    let r = xs.len() as f64;
    let mean = xs.iter().copied().collect::<CompensatedSum>().value() / r;
    let ss = xs.iter().map(|x| (x - mean) * (x - mean)).collect::<CompensatedSum>().value();
    let sd = (ss / (r - 1.0)).sqrt();
    ScanRow {
        ensemble: spec.kind().name().to_string(),
        d: spec.d(),
        n,
        s,
        reps: xs.len(),
        mean_wce2: mean,
        stderr_wce2: sd / r.sqrt(),
        min_wce2: xs.iter().copied().fold(f64::INFINITY, f64::min),
        max_wce2: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::EnsembleKind;

    #[test]
    fn boundary_values_are_excluded() {
        let (orders, excluded, invalid) = filter_s_grid(2, &[0.5, 1.5, 2.0, 2.5, 3.0, 3.5, 4.5]);
        let kept: Vec<f64> = orders.iter().map(|o| o.s()).collect();
        assert_eq!(kept, vec![1.5, 2.5, 3.5]);
        assert_eq!(excluded, vec![2.0, 3.0]);
        assert_eq!(invalid.iter().map(|x| x.0).collect::<Vec<_>>(), vec![0.5, 4.5]);
    }

    #[test]
    fn small_scan_and_round_trip() {
        let spec = EnsembleSpec::new(EnsembleKind::Uniform, 2, 3).unwrap();
        let res = run_scan(&spec, &[4, 8, 1], &[1.5, 2.0, 2.5], 5, 2).unwrap();
        assert_eq!(res.rows.len(), 4);
        assert_eq!(res.excluded_s, vec![2.0]);
        assert_eq!(res.failures.len(), 1);
        assert_eq!(res.failures[0].n, 1);
        for row in &res.rows {
            assert!(row.min_wce2 <= row.mean_wce2 && row.mean_wce2 <= row.max_wce2);
            assert_eq!(row.reps, 5);
        }
        let text = res.to_csv_string().unwrap();
        let back = ScanResult::read_csv(text.as_bytes()).unwrap();
        assert_eq!(back, res);
    }

    #[test]
    fn rejects_bad_arguments() {
        let spec = EnsembleSpec::new(EnsembleKind::Uniform, 2, 3).unwrap();
        assert!(run_scan(&spec, &[4], &[1.5], 1, 1).is_err());
        assert!(run_scan(&spec, &[4], &[1.5], 4, 0).is_err());
    }

    #[test]
    fn wrong_header_is_rejected() {
        let text = "a,b\n1,2\n";
        assert!(matches!(ScanResult::read_csv(text.as_bytes()), Err(Error::Input(_))));
    }
}
