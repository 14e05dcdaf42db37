use std::io::{Read, Write};

use super::{Configuration, SpherePoint};
use crate::error::{Error, Result};

/// Largest accepted deviation of a row norm from 1 when reading.
pub const NORM_TOLERANCE: f64 = 1e-6;

/// Writes `x0,...,xd` CSV with 17 significant digits per value.
pub fn write_configuration<W: Write>(config: &Configuration, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record((0..=config.d()).map(|k| format!("x{k}")))?;
    for p in config.points() {
        w.write_record(p.coords().iter().map(|x| format!("{x:.16e}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a configuration written by [`write_configuration`]. The dimension
/// comes from the header; rows are renormalized after the norm check.
pub fn read_configuration<R: Read>(reader: R, label: impl Into<String>) -> Result<Configuration> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header = r.headers()?.clone();
    let cols = header.len();
    if cols < 2 {
        return Err(Error::Input(format!("need at least 2 columns, got {cols}")));
    }
    for (k, name) in header.iter().enumerate() {
        if name != format!("x{k}") {
            return Err(Error::Input(format!("column {k} should be named x{k}, found {name:?}")));
        }
    }
    let mut points = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let coords = rec
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|e| Error::Input(format!("row {}: cannot parse {f:?}: {e}", row + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= NORM_TOLERANCE) {
            return Err(Error::Input(format!(
                "row {}: norm {norm} is not within {NORM_TOLERANCE:e} of 1",
                row + 1
            )));
        }
        points.push(SpherePoint::new(coords)?);
    }
    Configuration::new(cols - 1, points, label, None)
}
