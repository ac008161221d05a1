//! CSV layout: `step, t, energy, energy_drift, spectral_drift, <casimirs>,
//! solver_iters, membership_residual`. Floats use Rust's shortest
//! round-trip decimal formatting, so parsing a written file gives back the
//! same bits.

use std::io::Write;
use std::path::Path;

use super::TrajectoryRecord;
use crate::error::{Error, Result};

pub fn csv_header(casimir_labels: &[String]) -> Vec<String> {
    let mut h: Vec<String> = ["step", "t", "energy", "energy_drift", "spectral_drift"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    h.extend(casimir_labels.iter().cloned());
    h.push("solver_iters".into());
    h.push("membership_residual".into());
    h
}

pub fn write_csv_to<W: Write>(
    records: &[TrajectoryRecord],
    casimir_labels: &[String],
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header(casimir_labels))?;
    for r in records {
        if r.casimir_values.len() != casimir_labels.len() {
            return Err(Error::InvalidArgument(format!(
                "record at step {} has {} casimirs, header has {}",
                r.step,
                r.casimir_values.len(),
                casimir_labels.len()
            )));
        }
        let mut row = vec![
            r.step.to_string(),
            r.t.to_string(),
            r.energy.to_string(),
            r.energy_drift.to_string(),
            r.spectral_drift.to_string(),
        ];
        row.extend(r.casimir_values.iter().map(f64::to_string));
        row.push(r.solver_iters_total.to_string());
        row.push(r.membership_residual.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(
    records: &[TrajectoryRecord],
    casimir_labels: &[String],
    path: impl AsRef<Path>,
) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv_to(records, casimir_labels, std::io::BufWriter::new(file))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub casimir_labels: Vec<String>,
    pub records: Vec<TrajectoryRecord>,
}

fn parse<T: std::str::FromStr>(field: &str, column: &str, line: usize) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::Io(format!("line {line}: bad {column} value {field:?}")))
}

/// Inverse of [`write_csv`]. Rows with a NaN spectral drift come back
/// flagged.
pub fn read_csv(path: impl AsRef<Path>) -> Result<CsvTable> {
    let mut rdr = csv::Reader::from_path(path)?;
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let k = header.len();
    if k < 7 || header[..5] != csv_header(&[])[..5] || header[k - 2..] != csv_header(&[])[5..] {
        return Err(Error::Io(format!("unexpected CSV header {header:?}")));
    }
    let casimir_labels = header[5..k - 2].to_vec();
    let mut records = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let f = |j: usize| parse::<f64>(&row[j], &header[j], line);
        let spectral_drift = f(4)?;
        records.push(TrajectoryRecord {
            step: parse(&row[0], "step", line)?,
            t: f(1)?,
            energy: f(2)?,
            energy_drift: f(3)?,
            spectral_drift,
            casimir_values: (5..k - 2).map(f).collect::<Result<_>>()?,
            solver_iters_total: parse(&row[k - 2], "solver_iters", line)?,
            membership_residual: f(k - 1)?,
            flagged: spectral_drift.is_nan(),
        });
    }
    Ok(CsvTable {
        casimir_labels,
        records,
    })
}
