//! CSV for [`ResultRecord`]s.
//!
//! Columns, in order: `dataset, task, p, mu, labeled_fraction, trial, seed,
//! error_rate, ncut_value, iterations, wall_time, converged, degenerate`.
//! Floats carry 17 significant digits; absent values are empty fields.

use std::io::{Read, Write};
use std::path::Path;

use super::experiment::{ResultRecord, Task};
use crate::error::{Error, Result};

/// Header row.
pub const COLUMNS: [&str; 13] = [
    "dataset",
    "task",
    "p",
    "mu",
    "labeled_fraction",
    "trial",
    "seed",
    "error_rate",
    "ncut_value",
    "iterations",
    "wall_time",
    "converged",
    "degenerate",
];

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

/// Writes the header and one row per record.
pub fn write_csv(records: &[ResultRecord], writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(COLUMNS)?;
    for r in records {
        w.write_record([
            r.dataset.clone(),
            r.task.to_string(),
            float(r.p),
            opt(r.mu),
            opt(r.labeled_fraction),
            r.trial.to_string(),
            r.seed.to_string(),
            float(r.error_rate),
            opt(r.ncut_value),
            r.iterations.to_string(),
            float(r.wall_time),
            r.converged.to_string(),
            r.degenerate.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// [`write_csv`] to a file.
pub fn emit_csv(records: &[ResultRecord], path: &Path) -> Result<()> {
    write_csv(records, std::fs::File::create(path)?)
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: usize) -> Result<T> {
    rec.get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::ParseError {
            line,
            message: format!("bad `{}` field", COLUMNS[i]),
        })
}

fn opt_field(rec: &csv::StringRecord, i: usize, line: usize) -> Result<Option<f64>> {
    match rec.get(i) {
        Some("") => Ok(None),
        _ => field(rec, i, line).map(Some),
    }
}

/// Parses output of [`write_csv`].
pub fn parse_csv(reader: impl Read) -> Result<Vec<ResultRecord>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header != COLUMNS {
        return Err(Error::ParseError {
            line: 1,
            message: "unexpected header".into(),
        });
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        out.push(ResultRecord {
            dataset: rec[0].to_owned(),
            task: rec[1].parse::<Task>()?,
            p: field(&rec, 2, line)?,
            mu: opt_field(&rec, 3, line)?,
            labeled_fraction: opt_field(&rec, 4, line)?,
            trial: field(&rec, 5, line)?,
            seed: field(&rec, 6, line)?,
            error_rate: field(&rec, 7, line)?,
            ncut_value: opt_field(&rec, 8, line)?,
            iterations: field(&rec, 9, line)?,
            wall_time: field(&rec, 10, line)?,
            converged: field(&rec, 11, line)?,
            degenerate: field(&rec, 12, line)?,
        });
    }
    Ok(out)
}

/// Reads a file written by [`emit_csv`].
pub fn read_csv(path: &Path) -> Result<Vec<ResultRecord>> {
    parse_csv(std::fs::File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> ResultRecord {
        ResultRecord {
            dataset: "has,comma".into(),
            task: Task::SweepP,
            p: 2.5,
            mu: None,
            labeled_fraction: Some(0.1),
            trial: 3,
            seed: u64::MAX,
            error_rate: 1.0 / 3.0,
            ncut_value: Some(0.123456789012345678),
            iterations: 17,
            wall_time: 0.5,
            converged: true,
            degenerate: false,
        }
    }

    #[test]
    fn header_only_and_round_trip() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);

        let mut buf = Vec::new();
        write_csv(&[record()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.contains("\"has,comma\""));
        assert_eq!(parse_csv(text.as_bytes()).unwrap(), vec![record()]);
    }
}
