//! Data files, sample files and JSON sidecars.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use condmc::gof::Dataset;
use condmc::SampleBatch;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Shortest form is not enough for the file contract; 17 significant
/// digits always round-trip.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_data(path: &Path) -> Result<Dataset> {
    Ok(Dataset::parse(&read_text(path)?)?)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

/// `<out>.meta.json` next to a sample file.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleFile {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

impl SampleFile {
    pub fn from_batch(batch: &SampleBatch) -> Self {
        SampleFile {
            n: batch.n(),
            rows: batch.rows().map(<[f64]>::to_vec).collect(),
        }
    }
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    if e.is_io_error() {
        if let csv::ErrorKind::Io(source) = e.into_kind() {
            return CliError::Write {
                path: path.to_path_buf(),
                source,
            };
        }
        unreachable!("checked by is_io_error");
    }
    CliError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

pub fn write_samples(path: &Path, samples: &SampleFile, format: Format) -> Result<()> {
    match format {
        Format::Json => write_json(path, samples),
        Format::Csv => {
            let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
            let header: Vec<String> = (1..=samples.n).map(|j| format!("x{j}")).collect();
            w.write_record(&header).map_err(|e| csv_error(path, e))?;
            for row in &samples.rows {
                w.write_record(row.iter().map(|&x| fmt17(x)))
                    .map_err(|e| csv_error(path, e))?;
            }
            w.flush().map_err(|source| CliError::Write {
                path: path.to_path_buf(),
                source,
            })
        }
    }
}

/// Read a sample file written by [`write_samples`], in either format.
pub fn read_samples(path: &Path) -> Result<SampleFile> {
    let text = read_text(path)?;
    let bad = |message: String| CliError::Format {
        path: path.to_path_buf(),
        message,
    };
    if text.trim_start().starts_with('{') {
        let s: SampleFile = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        if s.rows.iter().any(|r| r.len() != s.n) {
            return Err(bad(format!("every row must have {} values", s.n)));
        }
        return Ok(s);
    }
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let n = r.headers().map_err(|e| bad(e.to_string()))?.len();
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let row = rec
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| bad(format!("row {}: not a number: {s:?}", i + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(SampleFile { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn awkward_values() -> SampleFile {
        let vals = [
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI * 1e-300,
            f64::MIN_POSITIVE,
            -2.5e17,
            4.86 - 1e-15,
        ];
        SampleFile {
            n: 3,
            rows: vals.chunks(3).map(<[f64]>::to_vec).collect(),
        }
    }

    #[test]
    fn csv_round_trips_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        let s = awkward_values();
        write_samples(&p, &s, Format::Csv).unwrap();
        assert_eq!(read_samples(&p).unwrap(), s);
        assert!(read_text(&p).unwrap().starts_with("x1,x2,x3\n"));
    }

    #[test]
    fn json_round_trips_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.json");
        let s = awkward_values();
        write_samples(&p, &s, Format::Json).unwrap();
        assert_eq!(read_samples(&p).unwrap(), s);
    }

    #[test]
    fn ragged_csv_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.csv");
        write_text(&p, "x1,x2\n1,2\n3\n").unwrap();
        assert_eq!(read_samples(&p).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt17(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
