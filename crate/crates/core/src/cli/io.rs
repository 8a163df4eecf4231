//! Coefficient CSV and JSON artifacts.
//!
//! Coefficient files look like
//!
//! ```text
//! # config: {...}
//! n,re,im
//! 0,1,0
//! 1,0.5,0
//! ```
//!
//! The leading `#` line is optional on input. Numbers are written in the
//! shortest form that parses back to the same `f64`.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::series::Poly;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lab(#[from] crate::LabError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{failed} of {total} checks failed")]
    VerificationFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed { .. } => 1,
            CliError::Usage(_) | CliError::Lab(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

const STDOUT: &str = "<stdout>";

/// Writes through a buffered file, or stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, body: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::io(p, e))?;
            let mut w = BufWriter::new(file);
            w.write_all(body)
                .and_then(|_| w.flush())
                .map_err(|e| CliError::io(p, e))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(Path::new(STDOUT), e))
        }
    }
}

fn config_line(config_json: &str) -> String {
    format!("# config: {config_json}\n")
}

/// Coefficient CSV with an embedded config line.
pub fn coeff_csv(config_json: &str, p: &Poly) -> Vec<u8> {
    let mut out = config_line(config_json).into_bytes();
    let mut w = csv::Writer::from_writer(&mut out);
    w.write_record(["n", "re", "im"]).expect("write to memory");
    for (n, c) in p.coeffs().iter().enumerate() {
        w.write_record([n.to_string(), c.re.to_string(), c.im.to_string()])
            .expect("write to memory");
    }
    w.flush().expect("write to memory");
    drop(w);
    out
}

/// Point-value CSV `z_re,z_im,re,im` with an embedded config line.
pub fn values_csv(config_json: &str, points: &[Complex64], values: &[Complex64]) -> Vec<u8> {
    let mut out = config_line(config_json).into_bytes();
    let mut w = csv::Writer::from_writer(&mut out);
    w.write_record(["z_re", "z_im", "re", "im"])
        .expect("write to memory");
    for (z, v) in points.iter().zip(values) {
        w.write_record([
            z.re.to_string(),
            z.im.to_string(),
            v.re.to_string(),
            v.im.to_string(),
        ])
        .expect("write to memory");
    }
    w.flush().expect("write to memory");
    drop(w);
    out
}

/// Pretty JSON followed by a newline.
pub fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("artifact serializes");
    out.push(b'\n');
    out
}

/// Parses a coefficient CSV; rows must be numbered `0, 1, 2, ...`.
pub fn parse_coeff_csv(source: impl Read, name: &str) -> Result<Poly, CliError> {
    let bad = |msg: String| CliError::Usage(format!("{name}: {msg}"));
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["n", "re", "im"] {
        return Err(bad(format!(
            "expected header `n,re,im`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut coeffs = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let line = row + 2;
        let field = |i: usize| record.get(i).unwrap_or("");
        let n: usize = field(0)
            .parse()
            .map_err(|_| bad(format!("line {line}: bad index `{}`", field(0))))?;
        if n != row {
            return Err(bad(format!("line {line}: expected index {row}, found {n}")));
        }
        let num = |i: usize| -> Result<f64, CliError> {
            field(i)
                .parse()
                .map_err(|_| bad(format!("line {line}: bad number `{}`", field(i))))
        };
        coeffs.push(Complex64::new(num(1)?, num(2)?));
    }
    if coeffs.is_empty() {
        return Err(bad("no coefficient rows".into()));
    }
    Ok(Poly::new(coeffs)?)
}

pub fn read_coeff_csv(path: &Path) -> Result<Poly, CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    parse_coeff_csv(file, &path.display().to_string())
}
