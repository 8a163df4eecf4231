//! Resolved experiment configuration, embedded in every output file.

use std::path::PathBuf;

use serde::Serialize;

use crate::corpus::CORPUS_SEED;
use crate::resolvent::Route;
use crate::verify::Suite;
use crate::weights::WeightSpec;

pub const DEFAULT_DEGREE: usize = 512;
pub const DEFAULT_N_MAX: usize = 256;
pub const DEFAULT_STEP: f64 = 0.25;
pub const DEFAULT_CLASSIFY_DEGREES: [usize; 3] = [128, 512, 2048];
pub const THREADS_ENV: &str = "CESARO_LAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Apply,
    Resolvent,
    Spectrum,
    Ergodic,
    Classify,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    /// Cesàro operator C
    Cesaro,
    /// Generalized operator C_t (needs --t in [0, 1])
    Ct,
    /// Hardy operator C_0
    Hardy,
    /// Inverse C^{-1}
    Inverse,
    /// Composition semigroup S_t (needs --t >= 0)
    St,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lambda {
    pub re: f64,
    pub im: f64,
}

/// Where the input function comes from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Named(String),
    File(PathBuf),
}

/// Everything needed to reproduce one run. Fields a command does not use
/// keep their defaults and are still recorded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub command: CommandKind,
    pub degree: usize,
    pub t: f64,
    pub lambda: Lambda,
    pub weight: WeightSpec,
    pub op: Option<Op>,
    pub route: Option<Route>,
    pub source: Option<Source>,
    pub n_max: usize,
    /// Spacing of the `λ` grid for `spectrum`.
    pub step: f64,
    /// Truncation degrees for `classify`.
    pub degrees: Vec<usize>,
    pub suite: Option<Suite>,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
    /// Upper bound on worker threads; does not affect results.
    #[serde(skip)]
    pub threads: usize,
}

impl ExperimentConfig {
    pub fn new(command: CommandKind) -> Self {
        ExperimentConfig {
            command,
            degree: DEFAULT_DEGREE,
            t: 1.0,
            lambda: Lambda { re: 0.0, im: 1.0 },
            weight: WeightSpec::LogPower(1),
            op: None,
            route: None,
            source: None,
            n_max: DEFAULT_N_MAX,
            step: DEFAULT_STEP,
            degrees: DEFAULT_CLASSIFY_DEGREES.to_vec(),
            suite: None,
            seed: CORPUS_SEED,
            output: None,
            format: Format::Csv,
            threads: 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

/// `CESARO_LAB_THREADS` if set, otherwise the available parallelism.
pub fn threads_from_env() -> Result<usize, String> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            )),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_json_is_stable() {
        let mut a = ExperimentConfig::new(CommandKind::Apply);
        let mut b = a.clone();
        b.threads = 7;
        assert_eq!(a.to_json(), b.to_json());
        a.op = Some(Op::Ct);
        let json = a.to_json();
        assert!(json.contains("\"command\":\"apply\""));
        assert!(json.contains("\"op\":\"ct\""));
        assert!(json.contains("\"seed\":24301"));
        assert!(json.contains("\"weight\":{\"kind\":\"LogPower\",\"order\":1}"));
    }
}
