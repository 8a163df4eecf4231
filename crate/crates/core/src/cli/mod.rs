//! The `cesaro-lab` command line: argument parsing, config resolution and
//! dispatch to the library.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid usage or
//! parameters, 3 I/O failure.

pub mod config;
pub mod io;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::corpus::NamedFunction;
use crate::ergodic::{
    iterate_trace, spectral_dichotomy_report, spectral_sweep, ErgodicTrace, SpectralReport,
};
use crate::operators::{
    cesaro_apply, cesaro_inverse_apply, generalized_cesaro_apply, hardy_apply, s_t_apply,
};
use crate::resolvent::{agreement_sample_points, ResolventRequest, Route};
use crate::series::Poly;
use crate::verify::{run_suites, CheckResult, Suite};
use crate::weights::{growth_classify, GrowthReport, WeightSpec};

pub use config::{CommandKind, ExperimentConfig, Format, Lambda, Op, Source};
pub use io::CliError;

/// Floor that `‖T_[2n] f - T_[n] f‖` stays above when the means of `C` fail to settle.
pub const MEAN_INCREMENT_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(
    name = "cesaro-lab",
    version,
    about = "Cesàro-type operators on truncated Taylor series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply an operator to a coefficient file or named function.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        /// Parameter of C_t or S_t.
        #[arg(long)]
        t: Option<f64>,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve (λ - C) f = h.
    Resolvent {
        #[arg(long, allow_hyphen_values = true)]
        lambda_re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        lambda_im: f64,
        #[arg(long, value_enum, default_value = "recurrence")]
        route: RouteArg,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Finite-section diagonals and resolvent norm growth over a λ grid.
    Spectrum {
        #[arg(long, default_value_t = 64)]
        degree: usize,
        /// Grid spacing over [-2, 2]²; 0.25 gives the full report.
        #[arg(long, default_value_t = config::DEFAULT_STEP)]
        step: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Iterates and Cesàro means of C_t.
    Ergodic {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = config::DEFAULT_N_MAX)]
        n_max: usize,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fit growth orders of a named function across truncation degrees.
    Classify {
        #[arg(long = "f", default_value = "log-inv")]
        function: String,
        /// Comma-separated, strictly increasing.
        #[arg(long, value_delimiter = ',', default_values_t = config::DEFAULT_CLASSIFY_DEGREES)]
        degrees: Vec<usize>,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = crate::corpus::CORPUS_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suite; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = config::DEFAULT_DEGREE)]
        degree: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum RouteArg {
    Recurrence,
    Integral,
    Semigroup,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Coefficient CSV (`n,re,im`); overrides --f and --degree.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Named function: const1, z, log-inv, log1p, g<k>, pow<gamma>, e<n>, random<i>.
    #[arg(long = "f", default_value = "const1")]
    function: String,
    #[arg(long, default_value_t = config::DEFAULT_DEGREE)]
    degree: usize,
    /// Seed for random<i>.
    #[arg(long, default_value_t = crate::corpus::CORPUS_SEED)]
    seed: u64,
}

#[derive(Debug, Args)]
struct WeightArgs {
    #[arg(long, value_enum, default_value = "log")]
    weight_kind: WeightKind,
    /// k for log weights, γ for standard weights.
    #[arg(long, default_value_t = 1.0)]
    weight_order: f64,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum WeightKind {
    Log,
    Standard,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl WeightArgs {
    fn resolve(&self) -> Result<WeightSpec, CliError> {
        match self.weight_kind {
            WeightKind::Log => {
                let k = self.weight_order;
                if k.fract() != 0.0 || !(1.0..=u32::MAX as f64).contains(&k) {
                    return Err(usage(format!(
                        "--weight-order for log weights must be a positive integer, got {k}"
                    )));
                }
                Ok(WeightSpec::log_power(k as u32)?)
            }
            WeightKind::Standard => Ok(WeightSpec::standard(self.weight_order)?),
        }
    }
}

fn apply_input(config: &mut ExperimentConfig, input: &InputArgs) -> Result<(), CliError> {
    config.seed = input.seed;
    match &input.input {
        Some(path) => {
            config.degree = io::read_coeff_csv(path)?.degree();
            config.source = Some(Source::File(path.clone()));
        }
        None => {
            input.function.parse::<NamedFunction>()?;
            config.source = Some(Source::Named(input.function.clone()));
            config.degree = input.degree;
        }
    }
    Ok(())
}

fn apply_output(config: &mut ExperimentConfig, output: &OutputArgs, default: Format) {
    config.output = output.output.clone();
    config.format = output.format.unwrap_or(default);
}

/// Turns parsed arguments into a validated config.
fn resolve(cli: Cli, threads: usize) -> Result<ExperimentConfig, CliError> {
    let mut config = match cli.command {
        Command::Apply {
            op,
            t,
            input,
            output,
        } => {
            let mut c = ExperimentConfig::new(CommandKind::Apply);
            c.op = Some(op);
            c.t = match (op, t) {
                (Op::Ct, Some(t)) if (0.0..=1.0).contains(&t) => t,
                (Op::Ct, Some(t)) => {
                    return Err(usage(format!("--t for C_t must lie in [0, 1], got {t}")))
                }
                (Op::St, Some(t)) if t >= 0.0 && t.is_finite() => t,
                (Op::St, Some(t)) => {
                    return Err(usage(format!(
                        "--t for S_t must be finite and >= 0, got {t}"
                    )))
                }
                (Op::Ct | Op::St, None) => return Err(usage("--op ct and --op st need --t")),
                (Op::Cesaro, _) => 1.0,
                (Op::Hardy, _) => 0.0,
                (Op::Inverse, _) => 1.0,
            };
            apply_input(&mut c, &input)?;
            apply_output(&mut c, &output, Format::Csv);
            c
        }
        Command::Resolvent {
            lambda_re,
            lambda_im,
            route,
            input,
            output,
        } => {
            let mut c = ExperimentConfig::new(CommandKind::Resolvent);
            if !(lambda_re.is_finite() && lambda_im.is_finite())
                || (lambda_re == 0.0 && lambda_im == 0.0)
            {
                return Err(usage(format!(
                    "lambda must be finite and nonzero, got {lambda_re}{lambda_im:+}i"
                )));
            }
            c.lambda = Lambda {
                re: lambda_re,
                im: lambda_im,
            };
            c.route = Some(match route {
                RouteArg::Recurrence => Route::Recurrence,
                RouteArg::Integral => Route::Integral,
                RouteArg::Semigroup => Route::Semigroup,
            });
            apply_input(&mut c, &input)?;
            apply_output(&mut c, &output, Format::Csv);
            c
        }
        Command::Spectrum {
            degree,
            step,
            output,
        } => {
            let mut c = ExperimentConfig::new(CommandKind::Spectrum);
            if degree < 64 {
                return Err(usage(format!("--degree must be at least 64, got {degree}")));
            }
            if !(step > 0.0 && step <= 4.0) {
                return Err(usage(format!("--step must lie in (0, 4], got {step}")));
            }
            c.degree = degree;
            c.step = step;
            apply_output(&mut c, &output, Format::Json);
            c
        }
        Command::Ergodic {
            t,
            n_max,
            weight,
            input,
            output,
        } => {
            let mut c = ExperimentConfig::new(CommandKind::Ergodic);
            if !(0.0..=1.0).contains(&t) {
                return Err(usage(format!("--t must lie in [0, 1], got {t}")));
            }
            if n_max < 8 {
                return Err(usage(format!("--n-max must be at least 8, got {n_max}")));
            }
            c.t = t;
            c.n_max = n_max;
            c.weight = weight.resolve()?;
            apply_input(&mut c, &input)?;
            apply_output(&mut c, &output, Format::Json);
            c
        }
        Command::Classify {
            function,
            degrees,
            weight,
            seed,
            output,
        } => {
            let mut c = ExperimentConfig::new(CommandKind::Classify);
            function.parse::<NamedFunction>()?;
            if degrees.len() < 3 || degrees.windows(2).any(|w| w[0] >= w[1]) {
                return Err(usage(
                    "--degrees needs at least three strictly increasing values",
                ));
            }
            c.source = Some(Source::Named(function));
            c.degree = *degrees.last().expect("nonempty");
            c.degrees = degrees;
            c.weight = weight.resolve()?;
            c.seed = seed;
            apply_output(&mut c, &output, Format::Json);
            c
        }
        Command::Verify {
            suite,
            degree,
            output,
        } => {
            let mut c = ExperimentConfig::new(CommandKind::Verify);
            c.suite = Some(suite.parse()?);
            if degree < 64 {
                return Err(usage(format!("--degree must be at least 64, got {degree}")));
            }
            c.degree = degree;
            apply_output(&mut c, &output, Format::Json);
            c
        }
    };
    config.threads = threads;
    Ok(config)
}

fn load_source(config: &ExperimentConfig) -> Result<Poly, CliError> {
    match &config.source {
        Some(Source::File(path)) => io::read_coeff_csv(path),
        Some(Source::Named(name)) => Ok(name
            .parse::<NamedFunction>()?
            .build_seeded(config.degree, config.seed)),
        None => Err(usage("no input function")),
    }
}

#[derive(Serialize)]
struct CoeffJson<'a> {
    config: &'a ExperimentConfig,
    n: Vec<usize>,
    re: Vec<f64>,
    im: Vec<f64>,
}

fn emit_coeffs(config: &ExperimentConfig, p: &Poly) -> Result<(), CliError> {
    let body = match config.format {
        Format::Csv => io::coeff_csv(&config.to_json(), p),
        Format::Json => io::json_bytes(&CoeffJson {
            config,
            n: (0..=p.degree()).collect(),
            re: p.coeffs().iter().map(|c| c.re).collect(),
            im: p.coeffs().iter().map(|c| c.im).collect(),
        }),
    };
    io::write_output(config.output.as_deref(), &body)
}

fn require_json(config: &ExperimentConfig) -> Result<(), CliError> {
    if config.format != Format::Json {
        return Err(usage(
            format!("{:?} output is JSON only", config.command).to_lowercase(),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct ErgodicJson<'a> {
    config: &'a ExperimentConfig,
    #[serde(flatten)]
    trace: &'a ErgodicTrace,
    diagnostics: ErgodicDiagnostics,
}

#[derive(Serialize)]
struct ErgodicDiagnostics {
    mean_increment_threshold: f64,
    min_mean_increment: f64,
    increments_stay_above_threshold: bool,
    note: &'static str,
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    config: &'a ExperimentConfig,
    #[serde(flatten)]
    report: &'a SpectralReport,
}

#[derive(Serialize)]
struct ClassifyJson<'a> {
    config: &'a ExperimentConfig,
    #[serde(flatten)]
    report: &'a GrowthReport,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    config: &'a ExperimentConfig,
    passed: usize,
    failed: usize,
    results: &'a [CheckResult],
}

/// Executes a resolved config and writes its artifact.
pub fn run(config: &ExperimentConfig) -> Result<(), CliError> {
    match config.command {
        CommandKind::Apply => {
            let f = load_source(config)?;
            let image = match config.op.expect("apply has an op") {
                Op::Cesaro => cesaro_apply(&f),
                Op::Ct => generalized_cesaro_apply(config.t, &f)?,
                Op::Hardy => hardy_apply(&f),
                Op::Inverse => cesaro_inverse_apply(&f),
                Op::St => s_t_apply(config.t, &f)?,
            };
            emit_coeffs(config, &image)
        }
        CommandKind::Resolvent => {
            let h = load_source(config)?;
            let lambda = Complex64::new(config.lambda.re, config.lambda.im);
            let request =
                ResolventRequest::new(lambda, h, config.route.expect("resolvent has a route"));
            if request.route == Route::Integral {
                if config.format != Format::Csv {
                    return Err(usage("the integral route writes point values as CSV only"));
                }
                let points = agreement_sample_points();
                let values = request.solve_points(&points)?;
                io::write_output(
                    config.output.as_deref(),
                    &io::values_csv(&config.to_json(), &points, &values),
                )
            } else {
                emit_coeffs(config, &request.solve_coefficients()?)
            }
        }
        CommandKind::Spectrum => {
            require_json(config)?;
            let mut report = spectral_dichotomy_report(config.degree)?;
            if config.step != config::DEFAULT_STEP {
                report.probes = spectral_sweep(
                    config.degree,
                    config.step,
                    &[Complex64::new(0.51, 0.0), Complex64::i()],
                )?;
            }
            io::write_output(
                config.output.as_deref(),
                &io::json_bytes(&SpectrumJson {
                    config,
                    report: &report,
                }),
            )
        }
        CommandKind::Ergodic => {
            require_json(config)?;
            let f = load_source(config)?;
            let trace = iterate_trace(config.t, &f, config.weight, config.n_max)?;
            let min = trace
                .mean_increments
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min);
            let body = ErgodicJson {
                config,
                trace: &trace,
                diagnostics: ErgodicDiagnostics {
                    mean_increment_threshold: MEAN_INCREMENT_THRESHOLD,
                    min_mean_increment: min,
                    increments_stay_above_threshold: min >= MEAN_INCREMENT_THRESHOLD,
                    note: "the increment threshold is a diagnostic convention, not a proven rate",
                },
            };
            io::write_output(config.output.as_deref(), &io::json_bytes(&body))
        }
        CommandKind::Classify => {
            require_json(config)?;
            let name = match &config.source {
                Some(Source::Named(name)) => name.parse::<NamedFunction>()?,
                _ => return Err(usage("classify needs a named function")),
            };
            let family: Vec<Poly> = config
                .degrees
                .iter()
                .map(|&n| name.build_seeded(n, config.seed))
                .collect();
            let report = growth_classify(&family, config.weight)?;
            io::write_output(
                config.output.as_deref(),
                &io::json_bytes(&ClassifyJson {
                    config,
                    report: &report,
                }),
            )
        }
        CommandKind::Verify => {
            let suite = config.suite.unwrap_or(Suite::All);
            let results = run_suites(suite, config.degree, config.threads)?;
            let failed = results.iter().filter(|r| !r.pass).count();
            for r in &results {
                eprintln!("{r}");
            }
            eprintln!("verify: {} passed, {failed} failed", results.len() - failed);
            if config.output.is_some() {
                require_json(config)?;
                let body = VerifyJson {
                    config,
                    passed: results.len() - failed,
                    failed,
                    results: &results,
                };
                io::write_output(config.output.as_deref(), &io::json_bytes(&body))?;
            }
            if failed > 0 {
                return Err(CliError::VerificationFailed {
                    failed,
                    total: results.len(),
                });
            }
            Ok(())
        }
    }
}

/// Parses `args` (program name first), runs, and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let threads = match config::threads_from_env() {
        Ok(n) => n,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let outcome = resolve(cli, threads).and_then(|config| run(&config));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
