//! The invariant suite behind `cesaro-lab verify`.

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{
    cesaro_eigenfunction, full_corpus, random_polys, CorpusEntry, NamedFunction, CORPUS_SEED,
};
use crate::ergodic::{
    cesaro_means, eigenpair_cesaro, eigenvector_ct, iterate_trace, spectral_sweep,
};
use crate::error::{LabError, Result};
use crate::operators::{
    cesaro_apply, cesaro_inverse_apply, finite_section, generalized_cesaro_apply,
    log_power_identity_check, s_t_apply,
};
use crate::resolvent::{
    agreement_sample_points, resolvent_bound_check, resolvent_recurrence, resolvent_semigroup,
    IntegralRule, ResolventIntegral, SemigroupRule,
};
use crate::series::{binomial_series, cauchy_product, compose, mobius_coeffs, Poly};
use crate::weights::{default_grid, default_samples, growth_classify, ModulusProfile, WeightSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Series,
    Weights,
    Operators,
    Resolvent,
    Ergodic,
    All,
}

impl Suite {
    pub const MODULES: [Suite; 5] = [
        Suite::Series,
        Suite::Weights,
        Suite::Operators,
        Suite::Resolvent,
        Suite::Ergodic,
    ];

    /// The module suites this selection expands to.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::MODULES.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Series => "series",
            Suite::Weights => "weights",
            Suite::Operators => "operators",
            Suite::Resolvent => "resolvent",
            Suite::Ergodic => "ergodic",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

impl FromStr for Suite {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "series" => Suite::Series,
            "weights" => Suite::Weights,
            "operators" => Suite::Operators,
            "resolvent" => Suite::Resolvent,
            "ergodic" => Suite::Ergodic,
            "all" => Suite::All,
            _ => {
                return Err(LabError::param(
                    "suite",
                    format!("unknown suite `{s}` (expected series, weights, operators, resolvent, ergodic or all)"),
                ))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}/{}: measured {:.3e}, threshold {:.3e}",
            self.suite, self.name, self.measured, self.threshold
        )?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

fn at_most(
    suite: Suite,
    name: &str,
    measured: f64,
    threshold: f64,
    detail: impl Into<String>,
) -> CheckResult {
    CheckResult {
        suite,
        name: name.to_string(),
        pass: measured <= threshold,
        measured,
        threshold,
        detail: detail.into(),
    }
}

fn at_least(
    suite: Suite,
    name: &str,
    measured: f64,
    threshold: f64,
    detail: impl Into<String>,
) -> CheckResult {
    CheckResult {
        pass: measured >= threshold,
        ..at_most(suite, name, measured, threshold, detail)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const MIN_DEGREE: usize = 64;
/// Norm-inequality checks run at `min(N, 256)`; the inequalities do not
/// depend on the degree and the corpus is the expensive axis.
const INEQUALITY_DEGREE: usize = 256;
const SLACK: f64 = 1.0 + 1e-6;

/// Runs one suite (or all of them) at truncation degree `degree`.
pub fn run_suite(suite: Suite, degree: usize) -> Result<Vec<CheckResult>> {
    run_suites(suite, degree, 1)
}

/// Like [`run_suite`], spreading module suites over up to `threads`
/// threads. Results come back in suite order regardless.
pub fn run_suites(suite: Suite, degree: usize, threads: usize) -> Result<Vec<CheckResult>> {
    if degree < MIN_DEGREE {
        return Err(LabError::param(
            "degree",
            format!("verification needs degree >= {MIN_DEGREE}, got {degree}"),
        ));
    }
    let suites = suite.expand();
    let threads = threads.clamp(1, suites.len());
    let mut results: Vec<Result<Vec<CheckResult>>> = Vec::with_capacity(suites.len());
    for chunk in suites.chunks(threads) {
        let chunk_results: Vec<_> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|&s| scope.spawn(move || run_module(s, degree)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("suite thread panicked"))
                .collect()
        });
        results.extend(chunk_results);
    }
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn run_module(suite: Suite, degree: usize) -> Result<Vec<CheckResult>> {
    match suite {
        Suite::Series => series_suite(degree),
        Suite::Weights => weights_suite(degree),
        Suite::Operators => operators_suite(degree),
        Suite::Resolvent => resolvent_suite(degree),
        Suite::Ergodic => ergodic_suite(degree),
        Suite::All => unreachable!("expanded before dispatch"),
    }
}

fn series_suite(degree: usize) -> Result<Vec<CheckResult>> {
    let s = Suite::Series;
    let polys = random_polys(CORPUS_SEED, 6, degree);
    let mut out = Vec::new();

    let mut commute: f64 = 0.0;
    let mut assoc: f64 = 0.0;
    for w in polys.windows(3) {
        commute =
            commute.max((&cauchy_product(&w[0], &w[1]) - &cauchy_product(&w[1], &w[0])).max_abs());
        let left = w[0]
            .mul_truncated(&w[1], degree)
            .mul_truncated(&w[2], degree);
        let right = w[0].mul_truncated(&w[1].mul_truncated(&w[2], degree), degree);
        assoc = assoc.max((&left - &right).max_abs() / left.max_abs().max(1.0));
    }
    out.push(at_most(s, "product-commutes", commute, 1e-12, ""));
    out.push(at_most(
        s,
        "product-associates",
        assoc,
        1e-12,
        "relative to the product size",
    ));

    let z = c(0.3, -0.4);
    let linear = polys
        .windows(2)
        .map(|w| ((&w[0] + &w[1]).eval(z) - w[0].eval(z) - w[1].eval(z)).norm())
        .fold(0.0, f64::max);
    out.push(at_most(s, "horner-linear", linear, 1e-12, "z = 0.3-0.4i"));

    let geometric = binomial_series(c(-1.0, 0.0), degree);
    let err = (geometric.eval(c(0.5, 0.0)) - 2.0).norm();
    out.push(at_most(
        s,
        "geometric-at-half",
        err,
        1e-12,
        "1/(1-z) at z = 1/2",
    ));

    let root = binomial_series(c(0.5, 0.0), degree);
    let square = root.mul_truncated(&root, degree);
    let target = Poly::from_real(&[1.0, -1.0])?.truncate(degree);
    out.push(at_most(
        s,
        "sqrt-squares",
        (&square - &target).max_abs(),
        1e-12,
        "(1-z)^{1/2} squared",
    ));

    // 1/(1 - φ_t) = (1 - b z)/(1 - z): coefficients 1, a, a, ...
    let mut worst: f64 = 0.0;
    for &t in &[0.1, 1.0, 3.0] {
        let phi = mobius_coeffs(t, degree)?;
        let composed = compose(&geometric, &phi)?;
        let a = (-t).exp();
        for n in 0..=degree {
            let expected = if n == 0 { 1.0 } else { a };
            worst = worst.max((composed.coeff(n) - expected).norm());
        }
    }
    out.push(at_most(
        s,
        "compose-mobius",
        worst,
        1e-12,
        "1/(1-phi_t), t in {0.1, 1, 3}",
    ));
    Ok(out)
}

fn weights_suite(degree: usize) -> Result<Vec<CheckResult>> {
    let s = Suite::Weights;
    let n = degree.min(INEQUALITY_DEGREE);
    let grid = default_grid(n);
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for entry in full_corpus(n) {
        let profile = ModulusProfile::new(&entry.poly, &grid, default_samples(n))?;
        for k in 1..=3 {
            let hi = profile.weighted_norm(WeightSpec::LogPower(k + 1)).value;
            let lo = profile.weighted_norm(WeightSpec::LogPower(k)).value;
            worst = worst.max(hi / lo);
        }
    }
    out.push(at_most(
        s,
        "log-weights-decrease",
        worst,
        1.0,
        "max ||f||_{v_k+1} / ||f||_{v_k}",
    ));

    let geometric = binomial_series(c(-1.0, 0.0), degree);
    let m = crate::weights::max_modulus(&geometric, 0.5, default_samples(degree))?;
    out.push(at_most(
        s,
        "max-modulus-geometric",
        (m - 2.0).abs(),
        1e-12,
        "M(1/(1-z), 1/2) = 2",
    ));

    let degrees = [128, 512, 2048];
    let family = |f: NamedFunction| degrees.iter().map(|&n| f.build(n)).collect::<Vec<_>>();
    let log = growth_classify(&family(NamedFunction::LogInv), WeightSpec::LogPower(1))?;
    out.push(at_most(
        s,
        "log-order-of-log",
        (log.log_order - 1.0).abs(),
        0.2,
        format!("k = {:.3}", log.log_order),
    ));
    let e2 = growth_classify(&family(NamedFunction::Eigen(2)), WeightSpec::LogPower(1))?;
    out.push(at_most(
        s,
        "standard-order-of-e2",
        (e2.standard_order - 2.0).abs(),
        0.1,
        format!("gamma = {:.3}", e2.standard_order),
    ));
    out.push(at_least(
        s,
        "e2-diverges",
        e2.divergence_flag as u8 as f64,
        1.0,
        "divergence flag",
    ));
    Ok(out)
}

/// Norm inequalities (a)-(d) over the corpus, returning `(label, violations, checks)`.
fn norm_inequalities(
    corpus: &[CorpusEntry],
    grid: &[f64],
) -> Result<Vec<(&'static str, usize, usize)>> {
    let knee = 1.0 / (1.0 - 1.0 / E);
    let mut tallies = [
        ("continuity", 0, 0),
        ("log-shift", 0, 0),
        ("ct-bound", 0, 0),
        ("st-contraction", 0, 0),
    ];
    for entry in corpus {
        let f = &entry.poly;
        let samples = default_samples(f.degree());
        let pf = ModulusProfile::new(f, grid, samples)?;
        let pcf = ModulusProfile::new(&cesaro_apply(f), grid, samples)?;
        for (j, &r) in grid.iter().enumerate() {
            let factor = if r == 0.0 {
                1.0
            } else {
                (1.0 / (1.0 - r)).ln() / r
            };
            tallies[0].2 += 1;
            if pcf.maxima[j] > pf.maxima[j] * factor * SLACK + 1e-9 {
                tallies[0].1 += 1;
            }
        }
        for k in 1..=3 {
            tallies[1].2 += 1;
            if pcf.weighted_norm(WeightSpec::LogPower(k + 1)).value
                > knee * pf.weighted_norm(WeightSpec::LogPower(k)).value * SLACK
            {
                tallies[1].1 += 1;
            }
        }
        let w1 = pf.weighted_norm(WeightSpec::Standard(1.0)).value;
        let unit = f.scale(c(1.0 / w1, 0.0));
        for &t in &[0.0, 0.5, 0.9] {
            tallies[2].2 += 1;
            let image = ModulusProfile::new(&generalized_cesaro_apply(t, &unit)?, grid, samples)?;
            if image.weighted_norm(WeightSpec::LogPower(1)).value > knee / (1.0 - t) * SLACK {
                tallies[2].1 += 1;
            }
        }
        for &t in &[0.1, 1.0, 5.0] {
            let image = ModulusProfile::new(&s_t_apply(t, f)?, grid, samples)?;
            for k in 1..=3 {
                tallies[3].2 += 1;
                let w = WeightSpec::LogPower(k);
                if image.weighted_norm(w).value > pf.weighted_norm(w).value * SLACK {
                    tallies[3].1 += 1;
                }
            }
        }
    }
    Ok(tallies.to_vec())
}

fn operators_suite(degree: usize) -> Result<Vec<CheckResult>> {
    let s = Suite::Operators;
    let mut out = Vec::new();

    let worst = (1..=8)
        .map(|n| eigenpair_cesaro(n, degree).map(|p| p.residual()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    out.push(at_most(
        s,
        "cesaro-eigen-residual",
        worst,
        1e-12,
        "e_n, n <= 8",
    ));

    let mut worst: f64 = 0.0;
    for &t in &[0.0, 0.3, 0.5, 0.9] {
        for m in 0..=5 {
            worst = worst.max(eigenvector_ct(t, m, degree)?.residual());
        }
    }
    out.push(at_most(s, "ct-eigen-residual", worst, 1e-12, "g_m, m <= 5"));

    let worst = random_polys(CORPUS_SEED, 50, degree)
        .iter()
        .map(|f| (&cesaro_inverse_apply(&cesaro_apply(f)) - f).max_abs())
        .fold(0.0, f64::max);
    out.push(at_most(
        s,
        "inverse-identity",
        worst,
        1e-12,
        "C^{-1} C f = f",
    ));

    let worst = (1..=4)
        .map(|k| log_power_identity_check(k, degree.min(256)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    out.push(at_most(s, "log-power-identity", worst, 1e-10, "k <= 4"));

    let mut worst: f64 = 0.0;
    let mut triangular = true;
    for &t in &[0.0, 0.5, 1.0] {
        let section = finite_section(t, degree)?;
        triangular &= section.is_lower_triangular();
        for (n, mu) in section.eigenvalues().iter().enumerate() {
            worst = worst.max((mu - 1.0 / (n as f64 + 1.0)).abs());
        }
    }
    out.push(at_most(
        s,
        "section-diagonal",
        worst,
        1e-14,
        "eigenvalues 1/(n+1)",
    ));
    out.push(at_least(
        s,
        "section-triangular",
        triangular as u8 as f64,
        1.0,
        "",
    ));

    let f = random_polys(CORPUS_SEED + 1, 1, degree)
        .pop()
        .expect("one polynomial");
    let once = s_t_apply(1.5, &f)?;
    let twice = s_t_apply(1.0, &s_t_apply(0.5, &f)?)?;
    out.push(at_most(
        s,
        "semigroup-law",
        (&once - &twice).max_abs(),
        1e-12,
        "S_1 S_0.5 = S_1.5",
    ));

    let n = degree.min(INEQUALITY_DEGREE);
    for (label, violations, checks) in norm_inequalities(&full_corpus(n), &default_grid(n))? {
        out.push(at_most(
            s,
            label,
            violations as f64,
            0.0,
            format!("violations out of {checks}"),
        ));
    }
    Ok(out)
}

fn resolvent_suite(degree: usize) -> Result<Vec<CheckResult>> {
    let s = Suite::Resolvent;
    let mut out = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut worst: f64 = 0.0;
    for h in random_polys(CORPUS_SEED + 2, 20, degree) {
        let lambda = loop {
            let l = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let clear = (0..=degree).all(|n| (l - 1.0 / (n as f64 + 1.0)).norm() >= 0.05);
            if l.norm() >= 0.25 && clear {
                break l;
            }
        };
        let f = resolvent_recurrence(lambda, &h)?;
        let back = &(&f * lambda) - &cesaro_apply(&f);
        worst = worst.max((&back - &h).max_abs() / (lambda.norm() * f.max_abs()).max(1.0));
    }
    out.push(at_most(
        s,
        "defining-identity",
        worst,
        1e-12,
        "20 random pairs",
    ));

    // The integral route is exact for polynomial h; the recurrence is
    // padded far enough that its truncation tail is invisible on |z| <= 0.8.
    let points = agreement_sample_points();
    let mut worst: f64 = 0.0;
    for lambda in [c(0.0, 1.0), c(0.0, 2.0), c(-1.0, 1.0), c(3.0, 0.0)] {
        for entry in full_corpus(64) {
            let integral = ResolventIntegral::new(lambda, &entry.poly, IntegralRule::default())?;
            let series = resolvent_recurrence(lambda, &entry.poly.truncate(2048))?;
            for &z in &points {
                let exact = series.eval(z);
                worst = worst.max((integral.eval(z)? - exact).norm() / exact.norm().max(1.0));
            }
        }
    }
    out.push(at_most(
        s,
        "integral-vs-recurrence",
        worst,
        1e-8,
        "100 points, lambda in {i, 2i, -1+i, 3}",
    ));

    let n = degree.min(128);
    let mut worst: f64 = 0.0;
    for lambda in [c(-1.0, 0.0), c(-0.5, 0.3), c(-2.0, 0.0)] {
        let rule = SemigroupRule::for_lambda(lambda, 1e-12)?;
        for entry in full_corpus(n) {
            let exact = resolvent_recurrence(lambda, &entry.poly)?;
            let approx = resolvent_semigroup(lambda, &entry.poly, rule)?;
            worst = worst.max((&approx - &exact).max_abs() / exact.max_abs().max(1.0));
        }
    }
    out.push(at_most(
        s,
        "semigroup-vs-recurrence",
        worst,
        1e-6,
        "lambda in {-1, -0.5+0.3i, -2}",
    ));

    let mut violations = 0;
    let mut checks = 0;
    for entry in full_corpus(degree.min(INEQUALITY_DEGREE)) {
        for &b in &[-8.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 8.0] {
            checks += 1;
            if !resolvent_bound_check(b, &entry.poly, 1)?.pass {
                violations += 1;
            }
        }
    }
    out.push(at_most(
        s,
        "imaginary-axis-bound",
        violations as f64,
        0.0,
        format!("violations out of {checks}"),
    ));
    Ok(out)
}

fn ergodic_suite(degree: usize) -> Result<Vec<CheckResult>> {
    let s = Suite::Ergodic;
    let mut out = Vec::new();

    // ℓ¹ membership of g_m: partial sums approach Σ C(n,m) t^{n-m} = (1-t)^{-(m+1)}
    // once the degree is past the bulk of the tail.
    let mut worst: f64 = 0.0;
    let mut shrinking = true;
    for &t in &[0.3, 0.5, 0.9] {
        for m in 0..=5 {
            let sums: Vec<f64> = [256, 512, 1024, 4096]
                .iter()
                .map(|&n| eigenvector_ct(t, m, n).map(|p| p.l1_partial_sum()))
                .collect::<Result<_>>()?;
            let limit = (1.0 - t).powi(-(m as i32 + 1));
            worst = worst.max((sums[3] - limit).abs() / limit);
            shrinking &= sums[2] - sums[1] <= sums[1] - sums[0];
        }
    }
    out.push(at_most(
        s,
        "ct-eigen-l1",
        worst,
        1e-10,
        "relative gap to (1-t)^{-(m+1)} at degree 4096",
    ));
    out.push(at_least(
        s,
        "ct-eigen-l1-cauchy",
        shrinking as u8 as f64,
        1.0,
        "increments shrink across doublings",
    ));

    let one = Poly::constant(c(1.0, 0.0), degree);
    let v1 = WeightSpec::LogPower(1);
    let trace = iterate_trace(0.5, &one, v1, 256)?;
    let errors = &trace.projection_errors;
    out.push(at_most(
        s,
        "projection-decay",
        errors[255] / errors[0],
        1e-2,
        "t = 0.5: error(256)/error(1)",
    ));
    let scaled: Vec<f64> = (32..=256).map(|n| n as f64 * errors[n - 1]).collect();
    let spread = scaled.iter().cloned().fold(0.0, f64::max) / scaled[0];
    out.push(at_most(
        s,
        "projection-rate",
        spread,
        10.0,
        "t = 0.5: max n*error(n) over n*error at 32",
    ));
    let early = trace.iterate_norms[..8].iter().cloned().fold(0.0, f64::max);
    let all = trace.iterate_norms.iter().cloned().fold(0.0, f64::max);
    out.push(at_most(
        s,
        "power-bounded",
        all / early,
        2.0,
        "t = 0.5: max iterate norm over first 8",
    ));

    let trace = iterate_trace(1.0, &one, v1, 256)?;
    let floor = trace
        .mean_increments
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    out.push(at_least(
        s,
        "means-do-not-settle",
        floor,
        1e-3,
        "t = 1: diagnostic threshold, not a proven rate",
    ));

    let mut constant = true;
    let mut recombination: f64 = 0.0;
    let f = random_polys(CORPUS_SEED + 3, 1, degree.min(128))
        .pop()
        .expect("one polynomial");
    for &t in &[0.0, 0.5, 1.0] {
        let steps: Vec<_> = cesaro_means(t, &f)?.take(64).collect();
        constant &= steps.iter().all(|st| st.iterate.coeff(0) == f.coeff(0));
        for pair in steps.windows(2) {
            let n = pair[1].n as f64;
            let lhs = pair[1].iterate.scale(c(1.0 / n, 0.0));
            let rhs = &pair[1].mean - &pair[0].mean.scale(c((n - 1.0) / n, 0.0));
            recombination =
                recombination.max((&lhs - &rhs).max_abs() / pair[1].mean.max_abs().max(1.0));
        }
    }
    constant &= cesaro_means(1.0, &one)?
        .take(256)
        .all(|st| st.mean.coeff(0) == c(1.0, 0.0));
    out.push(at_least(
        s,
        "constant-term-conserved",
        constant as u8 as f64,
        1.0,
        "exact",
    ));
    out.push(at_most(s, "mean-recombination", recombination, 1e-12, ""));

    let probes = spectral_sweep(64, 4.0, &[c(-1.0, 0.0), c(0.51, 0.0)])?;
    let ratio = |re: f64| {
        probes
            .iter()
            .find(|p| p.re == re && p.im == 0.0)
            .map(|p| p.growth_ratio)
            .unwrap_or(f64::NAN)
    };
    out.push(at_most(
        s,
        "left-half-plane-stable",
        ratio(-1.0),
        1.05,
        "lambda = -1, N in {64, 256, 1024}",
    ));
    out.push(at_least(
        s,
        "right-half-plane-grows",
        ratio(0.51),
        2.0,
        "lambda = 0.51",
    ));

    // e_1 = 1/(1-z) grows only like (1-r)^{-1}/log(1/(1-r)) under v_1, which
    // needs the wider span 64..4096 to clear the 10x flag threshold.
    let mut flags = 0;
    for n in 1..=4 {
        let family: Vec<Poly> = [64, 512, 4096]
            .iter()
            .map(|&d| cesaro_eigenfunction(n, d))
            .collect();
        flags += growth_classify(&family, v1)?.divergence_flag as usize;
    }
    out.push(at_least(
        s,
        "cesaro-eigenvectors-diverge",
        flags as f64,
        4.0,
        "e_1..e_4 flagged, degrees 64/512/4096",
    ));
    Ok(out)
}
