//! Acceptance criteria 1-10, one line each. Runs under `cargo test`
//! with its own harness so the lines are printed even when everything
//! passes.

use std::f64::consts::E;
use std::process::ExitCode;
use std::time::Instant;

use cesaro_lab::corpus::{full_corpus, random_corpus, random_polys, NamedFunction};
use cesaro_lab::ergodic::{cesaro_means, eigenpair_cesaro, eigenvector_ct, iterate_trace};
use cesaro_lab::operators::{
    cesaro_apply, cesaro_inverse_apply, finite_section, generalized_cesaro_apply,
    log_power_identity_check, s_t_apply,
};
use cesaro_lab::resolvent::{
    agreement_sample_points, resolvent_bound_check, resolvent_recurrence, resolvent_semigroup,
    IntegralRule, ResolventIntegral, SemigroupRule,
};
use cesaro_lab::weights::{default_grid, default_samples, growth_classify, ModulusProfile};
use cesaro_lab::{Complex64, Poly, WeightSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const KNEE_INV: f64 = 1.0 / (1.0 - 1.0 / E);

fn criterion_1() -> Outcome {
    let worst = (1..=8)
        .map(|n| eigenpair_cesaro(n, 512).unwrap().residual())
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-12,
        format!("max residual {worst:.2e} (tol 1e-12)"),
    )
}

fn criterion_2() -> Outcome {
    let mut worst_residual: f64 = 0.0;
    let mut worst_increment: f64 = 0.0;
    let mut violations = Vec::new();
    for &t in &[0.0, 0.3, 0.9] {
        for m in 0..=5 {
            let big = eigenvector_ct(t, m, 512).unwrap();
            let small = eigenvector_ct(t, m, 256).unwrap();
            worst_residual = worst_residual.max(big.residual());
            let increment = big.l1_partial_sum() - small.l1_partial_sum();
            worst_increment = worst_increment.max(increment);
            if increment > 1e-8 {
                violations.push(format!("t={t} m={m}: {increment:.1e}"));
            }
        }
    }
    let pass = worst_residual <= 1e-12 && violations.is_empty();
    let mut detail = format!(
        "max residual {worst_residual:.2e} (tol 1e-12); max l1 increment 256->512 {worst_increment:.2e} (tol 1e-8)"
    );
    if !violations.is_empty() {
        detail.push_str(&format!("; over tolerance: {}", violations.join(", ")));
    }
    outcome(pass, detail)
}

fn criterion_3() -> Outcome {
    let worst = random_corpus(512)
        .iter()
        .map(|f| (&cesaro_inverse_apply(&cesaro_apply(f)) - f).max_abs())
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-12,
        format!("max coefficient error {worst:.2e} (tol 1e-12)"),
    )
}

fn criterion_4() -> Outcome {
    let worst = (1..=4)
        .map(|k| log_power_identity_check(k, 256).unwrap())
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-10,
        format!("max discrepancy {worst:.2e} (tol 1e-10)"),
    )
}

fn criterion_5() -> Outcome {
    const ORACLE_DEGREE: usize = 2048;
    let points = agreement_sample_points();
    let corpus = full_corpus(64);
    let mut worst_integral: f64 = 0.0;
    for lambda in [c(0.0, 1.0), c(0.0, 2.0), c(-1.0, 1.0), c(3.0, 0.0)] {
        for entry in &corpus {
            let integral =
                ResolventIntegral::new(lambda, &entry.poly, IntegralRule::default()).unwrap();
            let series = resolvent_recurrence(lambda, &entry.poly.truncate(ORACLE_DEGREE)).unwrap();
            for &z in &points {
                let exact = series.eval(z);
                let err = (integral.eval(z).unwrap() - exact).norm() / exact.norm().max(1.0);
                worst_integral = worst_integral.max(err);
            }
        }
    }
    let corpus = full_corpus(128);
    let mut worst_semigroup: f64 = 0.0;
    for lambda in [c(-1.0, 0.0), c(-0.5, 0.3), c(-2.0, 0.0)] {
        let rule = SemigroupRule::for_lambda(lambda, 1e-12).unwrap();
        for entry in &corpus {
            let exact = resolvent_recurrence(lambda, &entry.poly).unwrap();
            let approx = resolvent_semigroup(lambda, &entry.poly, rule).unwrap();
            let err = (&approx - &exact).max_abs() / exact.max_abs().max(1.0);
            worst_semigroup = worst_semigroup.max(err);
        }
    }
    outcome(
        worst_integral <= 1e-8 && worst_semigroup <= 1e-6,
        format!(
            "integral vs recurrence {worst_integral:.2e} (tol 1e-8), semigroup vs recurrence {worst_semigroup:.2e} (tol 1e-6)"
        ),
    )
}

fn near_diagonal(lambda: Complex64, degree: usize) -> bool {
    (0..=degree).any(|n| (lambda - 1.0 / (n as f64 + 1.0)).norm() < 0.05)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED + 6);
    let hs = random_polys(0x5EED + 7, 20, 128);
    let mut worst: f64 = 0.0;
    for h in &hs {
        let lambda = loop {
            let l = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if l.norm() >= 0.25 && !near_diagonal(l, 128) {
                break l;
            }
        };
        let f = resolvent_recurrence(lambda, h).unwrap();
        let back = &(&f * lambda) - &cesaro_apply(&f);
        let scale = (lambda.norm() * f.max_abs()).max(1.0);
        worst = worst.max((&back - h).max_abs() / scale);
    }
    outcome(
        worst <= 1e-12,
        format!("max relative residual {worst:.2e} over 20 pairs (tol 1e-12)"),
    )
}

fn profile(p: &Poly, grid: &[f64]) -> ModulusProfile {
    ModulusProfile::new(p, grid, default_samples(p.degree())).unwrap()
}

fn criterion_7() -> Outcome {
    const DEGREE: usize = 256;
    const SLACK: f64 = 1.0 + 1e-6;
    let grid = default_grid(DEGREE);
    let corpus = full_corpus(DEGREE);
    let mut failures = Vec::new();
    let mut checks = 0usize;

    let v = |k| WeightSpec::LogPower(k);
    for entry in &corpus {
        let f = &entry.poly;
        let pf = profile(f, &grid);
        let cf = cesaro_apply(f);
        let pcf = profile(&cf, &grid);

        // (a)
        for (j, &r) in grid.iter().enumerate() {
            let factor = if r == 0.0 {
                1.0
            } else {
                (1.0 / (1.0 - r)).ln() / r
            };
            checks += 1;
            if pcf.maxima[j] > pf.maxima[j] * factor * SLACK + 1e-9 {
                failures.push(format!("(a) {} r={r}", entry.name));
            }
        }
        // (b)
        for k in 1..=3 {
            checks += 1;
            let lhs = pcf.weighted_norm(v(k + 1)).value;
            let rhs = KNEE_INV * pf.weighted_norm(v(k)).value;
            if lhs > rhs * SLACK {
                failures.push(format!("(b) {} k={k}: {lhs:.6e} > {rhs:.6e}", entry.name));
            }
        }
        // (c)
        let w1 = pf.weighted_norm(WeightSpec::Standard(1.0)).value;
        let unit = f.scale(c(1.0 / w1, 0.0));
        for &t in &[0.0, 0.5, 0.9] {
            checks += 1;
            let lhs = profile(&generalized_cesaro_apply(t, &unit).unwrap(), &grid)
                .weighted_norm(v(1))
                .value;
            let rhs = KNEE_INV / (1.0 - t);
            if lhs > rhs * SLACK {
                failures.push(format!("(c) {} t={t}: {lhs:.6e} > {rhs:.6e}", entry.name));
            }
        }
        // (d)
        for &t in &[0.1, 1.0, 5.0] {
            let pst = profile(&s_t_apply(t, f).unwrap(), &grid);
            for k in 1..=3 {
                checks += 1;
                let lhs = pst.weighted_norm(v(k)).value;
                let rhs = pf.weighted_norm(v(k)).value;
                if lhs > rhs * SLACK {
                    failures.push(format!(
                        "(d) {} t={t} k={k}: {lhs:.6e} > {rhs:.6e}",
                        entry.name
                    ));
                }
            }
        }
        // (e)
        for &b in &[-8.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 8.0] {
            checks += 1;
            let check = resolvent_bound_check(b, f, 1).unwrap();
            if !check.pass {
                failures.push(format!(
                    "(e) {} b={b}: {:.6e} > {:.6e}",
                    entry.name, check.lhs, check.rhs
                ));
            }
        }
    }
    let mut detail = format!("{} violations in {checks} checks", failures.len());
    if !failures.is_empty() {
        detail.push_str(&format!(
            ": {}",
            failures
                .iter()
                .take(5)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ")
        ));
    }
    outcome(failures.is_empty(), detail)
}

fn criterion_8() -> Outcome {
    let one = Poly::constant(c(1.0, 0.0), 512);
    let v1 = WeightSpec::LogPower(1);

    let trace = iterate_trace(0.5, &one, v1, 256).unwrap();
    let errors = &trace.projection_errors;
    let ratio = errors[255] / errors[0];
    let scaled: Vec<f64> = (32..=256).map(|n| n as f64 * errors[n - 1]).collect();
    let scaled_max = scaled.iter().cloned().fold(0.0, f64::max);
    let spread = scaled_max / scaled[0];

    let trace = iterate_trace(1.0, &one, v1, 256).unwrap();
    let min_increment = trace
        .mean_increments
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let constant_exact = cesaro_means(1.0, &one)
        .unwrap()
        .take(256)
        .all(|step| step.mean.coeff(0) == c(1.0, 0.0));

    outcome(
        ratio <= 0.01 && spread <= 10.0 && min_increment >= 1e-3 && constant_exact,
        format!(
            "t=0.5: error(256)/error(1) {ratio:.2e} (tol 1e-2), max n*error / 32*error(32) {spread:.2} (tol 10); \
             t=1: min mean increment {min_increment:.2e} (floor 1e-3), constant term exactly 1: {constant_exact}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let degrees = [128, 512, 2048];
    let family = |f: NamedFunction| degrees.iter().map(|&n| f.build(n)).collect::<Vec<_>>();
    let log = growth_classify(&family(NamedFunction::LogInv), WeightSpec::LogPower(1)).unwrap();
    let eigen = growth_classify(&family(NamedFunction::Eigen(2)), WeightSpec::LogPower(1)).unwrap();
    let pass = (0.8..=1.2).contains(&log.log_order)
        && (1.9..=2.1).contains(&eigen.standard_order)
        && eigen.divergence_flag;
    outcome(
        pass,
        format!(
            "log(1/(1-z)): k = {:.3} (want [0.8, 1.2]); e2: gamma = {:.3} (want [1.9, 2.1]), divergence flag {}",
            log.log_order, eigen.standard_order, eigen.divergence_flag
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut triangular = true;
    for &t in &[0.0, 0.3, 0.5, 0.9, 1.0] {
        let section = finite_section(t, 512).unwrap();
        triangular &= section.is_lower_triangular();
        for (n, mu) in section.eigenvalues().iter().enumerate() {
            worst = worst.max((mu - 1.0 / (n as f64 + 1.0)).abs());
        }
    }
    outcome(
        worst <= 1e-14 && triangular,
        format!("max |mu_n - 1/(n+1)| {worst:.2e} (tol 1e-14), lower triangular: {triangular}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("eigen-identity C", criterion_1),
        ("eigen-identity C_t", criterion_2),
        ("inverse identity", criterion_3),
        ("log-power identity", criterion_4),
        ("resolvent route agreement", criterion_5),
        ("resolvent defining identity", criterion_6),
        ("norm inequalities", criterion_7),
        ("ergodic dichotomy", criterion_8),
        ("growth classification", criterion_9),
        ("finite-section spectrum", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {name} [{:.2}s]: {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            result.detail
        );
        if !result.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
