use std::fs;
use std::process::{Command, Output};

use cesaro_lab::cli::io::parse_coeff_csv;
use cesaro_lab::operators::cesaro_apply;
use cesaro_lab::{Complex64, Poly};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cesaro-lab"))
        .args(args)
        .env("CESARO_LAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

#[test]
fn apply_constant_gives_harmonic_column() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("coeffs.csv");
    fs::write(&input, "n,re,im\n0,1,0\n1,0,0\n2,0,0\n3,0,0\n").unwrap();
    let out = run(&[
        "apply",
        "--op",
        "cesaro",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("# config: {\"command\":\"apply\""));
    let rest: Vec<_> = lines.collect();
    assert_eq!(
        rest,
        [
            "n,re,im",
            "0,1,0",
            "1,0.5,0",
            "2,0.3333333333333333,0",
            "3,0.25,0"
        ]
    );
}

#[test]
fn emitted_files_chain_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let second = dir.path().join("second.csv");
    let out = run(&[
        "apply",
        "--op",
        "cesaro",
        "--f",
        "random3",
        "--degree",
        "64",
        "-o",
        first.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "apply",
        "--op",
        "cesaro",
        "--input",
        first.to_str().unwrap(),
        "-o",
        second.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let stage1 = parse_coeff_csv(fs::File::open(&first).unwrap(), "first").unwrap();
    let stage2 = parse_coeff_csv(fs::File::open(&second).unwrap(), "second").unwrap();
    assert_eq!(cesaro_apply(&stage1), stage2);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "ergodic", "--t", "0.3", "--n-max", "16", "--f", "random0", "--degree", "64",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn ergodic_trace_converges_for_half() {
    let out = run(&["ergodic", "--t", "0.5", "--n-max", "256", "--f", "const1"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let errors: Vec<f64> = json["projection_errors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(errors.len(), 256);
    assert!(errors[255] < 0.01 * errors[0]);
    assert!(errors.windows(2).skip(1).all(|w| w[1] <= w[0]));
    for key in ["iterate_norms", "mean_norms", "mean_increments", "config"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["config"]["t"], 0.5);
}

#[test]
fn resolvent_routes_from_the_command_line() {
    let out = run(&[
        "resolvent",
        "--lambda-re",
        "-1",
        "--lambda-im",
        "0.5",
        "--f",
        "log1p",
        "--degree",
        "32",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let f = parse_coeff_csv(out.stdout.as_slice(), "stdout").unwrap();
    let lambda = Complex64::new(-1.0, 0.5);
    let h = cesaro_lab::series::log_one_plus(32);
    let back: Poly = &(&f * lambda) - &cesaro_apply(&f);
    assert!((&back - &h).max_abs() < 1e-12);

    let out = run(&[
        "resolvent",
        "--lambda-re",
        "0",
        "--lambda-im",
        "1",
        "--route",
        "integral",
        "--degree",
        "16",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("z_re,z_im,re,im"));
    assert_eq!(text.lines().count(), 102);
}

#[test]
fn classify_and_spectrum_emit_json() {
    let out = run(&["classify", "--f", "e2"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["divergence_flag"], true);

    let out = run(&["spectrum", "--degree", "64", "--step", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // 5x5 grid without 0 and 1, plus the two extra probes
    assert_eq!(json["probes"].as_array().unwrap().len(), 25);
    assert_eq!(json["config"]["command"], "spectrum");
}

#[test]
fn verify_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.json");
    let out = run(&[
        "verify",
        "--suite",
        "series",
        "--degree",
        "64",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["failed"], 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS series/"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["apply", "--op", "ct"]).status.code(), Some(2));
    assert_eq!(
        run(&["resolvent", "--lambda-re", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--suite", "nothing"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["apply", "--op", "cesaro", "--input", "/no/such/file.csv"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&[
            "apply",
            "--op",
            "cesaro",
            "--degree",
            "4",
            "-o",
            "/no/such/dir/out.csv"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let bad = Command::new(env!("CARGO_BIN_EXE_cesaro-lab"))
        .args(["apply", "--op", "cesaro", "--degree", "4"])
        .env("CESARO_LAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
