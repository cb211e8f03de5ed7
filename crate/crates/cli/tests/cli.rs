use std::io::Write;
use std::process::{Command, Output};

use driftwalk_cli::commands::CliError;
use driftwalk_cli::EnvironmentSpec;
use serde_json::Value;
use tempfile::NamedTempFile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_driftwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn spec_file(text: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

fn record(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(stdout.lines().next().unwrap()).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1e-2)
}

#[test]
fn hit_time_examples() {
    let f = spec_file(r#"{"n": 2, "omega": [0.5]}"#);
    for method in ["formula", "recurrence", "solve"] {
        let rec = record(&run(&["hit-time", f.path().to_str().unwrap(), "--method", method]));
        assert!(close(num(&rec["E"]), 4.0));
        assert_eq!(rec["method"], method);
        assert_eq!(rec["v"].as_array().unwrap().len(), 3);
        assert_eq!(rec["a"].as_array().unwrap().len(), 2);
    }
    let rec = record(&run(&["hit-time", f.path().to_str().unwrap(), "--start", "1"]));
    assert!(close(num(&rec["E"]), 3.0));

    let f = spec_file(r#"{"n": 1, "omega": []}"#);
    let rec = record(&run(&["hit-time", f.path().to_str().unwrap()]));
    assert_eq!(num(&rec["E"]), 1.0);
}

#[test]
fn hit_time_rejects_unreachable_target() {
    let f = spec_file(r#"{"n": 2, "omega": [0]}"#);
    let out = run(&["hit-time", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("omega[0]"));

    let f = spec_file(r#"{"n": 2, "omega": [0.7]}"#);
    let out = run(&["hit-time", f.path().to_str().unwrap(), "--start", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn optimize_brute_examples() {
    let rec = record(&run(&["optimize", "--n", "4", "--k", "1", "--q", "0.6", "--p", "0.9"]));
    assert_eq!(rec["best_positions"], serde_json::json!([2]));
    assert_eq!(rec["equally_spaced_positions"], serde_json::json!([3]));
    assert!(close(num(&rec["gap"]), 60.0 / 81.0));
    assert_eq!(rec["input"]["n"], 4);

    let rec = record(&run(&["optimize", "--n", "10", "--k", "0", "--q", "0.6", "--p", "0.9"]));
    assert_eq!(num(&rec["gap"]), 0.0);

    let rec = record(&run(&["optimize", "--n", "30", "--k", "29", "--q", "0.6", "--p", "0.9"]));
    assert_eq!(rec["candidates_examined"], 1);
}

#[test]
fn optimize_budget_exceeded() {
    let out = run(&["optimize", "--n", "31", "--k", "15", "--q", "0.6", "--p", "0.9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("155117520"));
}

#[test]
fn optimize_sample_with_csv() {
    let out = run(&[
        "optimize", "--n", "300", "--k", "10", "--q", "0.6", "--p", "0.9", "--mode", "sample",
        "--trials", "8", "--seed", "4", "--csv",
    ]);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let rec = record(&out);
    assert_eq!(rec["gaps"].as_array().unwrap().len(), 8);
    assert_eq!(rec["bound_holds"], true);
    let csv: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(csv[0], "trial,gap");
    assert_eq!(csv.len(), 9);
}

#[test]
fn limit_examples() {
    let rec = record(&run(&["limit", "--a", "1", "--q", "0.6", "--p", "0.75", "--k-list", "10"]));
    assert!((num(&rec["L_series"]) - 2.0).abs() < 1e-12);

    let rec = record(&run(&["limit", "--a", "2", "--q", "2/3", "--p", "4/5"]));
    assert!(close(num(&rec["L_series"]), 15.0 / 7.0));
    assert!(close(num(&rec["L_printed"]), -1.0 / 7.0));
    assert_eq!(rec["printed_discrepancy"], true);
    let finite = rec["finite_k"].as_array().unwrap();
    assert_eq!(finite.len(), 5);
    assert!(num(&finite[4]["error"]) < 0.01);

    let rec = record(&run(&["limit", "--a", "2", "--q", "2/3", "--p", "1", "--k-list", "10"]));
    // 1 + (2/2) * s_0 with s_0 = alpha = 1/2
    assert!(close(num(&rec["L_series"]), 1.5));
}

#[test]
fn limit_size_and_validation_errors() {
    let out = run(&["limit", "--a", "200", "--q", "0.6", "--p", "0.9", "--k-list", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["limit", "--a", "2", "--q", "0.9", "--p", "0.6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_examples() {
    let f = spec_file(r#"{"n": 2, "omega": [0.5]}"#);
    let rec = record(&run(&["simulate", f.path().to_str().unwrap(), "--seed", "7"]));
    assert!(num(&rec["z"]).abs() <= 4.0);
    assert_eq!(rec["pass"], true);
    assert_eq!(rec["walks"], 100_000);

    let f = spec_file(r#"{"n": 5, "omega": [1, 1, 1, 1]}"#);
    let rec = record(&run(&["simulate", f.path().to_str().unwrap(), "--walks", "500"]));
    assert_eq!(num(&rec["stderr"]), 0.0);
    assert_eq!(num(&rec["mean"]), 5.0);
    assert_eq!(rec["pass"], true);

    let out = run(&["simulate", f.path().to_str().unwrap(), "--walks", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_reports_truncation() {
    let f = spec_file(r#"{"n": 20, "omega": [0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3]}"#);
    let rec = record(&run(&[
        "simulate", f.path().to_str().unwrap(), "--walks", "20", "--max-steps", "40",
    ]));
    assert!(rec["truncated"].as_u64().unwrap() > 0);
    assert_eq!(rec["biased_low"], true);
    assert!(rec["z"].is_null());
}

#[test]
fn sums_examples() {
    let f = spec_file(r#"{"n": 3, "omega": ["2/3", "2/3"]}"#);
    let rec = record(&run(&["sums", f.path().to_str().unwrap()]));
    assert!(close(num(&rec["S"]), 1.25));
    assert!(close(num(&rec["S_tilde"]), 1.5));
    assert!(close(num(&rec["C_alpha"]), 2.0));

    let f = spec_file(r#"{"n": 2, "omega": [0.8]}"#);
    let rec = record(&run(&["sums", f.path().to_str().unwrap()]));
    assert_eq!(num(&rec["S"]), num(&rec["S_tilde"]));
    assert!(close(num(&rec["S"]), 0.25));

    let f = spec_file(r#"{"n": 41, "q": "2/3", "p": 0.9, "positions": []}"#);
    let rec = record(&run(&["sums", f.path().to_str().unwrap()]));
    let (m, a) = (40.0, 0.5f64);
    assert!(close(num(&rec["S_tilde"]), m * a * (1.0 - a.powi(40)) / (1.0 - a)));
    assert_eq!(rec["sigma"].as_array().unwrap().len(), 40);

    let f = spec_file(r#"{"n": 201, "q": "2/3", "p": 0.9, "positions": []}"#);
    let full = record(&run(&["sums", f.path().to_str().unwrap()]));
    let cut = record(&run(&["sums", f.path().to_str().unwrap(), "--truncate-sums"]));
    assert!(cut["sigma"].as_array().unwrap().len() < 200);
    assert!((num(&full["S_tilde"]) - num(&cut["S_tilde"])).abs() < 1e-12);

    let f = spec_file(r#"{"n": 1, "omega": []}"#);
    assert_eq!(run(&["sums", f.path().to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn records_echo_their_input_and_round_trip() {
    let text = r#"{"n": 9, "q": "11/20", "p": "19/20", "k": 3, "layout": "equally_spaced"}"#;
    let original = EnvironmentSpec::parse(text).unwrap();
    let f = spec_file(text);
    for cmd in ["hit-time", "sums"] {
        let rec = record(&run(&[cmd, f.path().to_str().unwrap()]));
        assert_eq!(rec["command"], cmd);
        let echoed = EnvironmentSpec::from_value(&rec["input"]).unwrap();
        assert_eq!(echoed, original);
    }
}

#[test]
fn missing_file_is_a_validation_error() {
    let out = run(&["hit-time", "/nonexistent/spec.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(CliError::Validation(String::new()).exit_code(), 1);
    assert_eq!(CliError::Budget(String::new()).exit_code(), 2);
    assert_eq!(CliError::Internal(String::new()).exit_code(), 3);
}
