use std::process::{Command, Output};

use conformal::experiments::ExperimentResult;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conformal")).args(args).output().expect("binary runs")
}

fn parsed(out: &Output) -> ExperimentResult {
    serde_json::from_slice(&out.stdout).expect("stdout is an experiment result")
}

#[test]
fn series_coefficients_are_exact() {
    let out = run(&["yamabe-series", "--order", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parsed(&out);
    assert_eq!(r.results["coefficients"], serde_json::json!(["1", "-3/26", "-321/17576"]));
    assert_eq!(r.results["w2_mismatch"], serde_json::json!(true));
    assert!(r.all_pass());
}

#[test]
fn output_is_deterministic() {
    for args in [&["norms", "--grid-points", "32"][..], &["decompose", "--matrix", "2,1,0,1,2,0,0,0,1"][..]] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_round_trips() {
    let out = run(&["decompose", "--diag", "4,1,1,1", "--u", "2"]);
    let r = parsed(&out);
    let again: ExperimentResult = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(r, again);
    assert_eq!(r.results["determinant"], serde_json::json!(4.0));
}

#[test]
fn csv_has_header_and_checks() {
    let out = run(&["decompose", "--diag", "4,1,1,1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    assert_eq!(&headers[0], "experiment");
    let kinds: Vec<String> = rows.records().map(|r| r.unwrap()[1].to_string()).collect();
    assert!(kinds.iter().any(|k| k == "param"));
    assert!(kinds.iter().any(|k| k == "check"));
}

#[test]
fn failed_checks_exit_one() {
    let out = run(&["friedman-volume"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
    assert!(!parsed(&out).all_pass());
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "--diag", "1,0,1,1"]).status.code(), Some(2));
    assert_eq!(run(&["schwarzschild", "--m", "1", "--e", "2"]).status.code(), Some(2));
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("conformal-cli-{}.json", std::process::id()));
    let out = run(&["yamabe-series", "--order", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: ExperimentResult = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(r.name, "yamabe-series");
}
