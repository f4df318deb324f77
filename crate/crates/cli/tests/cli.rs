use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sturmian")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn generate_matches_the_worked_examples() {
    let out = run(&["generate", "--from", "1", "--to", "13", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0100101001001");
    let out = run(&["generate", "--from", "0", "--to", "1", "--psi", "0", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "01");
}

#[test]
fn generate_json_uses_the_report_envelope() {
    let v = json(&run(&["generate", "--from", "1", "--to", "5"]));
    for key in ["tool_version", "command", "config", "results"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["command"], "generate");
    assert_eq!(v["config"]["gamma"], "fib");
}

#[test]
fn reversed_range_is_a_usage_error() {
    let out = run(&["generate", "--from", "5", "--to", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["generate", "--gamma", "2/3", "--from", "0", "--to", "3"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn distance_profile_example() {
    let v = json(&run(&["distances", "--horizon", "25"]));
    let d: Vec<u64> = serde_json::from_value(v["results"]["profile"]["d"].clone()).unwrap();
    assert_eq!(d[..8], [2, 5, 7, 10, 13, 15, 18, 20]);
    let f: Vec<u64> = serde_json::from_value(v["results"]["profile"]["forbidden"].clone()).unwrap();
    assert_eq!(f, [1, 4, 9, 12, 17, 22, 25]);
}

#[test]
fn verify_suites_pass() {
    for suite in ["order", "energy"] {
        let out = run(&["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["results"]["passed"], true);
    }
}

#[test]
fn corrupted_profile_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corrupt.json");
    let v = json(&run(&["distances", "--horizon", "60", "--psi", "0"]));
    let mut d: Vec<u64> = serde_json::from_value(v["results"]["profile"]["d"].clone()).unwrap();
    d[2] += 1;
    std::fs::write(&path, serde_json::json!({ "d": d, "horizon": 60 }).to_string()).unwrap();
    let out = run(&["verify", "--suite", "all", "--profile", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let report = json(&out);
    assert_eq!(report["results"]["passed"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("invariant failed"));
}

#[test]
fn malformed_profile_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"d": [0, 5], "horizon": 10}"#).unwrap();
    let out = run(&["verify", "--suite", "order", "--profile", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unstable_discrepancy_is_an_invariant_failure() {
    // the letters need segments longer than 300 before their maximal deviation settles
    let out = run(&["discrepancy", "--word", "1", "--max-len", "300"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = ["verify", "--suite", "all"];
    for path in [&a, &b] {
        let mut full = args.to_vec();
        full.extend(["--out", path.to_str().unwrap()]);
        let out = run(&full);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    assert!(first.ends_with(b"\n"));
    assert_eq!(run(&args).stdout, first);
}

#[test]
fn discrepancy_csv_has_one_row_per_factor() {
    let out = run(&["discrepancy", "--max-word-len", "2", "--max-len", "1000", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("word,frequency_decimal,max_dev,horizon"));
    // factors of lengths 1 and 2: 0, 1, 00, 01, 10
    assert_eq!(lines.count(), 5);
}

#[test]
fn characterize_reports_the_factor_set() {
    let v = json(&run(&["characterize", "--n", "5"]));
    let r = &v["results"];
    for key in ["n", "M_used", "legal_words", "count", "matches_factor_set"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    assert_eq!(r["count"], 6);
    assert_eq!(r["matches_factor_set"], true);
}

#[test]
fn energy_of_an_illegal_word() {
    let v = json(&run(&["energy", "--word", "10001"]));
    assert_eq!(v["results"]["energy"]["total"], "17/16");
    let v = json(&run(&["energy", "--word", "0", "--periodic"]));
    assert_eq!(v["results"]["periodic_density"]["lower_bound"], "1/1");
}

#[test]
fn ground_state_counts() {
    let v = json(&run(&["ground-state", "--len", "6"]));
    assert_eq!(v["results"]["min_energy"], "0/1");
    assert_eq!(v["results"]["count"], 7);
}
