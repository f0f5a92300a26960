use std::path::Path;
use std::process::{Command, Output};

fn ergocorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ergocorr")).args(args).output().expect("binary runs")
}

fn write_rotation(dir: &Path, name: &str, s0: &str) -> String {
    let path = dir.join(name);
    let path_str = path.to_str().unwrap().to_string();
    let out = ergocorr(&[
        "gen", "rotation", "--alpha", "golden", "--t", "1/2", "--s0", s0, "--n", "2000", "--out", &path_str,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path_str
}

#[test]
fn correlation_curve_is_csv_with_exact_parts() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_rotation(dir.path(), "a.txt", "1/7");
    let b = write_rotation(dir.path(), "b.txt", "3/5");
    let out = ergocorr(&["corr", "--seq-a", &a, "--seq-b", &b, "--n-grid", "10,100,1000"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,re,im,abs"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), ["10", "100", "1000"]);
    for row in rows {
        assert_eq!(row[2], "0", "sign sequences have real correlation");
        assert!(row[3].parse::<f64>().unwrap() <= 1.0);
    }
}

#[test]
fn out_file_gets_the_body_and_stdout_the_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("bounds.json");
    let out = ergocorr(&["cf", "verify", "--alpha", "golden", "--depth", "6", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let body: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    // k = 1..depth−1: each check needs q_{k+1}.
    assert_eq!(body["checks"].as_array().map(Vec::len), Some(5));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn exit_codes_separate_usage_from_io() {
    assert_eq!(ergocorr(&["corr", "--bogus"]).status.code(), Some(2));
    assert_eq!(ergocorr(&["--rational", "cf", "expand", "--alpha", "golden", "--depth", "3"]).status.code(), Some(2));
    assert_eq!(ergocorr(&["cf", "expand", "--alpha", "1/3", "--depth", "5"]).status.code(), Some(2));
    let missing = ergocorr(&["empirical", "measure", "--seq", "/nonexistent/seq.txt", "--order", "2"]);
    assert_eq!(missing.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/seq.txt"));
}

#[test]
fn same_seed_gives_the_same_experiment() {
    let args = ["experiment", "example3", "--alpha", "golden", "--samples", "20", "--length", "2000", "--seed", "3"];
    let (first, second) = (ergocorr(&args), ergocorr(&args));
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let other = ergocorr(&[&args[..9], &["4"]].concat());
    assert_ne!(first.stdout, other.stdout);
}
