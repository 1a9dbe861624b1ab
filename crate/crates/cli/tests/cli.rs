//! End-to-end tests for the `cuspidal` binary: output contents, formats,
//! caching, table import, and the exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const JORDAN: &str = r#"{"vertices": ["v"], "arrows": [["v", "v"]]}"#;
const POINT: &str = r#"{"vertices": ["v"], "arrows": []}"#;
const KRONECKER2: &str = r#"{"vertices": ["s", "t"], "arrows": [["s", "t"], ["s", "t"]]}"#;

fn write_quiver(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspidal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn kac_table_for_a_single_loop() {
    let dir = TempDir::new().unwrap();
    let quiver = write_quiver(dir.path(), "q.json", JORDAN);
    let json = stdout_json(&run(&["kac", "--quiver", &quiver, "--box", "3"]));
    // One loop: every dimension has exactly one absolutely indecomposable
    // class, counted with weight t.
    for d in ["1", "2", "3"] {
        assert_eq!(json["entries"][d]["A"], serde_json::json!(["0", "1"]), "A at {d}");
    }
    assert_eq!(json["entries"]["2"]["H"], serde_json::json!(["0", "1", "1"]));
}

#[test]
fn kac_table_for_a_point() {
    let dir = TempDir::new().unwrap();
    let quiver = write_quiver(dir.path(), "q.json", POINT);
    let json = stdout_json(&run(&["kac", "--quiver", &quiver, "--box", "3"]));
    assert_eq!(json["entries"]["1"]["A"], serde_json::json!(["1"]));
    assert_eq!(json["entries"]["2"]["A"], serde_json::json!([]));
    assert_eq!(json["entries"]["3"]["A"], serde_json::json!([]));
}

#[test]
fn cuspidal_output_formats() {
    let dir = TempDir::new().unwrap();
    let quiver = write_quiver(dir.path(), "q.json", JORDAN);

    let json = stdout_json(&run(&["cuspidal", "--quiver", &quiver, "--box", "2"]));
    assert_eq!(json["1"]["C"], serde_json::json!(["0", "1"]));

    let csv = run(&["cuspidal", "--quiver", &quiver, "--box", "2", "--out", "csv"]);
    assert!(csv.status.success());
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("d;C;Cabs\n"), "csv header, got {text:?}");
    assert!(text.contains("1;t;t\n"), "csv row for d=1, got {text:?}");

    let latex = run(&["cuspidal", "--quiver", &quiver, "--box", "2", "--out", "latex"]);
    assert!(latex.status.success());
    let text = String::from_utf8(latex.stdout).unwrap();
    assert!(text.contains("\\begin"), "latex output, got {text:?}");
}

#[test]
fn check_reports_passing_quiver() {
    let dir = TempDir::new().unwrap();
    let quiver = write_quiver(dir.path(), "q.json", KRONECKER2);
    let out = run(&["check", "--quiver", &quiver, "--box", "2,2"]);
    let json = stdout_json(&out);
    assert!(json["failures"].as_array().unwrap().is_empty());
    assert!(!json["passed"].as_array().unwrap().is_empty());
}

#[test]
fn cold_and_cached_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let quiver = write_quiver(dir.path(), "q.json", KRONECKER2);
    let cache = dir.path().join("cache");
    let args = [
        "cuspidal",
        "--quiver",
        quiver.as_str(),
        "--box",
        "2,2",
        "--cache",
        cache.to_str().unwrap(),
    ];
    let cold = run(&args);
    assert!(cold.status.success());
    assert!(cache.join("tables-v1").is_dir(), "finished table was cached");
    let warm = run(&args);
    assert!(warm.status.success());
    assert_eq!(cold.stdout, warm.stdout, "cache replay must be byte-identical");
}

#[test]
fn imported_table_replaces_the_counting_oracle() {
    let dir = TempDir::new().unwrap();
    let quiver = write_quiver(dir.path(), "q.json", JORDAN);
    let kac = run(&["kac", "--quiver", &quiver, "--box", "3"]);
    assert!(kac.status.success());
    let table_path = dir.path().join("a.json");
    std::fs::write(&table_path, &kac.stdout).unwrap();

    // Re-run with the exported table as input; results must match, and the
    // box may exceed what direct counting supports.
    let with_import = run(&[
        "kac",
        "--quiver",
        &quiver,
        "--box",
        "3",
        "--a-table",
        table_path.to_str().unwrap(),
    ]);
    assert_eq!(kac.stdout, with_import.stdout);
}

#[test]
fn input_errors_exit_with_code_1() {
    let dir = TempDir::new().unwrap();

    let bad_json = write_quiver(dir.path(), "bad.json", "{not json");
    let out = run(&["kac", "--quiver", &bad_json, "--box", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));

    let quiver = write_quiver(dir.path(), "q.json", KRONECKER2);
    let wrong_box = run(&["kac", "--quiver", &quiver, "--box", "2"]);
    assert_eq!(wrong_box.status.code(), Some(1), "box length must match vertex count");

    let missing = run(&["kac", "--quiver", dir.path().join("absent.json").to_str().unwrap(), "--box", "2"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn capability_gaps_exit_with_code_2() {
    let dir = TempDir::new().unwrap();
    let quiver = write_quiver(dir.path(), "q.json", JORDAN);

    // Direct counting only reaches small matrix dimensions.
    let too_big = run(&["kac", "--quiver", &quiver, "--box", "5"]);
    assert_eq!(too_big.status.code(), Some(2));

    // A sampling budget too small to pin down the polynomials.
    let starved = run(&["kac", "--quiver", &quiver, "--box", "3", "--primes-limit", "1"]);
    assert_eq!(starved.status.code(), Some(2));
}
