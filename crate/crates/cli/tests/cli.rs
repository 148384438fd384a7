//! Runs the built binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn hyperlap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlap"))
        .args(args)
        .output()
        .unwrap()
}

fn zoo() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/zoo.data")
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperlap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn convert_then_info() {
    let doc = scratch("zoo.json");
    let out = hyperlap(&[
        "convert",
        &zoo(),
        "--preset",
        "zoo",
        "--output",
        doc.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(std::fs::read_to_string(&doc)
        .unwrap()
        .contains("hyperlap/1"));

    let out = hyperlap(&["info", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("nodes\t101"));
    assert!(text.contains("incidences\t1615"));
}

#[test]
fn cut_writes_csv() {
    let csv = scratch("cut.csv");
    let out = hyperlap(&[
        "cut",
        &zoo(),
        "--preset",
        "zoo",
        "--k",
        "7",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("dataset,task,p,"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn check_passes_on_zoo() {
    let out = hyperlap(&["check", &zoo(), "--preset", "zoo", "--draws", "3"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn validation_errors_exit_with_2() {
    assert_eq!(
        hyperlap(&["info", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
    // seven classes cannot be propagated with ±1 labels
    let out = hyperlap(&["ssl", &zoo(), "--preset", "zoo", "--fraction", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hyperlap(&["cut", &zoo(), "--preset", "zoo", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_policy_is_rejected() {
    let out = hyperlap(&["info", &zoo(), "--label-col", "17", "--policy", "sometimes"]);
    assert_eq!(out.status.code(), Some(2));
}
