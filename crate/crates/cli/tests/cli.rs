//! Exit codes and machine output of the command-line tool.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(stem: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(stem)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgroupoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("machine output is JSON");
    (out.status.code().unwrap(), v)
}

#[test]
fn valid_instance_exits_zero() {
    let (code, v) = machine(&["validate", &corpus("s3_matched_pair")]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    assert_eq!(v["kind"], "report");
    assert_eq!(v["version"], "1");
}

#[test]
fn non_vacant_control_exits_one_with_witness() {
    let (code, v) = machine(&["vacant", &corpus("commuting_squares_z2")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["vacant"], false);
    let fillers = &v["result"]["corners"]["top_right"]["NonVacant"]["fillers"];
    assert_eq!(fillers.as_array().unwrap().len(), 2);
}

#[test]
fn wha_refuses_non_vacant_input() {
    let (code, v) = machine(&["wha", "verify", &corpus("commuting_squares_z2")]);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
    assert!(v["error"].is_object());
}

#[test]
fn twisted_verify_passes() {
    let out = run(&[
        "wha",
        "verify",
        &corpus("s3"),
        "--p",
        "3",
        "--cocycle",
        &corpus("s3_cocycle_m2.json"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn format_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind": "double_groupoid", "version": "7"}"#).unwrap();
    let (code, v) = machine(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "version");
    let (code, v) = machine(&["validate", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "io");
}

#[test]
fn convert_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let double = dir.path().join("double.json");
    let back = dir.path().join("pair.json");
    let src = corpus("s3_matched_pair.json");
    let out = run(&["convert", &src, "--to", "double-groupoid", "-o", double.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["convert", double.to_str().unwrap(), "--to", "matched-pair", "-o", back.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        std::fs::read_to_string(&back).unwrap(),
        std::fs::read_to_string(&src).unwrap()
    );
}

#[test]
fn kac_reports_exactness() {
    let (code, v) = machine(&["kac", "--p", "2", &corpus("s3_matched_pair")]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
}
