//! The `qhspec` binary: exit codes, report formats and the
//! `sympferm --emit-spec | modtrace` pipeline.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn qhspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_on_group_algebra_exits_zero() {
    let out = qhspec(&["check", path_str(&data("kz2.qh"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("[PASS] check"), "{text}");
    assert!(text.contains("[PASS] pentagon"));
}

#[test]
fn cointegrals_without_pivot_exit_three() {
    let out = qhspec(&["cointegrals", "--side", "right", path_str(&data("kz2_nonpivotal.qh"))]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("pivot"), "{err}");
}

#[test]
fn malformed_coefficient_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qh");
    let text = std::fs::read_to_string(data("kz2.qh"))
        .unwrap()
        .replacen("0 0 0 1\n", "0 0 0 1/0\n", 1);
    std::fs::write(&bad, text).unwrap();
    let out = qhspec(&["--json", "check", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["exit"], 2);
    assert!(v["error"].as_str().unwrap().contains("line 10, column 9"), "{v}");
}

#[test]
fn missing_file_exits_one() {
    let out = qhspec(&["check", "/nonexistent/spec.qh"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_unimodular_trace_exits_four() {
    let out = qhspec(&["modtrace", path_str(&data("sweedler.qh"))]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn emitted_q1_spec_gives_closed_form_trace_values() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("q1.qh");
    let out = qhspec(&["sympferm", "--n", "1", "--beta", "z8^7", "--emit-spec"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&spec, &out.stdout).unwrap();

    let out = qhspec(&["modtrace", path_str(&spec)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("t(r_x+) = -1/2*z4"), "{text}");
    assert!(text.contains("t(r_y+) = -1"), "{text}");
}

#[test]
fn json_and_text_reports_have_the_same_tree() {
    fn walk(v: &serde_json::Value, depth: usize, out: &mut Vec<(usize, String, String)>) {
        let status = v["status"].as_str().unwrap().to_uppercase();
        out.push((depth, status, v["name"].as_str().unwrap().to_string()));
        for c in v["children"].as_array().into_iter().flatten() {
            walk(c, depth + 1, out);
        }
    }
    let spec = data("kz4.qh");
    let text = stdout(&qhspec(&["verify", "--suite", "all", path_str(&spec)]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&qhspec(&[
        "--json",
        "verify",
        "--suite",
        "all",
        path_str(&spec),
    ])))
    .unwrap();
    let mut tree = Vec::new();
    for c in json["checks"].as_array().unwrap() {
        walk(c, 1, &mut tree);
    }
    let lines: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(lines.len(), tree.len());
    for (line, (depth, status, name)) in lines.iter().zip(&tree) {
        let prefix = format!("{}[{status}] {name}", "  ".repeat(*depth));
        assert!(line.starts_with(&prefix), "{line:?} vs {prefix:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let spec = data("q1_z8_7.qh");
    let args = [
        "--json",
        "verify",
        "--suite",
        "reduction",
        "--seed",
        "3",
        path_str(&spec),
    ];
    let first = qhspec(&args);
    let second = qhspec(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}
