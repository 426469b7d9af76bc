use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn typforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_typforge")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn verify_stdin(bytes: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_typforge"))
        .args(["verify-cert", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(bytes).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn decided_queries_exit_zero() {
    let o = typforge(&["monoid", "eq", "--name", "rose", "--n", "2", "--x", "v", "--y", "2*v"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["summary"], "Equal");
    assert_eq!(r["status"], "decided");
    assert_eq!(r["certificates"].as_array().unwrap().len(), 1);
}

#[test]
fn unknown_verdicts_exit_three() {
    let o = typforge(&["monoid", "eq", "--name", "rose", "--n", "2", "--x", "v", "--y", "9*v", "--frontier", "2", "--depth", "1"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["summary"], "Unknown");
}

#[test]
fn size_cap_exits_three() {
    let o = Command::new(env!("CARGO_BIN_EXE_typforge"))
        .args(["resolve", "--name", "fullshift", "--depth", "4"])
        .env("TYPFORGE_SIZE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&typforge(&["graph", "info", "--name", "nosuch"])), 2);
    assert_eq!(code(&typforge(&["monoid", "eq", "--name", "rose", "--n", "2", "--x", "v", "--y", "9v"])), 2);
    assert_eq!(code(&typforge(&["--format", "dot", "monoid", "eq", "--name", "rose", "--n", "2", "--x", "v", "--y", "v"])), 2);
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli_bad_presentation.json");
    std::fs::write(&path, r#"{"generators":["a"],"relations":"x"}"#).unwrap();
    assert_eq!(code(&typforge(&["monoid", "stablyfinite", "--presentation", path.to_str().unwrap()])), 2);
}

#[test]
fn certificates_round_trip_and_tampering_is_caught() {
    let o = typforge(&["monoid", "eq", "--name", "rose", "--n", "2", "--x", "v", "--y", "2*v"]);
    let v = verify_stdin(&o.stdout);
    assert_eq!(code(&v), 0);
    let r = json(&v);
    assert_eq!(r["result"]["total"], 1);
    assert_eq!(r["result"]["valid"], 1);

    let mut report = json(&o);
    report["certificates"][0]["claim"]["y"] = serde_json::json!([3]);
    let v = verify_stdin(serde_json::to_string(&report).unwrap().as_bytes());
    assert_eq!(code(&v), 1);
    assert_eq!(json(&v)["result"]["valid"], 0);
}

#[test]
fn output_does_not_depend_on_threads() {
    let args = ["resolve", "--name", "emn", "--m", "2", "--n", "3", "--depth", "2"];
    let one = typforge(&[&args[..], &["--threads", "1"]].concat());
    let four = typforge(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn text_output_starts_with_the_summary() {
    let o = typforge(&["--format", "text", "ktheory", "graph", "--name", "rose", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let (first, rest) = text.split_once('\n').unwrap();
    assert_eq!(first, "K0 = Z/3, K1 = 0");
    let r: Value = serde_json::from_str(rest).unwrap();
    assert_eq!(r["summary"], first);
}

#[test]
fn dot_output_lists_tower_layers() {
    let o = typforge(&["--format", "dot", "resolve", "--name", "fullshift", "--depth", "1"]);
    assert_eq!(code(&o), 0);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    let layers: Vec<usize> = dot
        .split("{ rank=same;")
        .skip(1)
        .map(|block| block.split('}').next().unwrap().matches(";\n").count())
        .collect();
    assert_eq!(layers, [1, 2, 4]);
}
