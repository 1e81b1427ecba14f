//! End-to-end runs of the `corner` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corner")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("not a JSON report ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no {name} check"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("corner-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn hh_on_dual_numbers() {
    let out = corner(&["hh", "--corpus", "dual-numbers", "--max-degree", "4", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let c = check(&r, "hh-method-agreement");
    assert_eq!(c["status"], "pass");
    assert_eq!(c["payload"]["bar"], serde_json::json!([2, 1, 1, 1, 1]));
}

#[test]
fn reports_are_deterministic() {
    let args = ["classify", "--corpus", "upper-triangular", "--idempotent", "E11", "--no-time"];
    let (a, b) = (corner(&args), corner(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("wall_time"));
}

#[test]
fn files_and_names_agree() {
    let text = corner::corpus::text("dual-numbers").unwrap();
    let path = scratch("dual.json", text);
    let by_file = corner(&["ext", "--algebra", path.to_str().unwrap(), "--module", "simple", "--no-time"]);
    let by_name = corner(&["ext", "--corpus", "dual-numbers", "--module", "simple", "--no-time"]);
    assert_eq!(by_file.status.code(), Some(0));
    let (a, b) = (report(&by_file), report(&by_name));
    assert_eq!(check(&a, "ext-table")["payload"], check(&b, "ext-table")["payload"]);
    assert_eq!(check(&a, "ext-table")["payload"]["dims"], serde_json::json!([1, 1, 1, 1, 1, 1]));
}

#[test]
fn separate_action_file() {
    let doc: Value = serde_json::from_str(corner::corpus::text("skew-q3-z3").unwrap()).unwrap();
    let mut algebra = doc.clone();
    algebra.as_object_mut().unwrap().remove("action");
    algebra.as_object_mut().unwrap().remove("skew");
    let action = serde_json::json!({"kind": "group-action", "field": doc["field"], "action": doc["action"]});
    let s = scratch("q3.json", &algebra.to_string());
    let g = scratch("z3.json", &action.to_string());
    let out = corner(&["invariants", "--algebra", s.to_str().unwrap(), "--action", g.to_str().unwrap(), "--cutoff", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(check(&report(&out), "invariant-comparison")["status"], "pass");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(corner(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(corner(&["hh"]).status.code(), Some(2));
    assert_eq!(corner(&["grade", "--corpus", "dual-numbers", "--module", "missing"]).status.code(), Some(2));
    assert_eq!(corner(&["hh", "--corpus", "no-such-fixture"]).status.code(), Some(2));
}

#[test]
fn invalid_documents_exit_with_two() {
    let bad = scratch("bad.json", r#"{"kind": "algebra", "field": {"Fp": 3}, "algebra": {"labels": ["1"], "unit": ["1"], "products": [[0, 0, 0, "1/3"]]}}"#);
    let out = corner(&["validate", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn resource_caps_exit_with_three() {
    let out = corner(&["hh", "--corpus", "dual-numbers", "--method", "bar", "--bar-cap", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_corner"))
        .args(["hh", "--corpus", "dual-numbers", "--method", "ext"])
        .env("CORNER_RESOLUTION_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn skew_group_commands() {
    let out = corner(&["skew", "--corpus", "skew-cubic-z2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&report(&out), "hh-degeneration")["status"], "pass");
    let out = corner(&["pierce", "--corpus", "skew-cubic-z2", "--skew", "--idempotent", "plus"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&report(&out), "pierce-closure")["status"], "pass");
}
