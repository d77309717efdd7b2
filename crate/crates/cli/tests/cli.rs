use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn gtrip(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gtrip"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn gtrip");
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: Option<&str>) -> Value {
    let out = gtrip(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn g(v: &Value) -> (String, String) {
    (v[0].as_str().unwrap().to_owned(), v[1].as_str().unwrap().to_owned())
}

fn gi(re: i64, im: i64) -> (String, String) {
    (re.to_string(), im.to_string())
}

#[test]
fn unfold_worked_example() {
    let v = ok_json(&["unfold", "8-4i, 4+7i, 4-i"], None);
    let z: Vec<_> = v["zero_sum"]["components"].as_array().unwrap().iter().map(g).collect();
    assert_eq!(z, vec![gi(4, -1), gi(4, 8), gi(7, -4)]);
    assert_eq!(v["all_arithmetic"], Value::Bool(true));
    let triplets = v["triplets"].as_array().unwrap();
    assert_eq!(triplets.len(), 3);
    for t in triplets {
        assert_eq!(g(&t["defect"]), gi(0, 0));
    }
    let centers: Vec<_> = triplets.iter().map(|t| g(&t["components"][1])).collect();
    assert_eq!(centers, vec![gi(4, -1), gi(4, 8), gi(7, -4)]);
}

#[test]
fn unfold_zero_sum_input() {
    let v = ok_json(&["unfold", "--zero-sum", "4-i,4+8i,7-4i"], None);
    assert!(v["legs"].is_null());
    assert_eq!(v["triplets"].as_array().unwrap().len(), 3);
}

#[test]
fn fold_integer_triplet() {
    let v = ok_json(&["fold", "1,25,49"], None);
    let legs: Vec<_> = v["legs"]["components"].as_array().unwrap().iter().map(g).collect();
    assert_eq!(legs, vec![gi(4, 0), gi(3, 0), gi(5, 0)]);
}

#[test]
fn fold_gaussian_roots_and_erratum() {
    let v = ok_json(&["fold", "--roots", "5+11i,4+8i,3+3i"], None);
    assert_eq!(v["zero_sum"]["kind"], "zero_sum");
    let bad = gtrip(&["fold", "--roots", "5+12i,4+8i,3+3i"], None);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("arithmetic"));
}

#[test]
fn fixture_into_check() {
    let parker = gtrip(&["fixture", "parker"], None);
    assert!(parker.status.success());
    let report = ok_json(&["check", "-"], Some(&String::from_utf8(parker.stdout).unwrap()));
    let sums = report["line_sums"].as_array().unwrap();
    assert_eq!(sums.iter().filter(|s| g(s) == gi(3051, 0)).count(), 7);
    assert_eq!(report["is_gap"], Value::Bool(false));
}

#[test]
fn bremner_reports() {
    let doc = String::from_utf8(gtrip(&["fixture", "bremner", "--roots"], None).stdout).unwrap();
    let report = ok_json(&["check", "-"], Some(&doc));
    assert_eq!(g(&report["magic_constant"]), gi(541875, 0));
    assert_eq!(report["square_count"], 7);
    let fam = ok_json(&["siblings", "-", "--younger"], Some(&doc));
    assert_eq!(fam["triplet_count"], 24);
    assert_eq!(fam["kinked_siblings"], 0);
    assert!(fam["lines"][0]["younger"].is_object());
    let fam = ok_json(&["siblings", "-", "--float"], Some(&doc));
    assert_eq!(fam["backend"], "float");
    assert!(fam["lines"][0].get("younger").is_none());
    let pg = ok_json(&["pseudo", "-", "--direction", "rows"], Some(&doc));
    assert_eq!(pg["backend"], "exact");
    assert_eq!(pg["error"]["text"], "-219529/2 + 289/2·√360721");
    assert_eq!(pg["identity_residual"]["exact"], Value::Array(vec![]));
    let cols = ok_json(&["pseudo", "-", "--direction", "cols", "--younger"], Some(&doc));
    assert_eq!(cols["identity_residual"]["exact"], Value::Array(vec![]));
}

#[test]
fn pseudo_rejects_non_grid() {
    let doc = String::from_utf8(gtrip(&["fixture", "parker"], None).stdout).unwrap();
    let out = gtrip(&["pseudo", "-"], Some(&doc));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a slant grid"));
}

#[test]
fn malformed_input_names_the_field() {
    let out = gtrip(&["check", "-"], Some(r#"{"cells": [[1,2,3],[4,"5x",6],[7,8,9]]}"#));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cells[1][1]"));
    let out = gtrip(&["check", "-"], Some("not json"));
    assert_eq!(out.status.code(), Some(2));
    let out = gtrip(&["unfold", "1,2"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = gtrip(&["fixture", "durer"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn study_origin_series() {
    let grid = ok_json(&["random-grid", "--seed", "7"], None);
    let v = ok_json(&["study-origin", "-", "--shifts", "100,10000,1000000"], Some(&grid.to_string()));
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 3);
    assert!(v["log_log_slope"].as_f64().unwrap() < 0.0);
}

#[test]
fn random_grid_is_reproducible() {
    let a = ok_json(&["random-grid", "--seed", "42", "--gaussian"], None);
    let b = ok_json(&["random-grid", "--seed", "42", "--gaussian"], None);
    let c = ok_json(&["random-grid", "--seed", "43", "--gaussian"], None);
    assert_eq!(a, b);
    assert_ne!(a, c);
    let report = ok_json(&["check", "-"], Some(&a.to_string()));
    assert_eq!(report["is_gap"], Value::Bool(true));
}

#[test]
fn search_streams_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let run = |workers: &str| {
        let out = gtrip(
            &["search", "--ring", "integers", "--norm-bound", "1000000", "--workers", workers, "--floor", "6", "--certificate", cert.to_str().unwrap()],
            None,
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap()
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let lines: Vec<Value> = one.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let hit = lines
        .iter()
        .find(|c| g(&c["basis"]["m"]) == gi(625, 0) && g(&c["basis"]["u"]) == gi(336, 0) && g(&c["basis"]["v"]) == gi(600, 0))
        .expect("(625, 336, 600) reported");
    assert_eq!(hit["square_count"], 6);
    assert!(!cert.exists());
    let bad = gtrip(&["search", "--norm-bound", "10", "--floor", "3"], None);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let triple = dir.path().join("triple.json");
    std::fs::write(&triple, String::from_utf8(gtrip(&["fixture", "paper-example"], None).stdout).unwrap()).unwrap();
    let svg_path = dir.path().join("out.svg");
    let out = gtrip(&["plot", triple.to_str().unwrap(), "-o", svg_path.to_str().unwrap(), "--siblings"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<polygon ").count(), 1);
    assert_eq!(svg.matches("<polyline ").count(), 3);
    let grid = dir.path().join("grid.json");
    std::fs::write(&grid, String::from_utf8(gtrip(&["fixture", "bremner"], None).stdout).unwrap()).unwrap();
    let out = gtrip(&["plot", grid.to_str().unwrap(), "-o", svg_path.to_str().unwrap(), "--siblings", "--rotate-older"], None);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&svg_path).unwrap().matches("<polyline ").count(), 24);
}
