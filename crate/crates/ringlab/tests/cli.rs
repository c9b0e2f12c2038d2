//! End-to-end runs of the installed binary: exit codes, output shapes, and
//! flag handling.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_text_and_exit_zero() {
    let out = run(&["analyze", "Z6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("ring Z6 (order 6)"));
    assert!(text.contains("weakly_j_quasipolar    true"));
    assert!(text.contains("j_quasipolar           false"));
    assert!(text.trim_end().ends_with("gate six_in_j: true"));
}

#[test]
fn analyze_json_carries_all_properties() {
    let out = run(&["analyze", "Z6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ring"], "Z6");
    assert_eq!(v["order"], 6);
    assert_eq!(v["properties"].as_array().unwrap().len(), 17);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn analyze_property_filter() {
    let out = run(&["analyze", "Z6", "--properties", "weakly_j_quasipolar,local"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("weakly_j_quasipolar"));
    assert!(text.contains("local"));
    assert!(!text.contains("strongly_clean"));

    let bad = run(&["analyze", "Z6", "--properties", "no_such_property"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn analyze_witnesses_flag() {
    let out = run(&["analyze", "T(2,Z3)", "--witnesses"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("witness [[1,0],[0,2]]"));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(run(&["analyze", "Q5"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "M(2,)"]).status.code(), Some(2));
    assert_eq!(run(&["element", "Z6", "[[1,2],[3]]"]).status.code(), Some(2));
}

#[test]
fn cap_errors_exit_three_and_max_order_lifts_them() {
    assert_eq!(run(&["analyze", "M(3,Z5)"]).status.code(), Some(3));
    assert_eq!(run(&["analyze", "Z4100"]).status.code(), Some(3));
    assert_eq!(run(&["analyze", "Z6", "--max-order", "5"]).status.code(), Some(3));
    let lifted = run(&["analyze", "Z4100", "--max-order", "4100"]);
    assert_eq!(lifted.status.code(), Some(0));
    assert!(stdout(&lifted).contains("weakly_j_quasipolar    false"));
}

#[test]
fn element_report_reduces_literals() {
    let out = run(&["element", "Z6", "8", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["index"], 2);
    assert_eq!(v["element"], "2");
    assert_eq!(v["memberships"]["center"], true);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 7);
    assert!(v["fast_path"].is_null());
}

#[test]
fn element_tuple_literal_and_fast_path() {
    let out = run(&["element", "Z2 x Z3", "(1,2)", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["index"], 5);

    let fp = run(&["element", "M(2,Z3)", "[[1,0],[0,1]]", "--fast-path", "--json"]);
    assert_eq!(fp.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&fp)).unwrap();
    let lines = v["fast_path"].as_array().unwrap();
    assert!(!lines.is_empty());
    for l in lines {
        if l["applicable"] == true {
            assert_eq!(l["agrees"], true, "{l}");
        }
    }
}

#[test]
fn corpus_file_runs_and_propagates_failures() {
    let dir = tempfile::tempdir().unwrap();
    let ok = dir.path().join("ok.txt");
    fs::write(&ok, "# tiny corpus\n\nZ5\n").unwrap();
    let out = run(&["corpus", ok.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("ring,order,check,result,witness,elapsed_ms"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("Z5,5,")));

    // Z3 trips the clean-family biconditional, which is reported FAIL.
    let red = dir.path().join("red.txt");
    fs::write(&red, "Z3\n").unwrap();
    let out = run(&["corpus", red.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("abelian-iff-uniquely-clean,FAIL"));

    let skip = dir.path().join("skip.txt");
    fs::write(&skip, "M(3,Z5)\n").unwrap();
    let out = run(&["corpus", skip.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("construction,SKIPPED"));
}

#[test]
fn corpus_bad_inputs_exit_two() {
    assert_eq!(run(&["corpus", "/no/such/file.txt"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "Z5 # trailing comment is not allowed\n").unwrap();
    assert_eq!(run(&["corpus", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn corpus_json_shape() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c.txt");
    fs::write(&f, "Z5\n").unwrap();
    let out = run(&["corpus", f.to_str().unwrap(), "--json", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["ring"] == "Z5" && r["result"] == "PASS"));
}

#[test]
fn out_flag_writes_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["analyze", "Z6", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["ring"], "Z6");

    let unwritable = run(&["analyze", "Z6", "--out", "/no/such/dir/x.txt"]);
    assert_eq!(unwritable.status.code(), Some(2));
}
