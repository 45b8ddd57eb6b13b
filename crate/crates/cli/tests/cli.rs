use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sylow3"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), args)
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn field<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["name"] == name)
        .map(|f| &f["value"])
        .unwrap_or_else(|| panic!("no field {name} in {report}"))
}

fn source<'a>(report: &'a Value, name: &str) -> &'a str {
    report["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["name"] == name)
        .and_then(|f| f["source"].as_str())
        .unwrap()
}

#[test]
fn classify_long_sequence() {
    let r = json(&["classify", "110001010"]);
    assert_eq!(field(&r, "component[0].type"), "22");
    assert_eq!(field(&r, "component[0].F"), 2);
    assert_eq!(field(&r, "component[0].G"), 6);
    assert_eq!(field(&r, "component[0].H"), 8);
    assert_eq!(field(&r, "m"), 10905);
    assert_eq!(source(&r, "m"), "closed-form");
}

#[test]
fn classify_trivial_81() {
    let r = json(&["classify", "0000"]);
    assert_eq!(field(&r, "component[0].type"), "1");
    assert_eq!(field(&r, "N"), 81);
    assert_eq!(field(&r, "m"), 79);
    assert_eq!(field(&r, "M"), 81);
    assert_eq!(field(&r, "quasi_trivial"), true);
}

#[test]
fn classify_sigma_vector() {
    let r = json(&["classify", "0000;00;10"]);
    assert_eq!(field(&r, "sigma_vector"), "(1,0,0,0,0,0,0)");
    assert_eq!(field(&r, "small_part.in_psi1"), true);
    assert_eq!(field(&r, "m"), 95);
}

#[test]
fn empty_label_is_a_usage_error() {
    let out = run(&["classify", ""]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn omega_layer_descriptor() {
    let r = json(&["omega", "0010"]);
    let text = field(&r, "omega").as_str().unwrap();
    assert!(text.starts_with("B_81(77) ⊔ {(78,μ)"), "{text}");
    assert_eq!(field(&r, "exact"), true);
    assert_eq!(field(&r, "descriptor")["known"]["variant"], "BoxPlusLayer");
    assert_eq!(field(&r, "descriptor")["known"]["top"], 78);
}

#[test]
fn omega_small_row() {
    let r = json(&["omega", "0;01"]);
    assert_eq!(field(&r, "omega"), "B_12(11)");
}

#[test]
fn omega_enumerates_and_matches_oracle() {
    let r = json(&["omega", "11", "--enumerate", "--oracle"]);
    assert_eq!(field(&r, "count"), 17);
    assert_eq!(r["members"].as_array().unwrap().len(), 17);
    assert_eq!(field(&r, "oracle_count"), 17);
    assert_eq!(field(&r, "agrees"), true);
}

#[test]
fn omega_enumeration_cap() {
    let out = run(&["omega", "00000", "--enumerate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn member_verdicts() {
    let r = json(&["member", "[26,1]", "000"]);
    assert_eq!(field(&r, "verdict"), "Out");
    let r = json(&["member", "[5,4]", "00"]);
    assert_eq!(field(&r, "verdict"), "Out");
    let r = json(&["member", "[70,9,2]", "0110"]);
    assert_eq!(field(&r, "verdict"), "Unknown");
}

#[test]
fn member_with_oracle() {
    let r = json(&["member", "[18,9]", "100", "--oracle"]);
    assert_eq!(field(&r, "Z"), 1);
    assert_eq!(field(&r, "oracle_verdict"), "In");
    assert_eq!(field(&r, "verdict"), "In");
    assert_eq!(source(&r, "Z"), "oracle");
}

#[test]
fn member_out_of_oracle_scope() {
    let out = run(&["member", "[54,27]", "1000", "--oracle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of oracle scope"));
    let r = json(&["member", "[54,27]", "1000"]);
    assert_eq!(field(&r, "verdict"), "In");
}

#[test]
fn member_size_mismatch() {
    let out = run(&["member", "[5,4]", "000"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_suites() {
    let out = run(&["verify", "small-omega", "tables-81-99"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("small-omega: PASS (6/6 checks)"), "{text}");
    assert!(text.contains("tables-81-99: PASS (28/28 checks)"), "{text}");
}

#[test]
fn verify_csv_rows() {
    let out = run(&["--format", "csv", "verify", "small-omega"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,check,passed,detail"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn verify_unknown_suite() {
    let out = run(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_example_81_is_stable() {
    let a = run(&["--format", "csv", "table", "example-81"]);
    let b = run(&["--format", "csv", "table", "example-81"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 17);
    assert_eq!(lines[0], "s,sigma,f,g,F,G,H,N,m,M,quasi_trivial,omega");
    assert!(
        lines[1].starts_with("0000,1,,,,,,81,79,81,true,"),
        "{}",
        lines[1]
    );
}

#[test]
fn table_example_99_json() {
    let rows = json(&["table", "example-99"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0]["component_n"], serde_json::json!([81, 9, 9]));
    assert_eq!(rows[9]["label"], "0000;11;11");
    assert_eq!(rows[9]["m"], 91);
}

#[test]
fn table2_renders() {
    let rows = json(&["table", "table2"]);
    let rows = rows.as_array().unwrap();
    let row = rows.iter().find(|r| r["label"] == "00").unwrap();
    assert_eq!(row["n_value"], 9);
    assert_eq!(row["omega"], "P(9) \\ {[8,1],[5,4],[4,3,2]}°");
}

#[test]
fn unknown_table() {
    assert_eq!(run(&["table", "bogus"]).status.code(), Some(2));
}

#[test]
fn profile_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let first = run_in(dir.path(), &["member", "[26,1]", "000", "--oracle"]);
    assert!(first.status.success());
    assert!(String::from_utf8_lossy(&first.stderr).contains("building the class profile"));
    assert!(dir.path().join("profile-k3.json").exists());
    let second = run_in(dir.path(), &["member", "[26,1]", "000", "--oracle"]);
    assert!(second.status.success());
    assert!(!String::from_utf8_lossy(&second.stderr).contains("building the class profile"));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn text_report_tags_sources() {
    let out = run(&["classify", "0000"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.lines()
            .any(|l| l.starts_with("m ") && l.ends_with("[closed-form]")),
        "{text}"
    );
}
