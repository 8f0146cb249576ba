use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn vflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vflab"))
        .args(args)
        .env_remove("VFLAB_MAX_MS")
        .output()
        .expect("binary runs")
}

fn envelope(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--json", "--no-timing"]);
    let out = vflab(&full);
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

fn result(args: &[&str]) -> Value {
    let (code, v) = envelope(args);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["timing_ms"], 0);
    v["result"].clone()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn bs_cusp() {
    let r = result(&["bs", "--f", "x^2+y^3", "--weights", "1/2,1/3"]);
    assert_eq!(
        r,
        json!({"b": "(s+1)(s+5/6)(s+7/6)", "minimal_exponent": "5/6", "lct": "5/6"})
    );
}

#[test]
fn bs_infers_weights() {
    let r = result(&["bs", "--f", "x^3 + y^4"]);
    assert_eq!(r["minimal_exponent"], "7/12");
}

#[test]
fn resolution_lct_cusp() {
    let r = result(&["resolution-lct", "--data", &data("cusp.json")]);
    assert_eq!(r["lct"], "5/6");
    assert_eq!(r["min_exponent_lower_bound"], "5/6");
}

#[test]
fn jumping_two_three() {
    let r = result(&["jumping", "--a", "2,3", "--bound", "1"]);
    assert_eq!(r, json!({"jumping_numbers": ["1/3", "1/2", "2/3", "1"]}));
}

#[test]
fn mult_ideal() {
    let r = result(&["mult-ideal", "--a", "2,3", "--lambda", "5/6"]);
    assert_eq!(r["ideal"], "(x*y^2)");
}

#[test]
fn oracle_agrees_with_formula() {
    let r = result(&["oracle-b", "--f", "x^2+y^3", "--max-order", "3", "--max-sdeg", "3"]);
    assert_eq!(r["b"], "(s+1)(s+5/6)(s+7/6)");
    assert_eq!(r["verified"], true);
}

#[test]
fn verify_beq_given_b() {
    let r = result(&["verify-beq", "--f", "x^2", "--b", "(s+1)*(s+1/2)"]);
    assert_eq!(r["verified"], true);
    assert!(r["integer_checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn lct_routes() {
    assert_eq!(result(&["lct", "--a", "2,3"])["lct"], "1/3");
    assert_eq!(result(&["lct", "--f", "x^2+y^3"])["lct"], "5/6");
}

#[test]
fn sigma_counts() {
    let r = result(&["sigma", "--f", "x^3+y^4"]);
    assert_eq!(r["milnor_number"], 6);
    assert_eq!(r["values"], json!(["0", "1/4", "1/3", "1/2", "7/12", "5/6"]));
}

#[test]
fn root_bounds_shift() {
    let r = result(&[
        "root-bounds", "--data", &data("cusp.json"), "--which", "dtm", "--m", "1", "--exceptional-only",
    ]);
    let c: Vec<&str> = r["candidates"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(c.contains(&"1/6") && c.contains(&"-1/6"));
}

#[test]
fn tau_demo() {
    let r = result(&["tau-demo", "--f", "x^2+y^3", "--m", "3"]);
    assert_eq!(r["all_equal"], true);
    assert_eq!(r["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn vcheck_normal_crossing() {
    let r = result(&["vcheck", "--a", "1,1", "--levels", "0:2:1/2", "--trunc-J", "2", "--trunc-D", "6"]);
    assert_eq!(r["passed"], true);
    assert_eq!(r["levels"].as_array().unwrap().len(), 5);
}

#[test]
fn min_exp_certificates() {
    let r = result(&["min-exp", "--f", "x^2+y^3", "--certify", "--trunc-J", "2", "--trunc-D", "8"]);
    assert_eq!(r["minimal_exponent"], "5/6");
    let certs = r["microlocal"]["certificates"].as_array().unwrap();
    assert!(!certs.is_empty());
    assert!(certs.iter().all(|c| c["outcome"] == "certified_member"));
}

#[test]
fn output_is_byte_stable() {
    let args = ["bs", "--f", "x^2+y^3", "--json", "--no-timing"];
    assert_eq!(vflab(&args).stdout, vflab(&args).stdout);
}

#[test]
fn explicit_variable_order() {
    let r = result(&["bs", "--f", "x^2+y^3", "--vars", "y,x", "--weights", "1/3,1/2"]);
    assert_eq!(r["b"], "(s+1)(s+5/6)(s+7/6)");
}

#[test]
fn domain_error_exit_one() {
    let (code, v) = envelope(&["bs", "--f", "x^2+y^3", "--weights", "1/2,1/2"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"]["kind"], "not_weighted_homogeneous");
    let (code, v) = envelope(&["sigma", "--f", "x^2*y^2"]);
    assert_eq!(code, 1, "{v}");
}

#[test]
fn parse_error_reports_column() {
    let (code, v) = envelope(&["bs", "--f", "x + @"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("column 5"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(vflab(&["bs"]).status.code(), Some(2));
    assert_eq!(vflab(&["nonsense"]).status.code(), Some(2));
    assert_eq!(vflab(&["jumping", "--a", "2,x"]).status.code(), Some(2));
    assert_eq!(vflab(&["bs", "--f", "t^2 + x^3"]).status.code(), Some(2));
}

#[test]
fn time_budget_aborts() {
    let out = Command::new(env!("CARGO_BIN_EXE_vflab"))
        .args(["vcheck", "--a", "2,3", "--json"])
        .env("VFLAB_MAX_MS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "time_budget_exceeded");
    assert!(v.get("result").is_none());
}

#[test]
fn missing_data_file() {
    let out = vflab(&["resolution-lct", "--data", "/nonexistent/rows.json"]);
    assert_eq!(out.status.code(), Some(2));
}
