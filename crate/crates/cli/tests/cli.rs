//! End-to-end tests of the binary: output shapes, determinism, and the
//! exit-code contract (0 all pass, 1 any failure, 2 usage error).

use std::process::{Command, Output};

fn klwv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klwv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8")
}

#[test]
fn delta_atypical_example() {
    let out = klwv(&[
        "delta", "atypical", "--m", "4", "--a", "0", "--b", "0", "--i", "1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"delta":"3/2"}"#);
}

#[test]
fn delta_typical_example() {
    let out = klwv(&["delta", "typical", "--m", "4", "--mu", "1/3", "--nu", "1/2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"delta":"7/24"}"#);
}

#[test]
fn classify_vacuum() {
    let out = klwv(&["classify", "--m", "4", "--j0", "0", "--a", "0", "--b", "0"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(json["class"], "S0");
    assert_eq!(json["delta_min"], "0");
    assert_eq!(json["local"], true);
    assert_eq!(json["argmin"], serde_json::json!([0]));
}

#[test]
fn classify_shifted_base_family() {
    let out = klwv(&[
        "classify", "--m", "4", "--j0", "1", "--a", "-4/3", "--b", "-1",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(json["class"], "A1");
    assert_eq!(json["monodromy"], "1/2");
    assert_eq!(json["local"], false);
}

#[test]
fn classify_typical() {
    let out = klwv(&["classify", "--m", "4", "--mu", "1/3", "--nu", "1/2"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(json["class"], "Typ");
    assert_eq!(json["delta_min"], "7/24");
}

#[test]
fn eq1_solutions_m4() {
    let out = klwv(&["qhr", "eq1", "--m", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "[[15,2]]");
}

#[test]
fn qhr_pair_failure_is_exit_one() {
    // (14, 2) has the coincidence point (15, 2) among its tensor summands,
    // so the obstruction report legitimately fails
    let out = klwv(&["qhr", "--m", "4", "--lambda1", "14", "--lambda-last", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("survives"));
}

#[test]
fn qhr_pair_at_the_solution_passes() {
    let out = klwv(&["qhr", "--m", "4", "--lambda1", "15", "--lambda-last", "2"]);
    assert!(out.status.success());
    let first_line = stdout(&out);
    let first_line = first_line.lines().next().expect("nonempty");
    let json: serde_json::Value = serde_json::from_str(first_line).expect("json");
    assert_eq!(json["delta_theta"], "146/3");
    assert_eq!(json["coincide"], true);
    assert_eq!(json["eq1_member"], true);
}

#[test]
fn char_vacuum_module() {
    let out = klwv(&["char", "--module", "M:0", "--order", "4"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(json["offset"], "0");
    let terms = json["terms"].as_array().expect("array");
    // [1, 0, 1, 2, 3] with zero coefficients omitted
    assert_eq!(terms.len(), 4);
    assert_eq!(terms[0], serde_json::json!([0, "0", "1"]));
    assert_eq!(terms[3], serde_json::json!([0, "4", "3"]));
}

#[test]
fn sugawara_route() {
    let out = klwv(&[
        "sugawara",
        "--n",
        "6",
        "--k",
        "-7/2",
        "--lambda",
        "1,0,0,0,0",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(json["sugawara"], "7/6");
    assert_eq!(json["minimal_reduction"], "2/3");
    assert_eq!(json["j0_weight"], "2/3");
}

#[test]
fn malformed_rational_is_usage_error() {
    let out = klwv(&["delta", "atypical", "--m", "4", "--a", "x/y", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn odd_rank_report_is_usage_error() {
    let out = klwv(&["report", "--m", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn odd_rank_embed_check_is_allowed() {
    let out = klwv(&["embed-check", "--m", "5", "--range", "10"]);
    assert!(out.status.success());
}

#[test]
fn report_passes_and_is_deterministic() {
    let args = ["report", "--m", "4", "--order", "10", "--range", "12"];
    let first = klwv(&args);
    assert!(first.status.success(), "{}", stdout(&first));
    let second = klwv(&args);
    assert_eq!(first.stdout, second.stdout);

    let threaded = Command::new(env!("CARGO_BIN_EXE_klwv"))
        .args(args)
        .env("KLWV_THREADS", "3")
        .output()
        .expect("binary runs");
    assert!(threaded.status.success());
    assert_eq!(first.stdout, threaded.stdout);
}

#[test]
fn report_csv_format() {
    let out = klwv(&[
        "report", "--m", "4", "--order", "8", "--range", "8", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,id,inputs,expected,actual,status"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",pass")));
}

#[test]
fn enumerate_contains_labelled_families() {
    let out = klwv(&[
        "enumerate",
        "--m",
        "4",
        "--range",
        "2",
        "--denom-bound",
        "3",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let entries = json.as_array().expect("array");
    assert!(entries
        .iter()
        .any(|e| e["class"] == "S0" && e["fock_weight"] == "0"));
    assert!(entries.iter().any(|e| e["class"] == "A1" && e["j0"] == 1));
    assert!(entries.iter().any(|e| e["class"] == "NotLocal"));
}
