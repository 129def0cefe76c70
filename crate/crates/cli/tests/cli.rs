use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hkt_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkt-lab"))
        .args(args)
        .env("HKT_LAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&v).expect("schema compiles")
}

fn assert_valid(validator: &jsonschema::Validator, v: &Value) {
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hkt-lab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn n_out_of_range_is_usage_error() {
    assert_eq!(hkt_lab(&["verify", "--n", "9"]).status.code(), Some(2));
    assert_eq!(hkt_lab(&["isotypic", "--n", "3"]).status.code(), Some(2));
    assert_eq!(hkt_lab(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn bad_polynomial_is_usage_error() {
    let out = hkt_lab(&["signature", "--n", "1", "--P", "wQ^2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_n1_all_passes() {
    let out = hkt_lab(&["verify", "--n", "1", "--suite", "all"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("0 failed"));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn verify_report_is_schema_valid() {
    let path = tmp("appendix.json");
    let out = hkt_lab(&[
        "verify",
        "--n",
        "2",
        "--suite",
        "appendix",
        "--json",
        path.to_str().unwrap(),
    ]);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid(&schema("verification-report.v1.json"), &report);
    let fail = report["summary"]["fail"].as_u64().unwrap();
    assert_eq!(out.status.code(), Some(if fail == 0 { 0 } else { 1 }));
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["suite"] == "appendix"));
    let howe = checks
        .iter()
        .find(|c| c["id"] == "howe-irreducibility")
        .unwrap();
    assert!(howe["data"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn failing_witnesses_are_forms() {
    let path = tmp("differential.json");
    hkt_lab(&[
        "verify",
        "--n",
        "1",
        "--suite",
        "differential",
        "--json",
        path.to_str().unwrap(),
    ]);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid(&schema("verification-report.v1.json"), &report);
    let form = schema("form.v1.json");
    for c in report["checks"].as_array().unwrap() {
        if let Some(w) = c.get("witness").and_then(|w| w.as_array()) {
            for entry in w {
                if let Some(f) = entry.get("form") {
                    assert_valid(&form, f);
                }
            }
        }
    }
}

#[test]
fn constants_are_byte_identical() {
    let a = hkt_lab(&["constants", "--n", "2"]);
    let b = hkt_lab(&["constants", "--n", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["lambda"], "6");
    assert_eq!(v["mu"], "6");
    assert_eq!(v["fourth_order_const"], "1/4");
}

#[test]
fn constants_n3_marks_uncomputed() {
    let v = stdout_json(&hkt_lab(&["constants", "--n", "3"]));
    assert_eq!(v["lambda"], "20");
    assert!(v["kappa"].as_str().unwrap().contains("not computed"));
}

#[test]
fn decompose_n1_k2() {
    let out = hkt_lab(&["decompose", "--n", "1", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(!text.trim().is_empty());
    stdout_json(&out);
}

#[test]
fn signature_of_unit_polynomial() {
    let out = hkt_lab(&["signature", "--n", "1", "--P", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["n"], 1);
    assert!(v["entries"].as_array().is_some());
}

#[test]
fn conventions_text_and_json() {
    let out = hkt_lab(&["conventions", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("dx1"));
    let v = stdout_json(&hkt_lab(&["conventions", "--n", "2", "--json"]));
    assert!(v["structure_matrices"].is_object());
}

#[test]
fn fixtures_emit_forms() {
    let spec = serde_json::json!({
        "n": 1,
        "family": { "kind": "random-form", "degree": 2, "primitive": true },
        "degree_bound": 2,
        "seed": 5
    });
    assert_valid(&schema("fixture-spec.v1.json"), &spec);
    let path = tmp("spec.json");
    std::fs::write(&path, spec.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let a = hkt_lab(&["fixtures", "--spec", p, "--emit"]);
    let b = hkt_lab(&["fixtures", "--spec", p, "--emit"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["fixture"]["kind"], "form");
    assert_valid(&schema("form.v1.json"), &v["fixture"]["form"]);
}

#[test]
fn fixtures_reject_bad_spec() {
    let path = tmp("bad.json");
    std::fs::write(
        &path,
        r#"{"n": 7, "family": {"kind": "flat-potential"}, "degree_bound": 0, "seed": 1}"#,
    )
    .unwrap();
    let out = hkt_lab(&["fixtures", "--spec", path.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
}
