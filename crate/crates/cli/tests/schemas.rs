use std::path::PathBuf;
use std::process::Command;

use artin_tower::endo::{AutStar, Certificate};
use artin_tower::tower::AffineElement;
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema(name: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let value: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(schema: &JSONSchema, instance: &Value) {
    if let Err(errors) = schema.validate(instance) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{instance} is invalid: {msgs:?}");
    }
}

fn artin_json(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_artin")).args(args).arg("--json").output().unwrap();
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn certificates_match_schema() {
    let s = schema("certificate.schema.json");
    let n = 4;
    let g = AffineElement::parse(n, "t0 t1^-1").unwrap();
    let psi = AutStar::new(n, 2, false, true).unwrap();
    for cert in [
        Certificate::alpha(g.clone(), psi, 1),
        Certificate::beta(g.clone(), psi, -2),
        Certificate::autstar(g.clone(), psi),
        Certificate::cyclic(g.clone(), AffineElement::parse(n, "t3").unwrap()),
    ] {
        assert_valid(&s, &serde_json::to_value(cert.to_json()).unwrap());
    }
    let example: Value =
        serde_json::from_str(r#"{"case":"alpha","p":1,"psi":{"zeta":2,"eta":0,"mu":1},"conjugator":"t0 t1^-1"}"#)
            .unwrap();
    assert_valid(&s, &example);
    for bad in [
        r#"{"case":"alpha","psi":{"zeta":2,"eta":0,"mu":1},"conjugator":""}"#,
        r#"{"case":"cyclic","conjugator":"","target":"t1","p":0}"#,
        r#"{"case":"autstar","conjugator":"","psi":{"zeta":0,"eta":2,"mu":0}}"#,
    ] {
        assert!(!s.is_valid(&serde_json::from_str(bad).unwrap()), "{bad}");
    }
}

#[test]
fn invariant_reports_match_schema() {
    let s = schema("invariant_report.schema.json");
    for (n, hom) in [("4", "alpha:-2"), ("3", "cyclic:t1 t2"), ("4", "ambient:v,1,1,0,1"), ("2", "id")] {
        assert_valid(&s, &artin_json(&["inv", "--n", n, "--hom", hom]));
    }
}

#[test]
fn selftest_report_matches_schema() {
    let s = schema("selftest_report.schema.json");
    let report = artin_json(&["selftest", "--profile", "quick"]);
    assert_valid(&s, &report);
    assert_eq!(report["passed"], true);
    assert_eq!(report["results"].as_array().unwrap().len(), 11);
}
