use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hardy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const RING_POINTS: &str = r#"{"points": [{"re": 0.5, "im": 0.0}, {"re": 0.0, "im": -0.9}, {"re": -0.75, "im": 0.25}]}"#;

#[test]
fn construct_omega_roundtrips_as_function() {
    let out = hardy(&["construct", "omega", "--arcs", "0:pi"]);
    assert_eq!(code(&out), 0);
    let spec = String::from_utf8(out.stdout).unwrap();
    let f: hardy_sampling::FunctionSpec = serde_json::from_str(&spec).unwrap();
    assert_eq!(f.label(), "O");

    let eval = hardy(&["eval", "--function", spec.trim(), "--z", "0,0"]);
    assert_eq!(code(&eval), 0);
    let m = stdout_json(&eval)[0]["modulus"].as_f64().unwrap();
    assert!((m - (-0.5f64).exp()).abs() < 1e-12);
}

#[test]
fn identity_check_passes_on_small_set() {
    let out = hardy(&["identity-check", "--points", RING_POINTS, "--alpha", "0.5,2", "--p", "1,2"]);
    assert_eq!(code(&out), 0);
    let rows = stdout_json(&out);
    assert_eq!(rows.as_array().unwrap().len(), 4);
    for row in rows.as_array().unwrap() {
        assert!(row["relative_error"].as_f64().unwrap() <= 1e-12);
    }
}

#[test]
fn sample_check_failure_exits_two() {
    let f = r#"{"factors": [{"kind": "monomial", "degree": 2}]}"#;
    let ok = hardy(&["sample-check", "--function", f, "--points", RING_POINTS]);
    assert_eq!(code(&ok), 0);
    let fail = hardy(&["sample-check", "--function", f, "--points", RING_POINTS, "--c-min", "2"]);
    assert_eq!(code(&fail), 2);
}

#[test]
fn invalid_input_exits_one() {
    assert_eq!(code(&hardy(&["norm", "--function", "{not json"])), 1);
    assert_eq!(code(&hardy(&["--alpha", "-1", "coverage", "--points", RING_POINTS])), 1);
    assert_eq!(code(&hardy(&["experiment", "theorem9"])), 1);
    assert_eq!(code(&hardy(&["construct", "omega", "--arcs", "0:0"])), 1);
    let weighted = r#"{"points": [{"re": 0.5, "im": 0.0, "weight": 0.5}]}"#;
    assert_eq!(code(&hardy(&["coverage", "--points", weighted])), 1);
    assert_eq!(code(&hardy(&["frobnicate"])), 1);
}

#[test]
fn schema_prints_help() {
    let out = hardy(&["schema"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("ExperimentConfig"));
}

#[test]
fn norm_reports_maximal_norms() {
    let f = r#"{"factors": [{"kind": "blaschke", "zeros": [{"re": 0.5, "im": 0.0}]}]}"#;
    let out = hardy(&["--p", "1,2,inf", "norm", "--function", f, "--points", RING_POINTS]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let norms = v["norms"].as_array().unwrap();
    assert_eq!(norms.len(), 3);
    assert!(norms[2].get("mu_norm").is_none());
    for row in norms {
        assert!((row["hp_norm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
}

fn run_experiment(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["--seed", "5", "experiment", "theorem2", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    hardy(&args)
}

#[test]
fn experiment_writes_deterministic_reports() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(code(&run_experiment(a.path(), &[])), 0);
    assert_eq!(code(&run_experiment(b.path(), &[])), 0);
    for name in ["theorem2-partial_sums.csv", "theorem2-dominated.csv"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{name} differs between runs");
    }
    let load = |dir: &Path| -> Value {
        let mut v: Value = serde_json::from_slice(&std::fs::read(dir.join("report.json")).unwrap()).unwrap();
        v["config"]["output"] = Value::Null;
        v
    };
    let report = load(a.path());
    assert_eq!(report, load(b.path()));
    assert_eq!(report["config"]["seed"], 5);
    assert!(report["verdicts"].as_object().unwrap().values().all(|v| v == true));
}

#[test]
fn experiment_verdict_failure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("cfg.json");
    std::fs::write(
        &config,
        r#"{"schema": 1, "experiment": "theorem2", "tolerances": {"growth": 3}}"#,
    )
    .unwrap();
    let out = hardy(&["experiment", "theorem2", "--config", config.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdicts"]["partial_sums_grow"], false);

    std::fs::write(&config, r#"{"schema": 1, "experiment": "theorem2", "bogus": 1}"#).unwrap();
    assert_eq!(code(&hardy(&["experiment", "theorem2", "--config", config.to_str().unwrap()])), 1);
}
