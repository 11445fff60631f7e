use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn gaussia() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gaussia"));
    cmd.env_remove("GAUSSIA_THREADS");
    cmd
}

fn analyze(json: &str) -> Output {
    let mut child = gaussia()
        .args(["analyze", "--scenario", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(json.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(json: &str) -> Value {
    let out = analyze(json);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn f(v: &Value, path: &[&str]) -> f64 {
    path.iter().fold(v, |v, k| &v[*k]).as_f64().unwrap_or_else(|| panic!("{path:?}"))
}

#[test]
fn analyze_inertial_is_normalized() {
    let v = report(r#"{"setting": "inertial", "s": 0.828727}"#);
    for path in [
        &["a_given_r", "classical"][..],
        &["a_given_r", "discord"],
        &["r_given_a", "classical"],
        &["r_given_a", "discord"],
        &["e2", "estimated"],
        &["e2", "closed"],
    ] {
        assert!((f(&v, path) - 1.0).abs() < 1e-6, "{path:?}");
    }
    assert!(v.get("tripartite").is_none());
}

#[test]
fn analyze_unaccelerated_rob_matches_inertial() {
    let a = report(r#"{"setting": "a", "s": 0.828727, "r": 0}"#);
    let i = report(r#"{"setting": "inertial", "s": 0.828727}"#);
    for key in ["i2", "a_given_r", "r_given_a", "e2"] {
        assert_eq!(a[key], i[key], "{key}");
    }
    assert!(f(&a, &["tripartite", "residual_discord"]).abs() < 1e-9);
}

#[test]
fn analyze_sudden_death_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    std::fs::write(&path, r#"{"setting": "b", "s": 0.3, "w": 2, "r": 2}"#).unwrap();
    let out = gaussia().args(["analyze", "--scenario"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(f(&v, &["e2", "closed"]), 0.0);
    assert!(f(&v, &["e2", "estimated"]) <= 2e-4);
    assert!(f(&v, &["a_given_r", "discord"]) > 0.0);
    assert!(f(&v, &["r_given_a", "discord"]) > 0.0);
}

#[test]
fn exit_codes() {
    assert_eq!(analyze("{not json").status.code(), Some(2));
    assert_eq!(analyze(r#"{"setting": "a", "s": -1}"#).status.code(), Some(2));
    assert_eq!(analyze(r#"{"setting": "c", "s": 1}"#).status.code(), Some(2));
    let missing = gaussia().args(["analyze", "--scenario", "/no/such/file.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    // Beyond double precision for the numeric pipeline.
    let far = analyze(r#"{"setting": "a", "s": 0.5, "r": 25}"#);
    assert_eq!(far.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&far.stderr).contains("numeric failure"));
    let unwritable = gaussia()
        .args(["figure", "--which", "fig2a", "--out", "/no/such/dir/fig.csv"])
        .output()
        .unwrap();
    assert_eq!(unwritable.status.code(), Some(4));
    let bad_threads = gaussia().env("GAUSSIA_THREADS", "zero").args(["validate"]).output().unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}

fn figure(which: &str, out: &Path, threads: Option<&str>) -> Vec<u8> {
    let mut cmd = gaussia();
    if let Some(n) = threads {
        cmd.env("GAUSSIA_THREADS", n);
    }
    let status = cmd.args(["figure", "--which", which, "--out"]).arg(out).status().unwrap();
    assert!(status.success());
    std::fs::read(out).unwrap()
}

#[test]
fn figure_csv_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    for which in ["fig2a", "fig2b", "fig3"] {
        let one = figure(which, &dir.path().join("a.csv"), Some("1"));
        let many = figure(which, &dir.path().join("b.csv"), Some("3"));
        let default = figure(which, &dir.path().join("c.csv"), None);
        assert_eq!(one, many, "{which}");
        assert_eq!(one, default, "{which}");
        let text = String::from_utf8(one).unwrap();
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().count(), 122);
        let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(&first[..7], &["0", "2", "1", "1", "1", "1", "1"], "{which}");
    }
}

#[test]
fn sweep_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv_out = dir.path().join("s.csv");
    let spec = serde_json::json!({
        "scenario": {"setting": "a", "s": 0.828727},
        "parameter": "r", "start": 0.0, "stop": 2.0, "steps": 5,
        "output": csv_out,
    });
    let spec_path = dir.path().join("spec.json");
    std::fs::write(&spec_path, spec.to_string()).unwrap();
    assert!(gaussia().args(["sweep", "--spec"]).arg(&spec_path).status().unwrap().success());
    let text = std::fs::read_to_string(&csv_out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,I2,J2_A_given_R,J2_R_given_A,D2_A_given_R,D2_R_given_A,E2");
    assert_eq!(lines.len(), 6);
    assert!(lines[3].starts_with("1,1.2469098"));

    let json_out = dir.path().join("s.json");
    let mut spec = spec;
    spec["output"] = serde_json::json!(json_out);
    spec["format"] = serde_json::json!("json");
    std::fs::write(&spec_path, spec.to_string()).unwrap();
    assert!(gaussia().args(["sweep", "--spec"]).arg(&spec_path).status().unwrap().success());
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(&json_out).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 5);
    assert_eq!(rows[4]["r"], 2.0);

    spec["parameter"] = serde_json::json!("w");
    std::fs::write(&spec_path, spec.to_string()).unwrap();
    assert_eq!(gaussia().args(["sweep", "--spec"]).arg(&spec_path).status().unwrap().code(), Some(2));
    spec["parameter"] = serde_json::json!("r");
    spec["output"] = serde_json::json!("/no/such/dir/out.json");
    std::fs::write(&spec_path, spec.to_string()).unwrap();
    assert_eq!(gaussia().args(["sweep", "--spec"]).arg(&spec_path).status().unwrap().code(), Some(4));
}

#[test]
fn validate_passes() {
    let out = gaussia().args(["validate", "--grid", "coarse"]).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("PASS I2 cross-check"));
    assert!(!text.contains("FAIL"));
}
