use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sylow-chars"))
        .args(args)
        .env_remove("SYLOWCHAR_BUDGET")
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn num(v: &Value) -> (String, String) {
    (v["num"].as_str().unwrap().to_string(), v["den"].as_str().unwrap().to_string())
}

#[test]
fn gamma_values() {
    let v = json_of(&["gamma", "--p", "3", "--k", "2", "--levels", "1", "--u", "10"]);
    assert_eq!(num(&v["value"]), ("6".into(), "1".into()));
    assert_eq!(v["mode"], "closed");
    assert_eq!(v["u"], "10");
    let v = json_of(&["gamma", "--p", "3", "--k", "2", "--levels", "1", "--u", "00"]);
    assert_eq!(num(&v["value"]), ("-3".into(), "1".into()));
    for mode in ["closed", "recursive", "oracle"] {
        let v = json_of(&["gamma", "--p", "3", "--k", "2", "--levels", "1,2", "--u", "11", "--mode", mode]);
        assert_eq!(num(&v["value"]), ("0".into(), "1".into()), "{mode}");
    }
}

#[test]
fn induce_values() {
    for (u, ct, want) in [("11", "3", "160"), ("01", "3", "-80"), ("11", "3,3", "16")] {
        let v = json_of(&["induce", "--p", "3", "--n", "9", "--u", u, "--cycle-type", ct]);
        assert_eq!(num(&v["value"]), (want.into(), "1".into()), "{u} {ct}");
        assert_eq!(v["fixed_points"], json!(9 - ct.split(',').count() * 3));
    }
    let v = json_of(&["induce", "--p", "3", "--n", "9", "--u", "11", "--cycle-type", "3,3,3", "--mode", "auto"]);
    assert_eq!(v["mode"], "oracle");
}

#[test]
fn classify_regression_pair() {
    let v = json_of(&["classify", "--p", "3", "--s", "100,011", "--t", "101,010"]);
    assert_eq!(v["n_conjugate"], false);
    assert_eq!(v["induced_equal"], false);
    assert_eq!(v["witness"]["cycle_type"], json!([3, 27]));
    let sums = v["witness"]["class_sums"].as_array().unwrap();
    let unit = 3i64.pow(12);
    assert_eq!(num(&sums[0]).0, (-10 * unit).to_string());
    assert_eq!(num(&sums[1]).0, (8 * unit).to_string());

    let v = json_of(&["classify", "--p", "3", "--s", "100,011", "--t", "011,100"]);
    assert_eq!(v["n_conjugate"], true);
    assert_eq!(v["induced_equal"], true);
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn exit_codes() {
    // usage: clap rejects a missing flag, the library rejects a non-prime
    assert_eq!(run(&["gamma", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["gamma", "--p", "4", "--levels", "1", "--u", "1"]).status.code(), Some(2));
    assert_eq!(run(&["gamma", "--p", "3", "--k", "3", "--levels", "1", "--u", "1"]).status.code(), Some(2));
    let refused = run(&["induce", "--p", "3", "--n", "27", "--u", "111", "--cycle-type", "3,3,3", "--budget", "100"]);
    assert_eq!(refused.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("budget"));
    let env = Command::new(env!("CARGO_BIN_EXE_sylow-chars"))
        .args(["gamma", "--p", "3", "--levels", "1", "--u", "11", "--mode", "oracle"])
        .env("SYLOWCHAR_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
}

#[test]
fn other_formats() {
    let out = run(&["induce", "--p", "3", "--n", "9", "--u", "11", "--cycle-type", "3,3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let at = |key: &str| row[header.iter().position(|h| *h == key).unwrap()];
    assert_eq!(at("value"), "16/1");
    assert_eq!(at("cycle_type"), "3;3");

    let out = run(&["gamma", "--p", "3", "--levels", "2", "--u", "11", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("value") && l.ends_with("36/1")), "{text}");
}

#[test]
fn verify_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gamma.json");
    let out = run(&["verify", "gamma", "--p", "3", "--kmax", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["totals"]["fail"], 0);
    assert_eq!(report["totals"]["pass"], 14);
    assert!(report.get("elapsed_ms").is_none());

    let v = json_of(&["verify", "theorem-a", "--p", "3", "--n", "9"]);
    assert_eq!(v["summary"]["induced_classes"], 4);

    let suites = ["verify", "suites", "--seed", "7", "--instances", "50", "--pairs", "200", "--specs", "4"];
    let a = run(&suites);
    let b = run(&suites);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);

    let timed = json_of(&["verify", "gamma", "--p", "2", "--kmax", "2", "--timing"]);
    assert!(timed["elapsed_ms"].is_u64());
}
