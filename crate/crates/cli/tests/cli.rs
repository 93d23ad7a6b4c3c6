use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn klow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klow"))
        .args(args)
        .env_remove("KLOW_CACHE")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", out))
}

fn stderr_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text
        .lines()
        .rev()
        .find(|l| l.starts_with('{'))
        .expect("error JSON on stderr");
    serde_json::from_str(line).unwrap()
}

fn without_timing(out: &Output) -> Value {
    let mut v = report(out);
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn k1_of_f4() {
    let out = klow(&["k1", "F4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(
        v["results"]["k1"],
        serde_json::json!({"free_rank": 0, "torsion": [3]})
    );
    assert_eq!(v["results"]["stable"], true);
}

#[test]
fn k0_of_product() {
    let v = report(&klow(&["k0", "F2xF2"]));
    assert_eq!(v["results"]["k0"]["free_rank"], 2);
}

#[test]
fn cone_suite_passes() {
    let out = klow(&["verify", "cone", "--ring", "Z4", "--window", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["results"]["pass"], true);
    let checks = v["results"]["suites"][0]["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .all(|c| c["pass"] == true && c.get("identity").is_some()));
}

#[test]
fn swan_rejects_f2() {
    let out = klow(&["swan", "--field", "F2"]);
    assert_eq!(out.status.code(), Some(4));
    let e = stderr_json(&out);
    assert_eq!(e["error"], "field_too_small");
    assert!(e["message"].as_str().unwrap().contains("at least 3"));
}

#[test]
fn swan_over_f3() {
    let v = report(&klow(&["swan", "--field", "F3"]));
    assert_eq!(v["results"]["split_exactness_fails"], true);
    assert_eq!(v["results"]["ideal_k1"]["torsion"], serde_json::json!([3]));
}

#[test]
fn budget_exceeded_exit_code() {
    let out = klow(&["k1", "M2F3", "--levels", "2", "--gl-budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"], "budget_exceeded");
}

#[test]
fn unknown_ring_is_bad_input() {
    let out = klow(&["k0", "NoSuchRing"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn usage_error_is_bad_input() {
    assert_eq!(klow(&["frobnicate"]).status.code(), Some(4));
}

#[test]
fn boundary_of_unit() {
    let out = klow(&["boundary", "--extension", "Z4_2Z4", "--element", "[[1]]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["class_is_zero"], true);
    let out = klow(&[
        "boundary",
        "--extension",
        "Z4_2Z4",
        "--element",
        "[[1]]",
        "--lift",
        "[[2]]",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stderr_json(&out)["error"], "lift_mismatch");
}

#[test]
fn exactness_verdict() {
    let v = report(&klow(&["exactness", "--extension", "F3eps_eps"]));
    assert_eq!(v["results"]["exact"], true);
    assert_eq!(v["flags"]["finite_truncation"], true);
}

#[test]
fn homology_commands() {
    let v = report(&klow(&["hc", "Q", "--nmax", "4"]));
    assert_eq!(v["results"]["hc"], serde_json::json!([1, 0, 1, 0, 1]));
    let v = report(&klow(&["hbar", "sqzero1", "--nmax", "2"]));
    assert_eq!(v["results"]["hbar"], serde_json::json!([1, 1, 1]));
    let v = report(&klow(&["excision-verdict", "sqzero1"]));
    assert_eq!(v["results"]["verdict"]["status"], "obstructed");
    assert_eq!(v["results"]["verdict"]["degree"], 0);
    let v = report(&klow(&["excision-verdict", "Q"]));
    assert_eq!(v["results"]["verdict"]["status"], "unital");
    assert_eq!(v["results"]["rerouted"]["pass"], true);
}

#[test]
fn algebra_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nil.json");
    std::fs::write(&path, r#"{"name": "nil", "dim": 1, "constants": ["0"]}"#).unwrap();
    let v = report(&klow(&[
        "excision-verdict",
        path.to_str().unwrap(),
        "--nmax",
        "1",
    ]));
    assert_eq!(v["results"]["verdict"]["status"], "obstructed");
}

#[test]
fn config_budget_applies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, r#"{"budgets": {"tensor_dim": 10}}"#).unwrap();
    let out = klow(&[
        "--config",
        path.to_str().unwrap(),
        "hc",
        "M2Q",
        "--nmax",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_all_is_deterministic() {
    let a = klow(&["verify", "all"]);
    let b = klow(&["verify", "all"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_timing(&a), without_timing(&b));
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect()
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = klow(&["k1", "F3eps", "--cache-dir", d]);
    let files = cache_files(dir.path());
    assert!(!files.is_empty());
    let warm = klow(&["k1", "F3eps", "--cache-dir", d]);
    assert_eq!(without_timing(&cold), without_timing(&warm));

    std::fs::write(&files[0], b"not json").unwrap();
    let repaired = klow(&["k1", "F3eps", "--cache-dir", d]);
    assert_eq!(without_timing(&cold), without_timing(&repaired));
    assert!(String::from_utf8_lossy(&repaired.stderr).contains("evicted"));

    let cleared = report(&klow(&["cache", "clear", "--cache-dir", d]));
    assert!(cleared["results"]["cleared"].as_u64().unwrap() >= 1);
    assert!(cache_files(dir.path()).is_empty());
    let again = klow(&["k1", "F3eps", "--cache-dir", d]);
    assert_eq!(without_timing(&cold), without_timing(&again));
}

#[test]
fn cache_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_klow"))
        .args(["k0", "F2"])
        .env("KLOW_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(!cache_files(dir.path()).is_empty());
}

#[test]
fn ring_catalog() {
    let v = report(&klow(&["ring", "list"]));
    assert!(v["results"]["rings"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["name"] == "T2_F3"));
    let v = report(&klow(&["ring", "show", "F4"]));
    assert_eq!(v["results"]["order"], 4);
    assert_eq!(v["results"]["units"], 3);
}
