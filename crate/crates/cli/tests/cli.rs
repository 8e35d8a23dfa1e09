use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pronormal"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn pronormal")
}

fn j1_data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/j1_gf11.txt")
}

#[test]
fn psl27_exhaustive_passes() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let out = run(&["verify", "--group", "psl2", "--q", "7", "--mode", "exhaustive", "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("non-pronormal classes: Cyclic(2) (class size 21)"));
    assert!(text.contains("join closed: yes"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(report["version"], 1);
    assert_eq!(report["targets"][0]["group"]["order"], 168);
    assert_eq!(report["targets"][0]["comparison"]["match"], true);
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.json"));
        let out = run(&["verify", "--group", "psl2", "--q", "8", "--suite", "classify", "--jobs", "1", "--json", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        bodies.push(serde_json::to_string(&v).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn missing_j1_file_is_an_input_error() {
    let out = run(&["verify", "--group", "j1", "--gens", "/nonexistent/j1.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/j1.txt"));
}

#[test]
fn j1_without_generators_is_rejected() {
    assert_eq!(run(&["verify", "--group", "j1"]).status.code(), Some(2));
}

#[test]
fn malformed_j1_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "matrix 11 7 2\n1 2 3\n").unwrap();
    let out = run(&["verify", "--group", "j1", "--gens", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn bad_q_values_are_input_errors() {
    for args in [
        &["verify", "--group", "psl2", "--q", "6"][..],
        &["verify", "--group", "psl2", "--q", "11"][..],
        &["verify", "--group", "sz", "--q", "4"][..],
        &["verify", "--group", "psl2"][..],
        &["verify", "--group", "psl2", "--q", "17", "--mode", "exhaustive", "--jobs", "0"][..],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn exhaustive_mode_is_capped() {
    let out = run(&["verify", "--group", "psl2", "--q", "31", "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identities_suite_only_runs_identities() {
    let out = run(&["verify", "--group", "sz", "--q", "8", "--suite", "identities", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let t = &v["targets"][0];
    assert!(t["classes"].as_array().unwrap().is_empty());
    assert!(t["identities"].as_array().unwrap().len() > 5);
}

#[test]
fn stage_budget_overrun_warns() {
    let out = run(&["verify", "--group", "psl2", "--q", "8", "--suite", "classify", "--stage-budget", "0.000001"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("warning: PSL(2,8) stage"));
}

#[test]
fn j1_bundled_generators_load() {
    let out = run(&["verify", "--group", "j1", "--gens", j1_data().to_str().unwrap(), "--suite", "identities"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("order 175560"));
}
