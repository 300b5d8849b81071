//! End-to-end runs of the `eqchar` binary.

use std::process::{Command, Output};

fn eqchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqchar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verify_subset_passes() {
    let o = eqchar(&["verify", "--suite", "exterior,cartan,lie", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("exterior") && out.contains("cartan") && out.contains("lie"));
}

#[test]
fn unknown_suite_is_config_error() {
    assert_eq!(eqchar(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn zero_samples_is_config_error() {
    assert_eq!(eqchar(&["verify", "--suite", "lie", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn corrupted_sign_is_detected() {
    let o = eqchar(&["verify", "--suite", "getzler", "--samples", "4", "--corrupt-sign"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn output_is_deterministic() {
    let a = eqchar(&["verify", "--suite", "cartan,exterior", "--samples", "4", "--seed", "9", "--format", "json"]);
    let b = eqchar(&["verify", "--suite", "exterior", "--suite", "cartan", "--samples", "4", "--seed", "9", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid JSON");
    assert!(v.is_array() || v.is_object());
}

#[test]
fn compute_curvature() {
    let o = eqchar(&["compute", "--example", "trivial-r2", "--what", "curvature"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dx∧dy\n");
}

#[test]
fn compute_with_trivial_action() {
    let o = eqchar(&["compute", "--example", "trivial-r2", "--trivial-action"]);
    assert_eq!(stdout(&o), "dx∧dy\n");
}

#[test]
fn compute_hopf_moment_map() {
    let o = eqchar(&["compute", "--example", "hopf", "--what", "moment-map"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("z1*zb1"), "{}", stdout(&o));
}

#[test]
fn compute_requires_example() {
    assert_eq!(eqchar(&["compute"]).status.code(), Some(2));
    assert_eq!(eqchar(&["compute", "--example", "klein"]).status.code(), Some(2));
}

#[test]
fn export_writes_json() {
    let o = eqchar(&["export", "--example", "hopf", "--what", "char-form", "--polynomial", "X^2"]);
    assert_eq!(o.status.code(), Some(0));
    let _: serde_json::Value = serde_json::from_slice(&o.stdout).expect("valid JSON");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theta.json");
    let o = eqchar(&["export", "--example", "trivial-r2", "--what", "theta", "--p-max", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let _: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).expect("valid JSON");
}

#[test]
fn list_sections() {
    let all = stdout(&eqchar(&["list"]));
    for h in ["suites:", "algebras:", "actions:", "examples:", "quantities:"] {
        assert!(all.contains(h), "{all}");
    }
    let examples = stdout(&eqchar(&["list", "examples"]));
    assert!(examples.lines().any(|l| l == "hopf"));
    assert_eq!(eqchar(&["list", "bogus"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "suites = lie\nsamples = 3\nformat = json\n").unwrap();
    let cfg = path.to_str().unwrap();
    let from_file = eqchar(&["verify", "--config", cfg]);
    assert_eq!(from_file.status.code(), Some(0));
    let _: serde_json::Value = serde_json::from_slice(&from_file.stdout).expect("file selects JSON");
    let overridden = eqchar(&["verify", "--config", cfg, "--format", "plain"]);
    assert!(serde_json::from_slice::<serde_json::Value>(&overridden.stdout).is_err());

    std::fs::write(&path, "samples = many\n").unwrap();
    assert_eq!(eqchar(&["verify", "--config", cfg]).status.code(), Some(2));
}
