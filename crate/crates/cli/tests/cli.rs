//! End-to-end runs of the `germlab` binary on the corpus.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germlab")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{args:?}: {e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (v, out.status.code().unwrap())
}

fn path(name: &str) -> String {
    corpus(name).to_string_lossy().into_owned()
}

#[test]
fn invariants_of_s1() {
    let (v, code) = run_json(&["invariants", &path("s1.germ"), "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "invariants");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["mu_I"], 1);
    assert_eq!(v["mu_D"], 1);
    assert_eq!(v["mu_alt"], serde_json::json!([0, 1, 0]));
    assert_eq!(v["consistency"], "CONSISTENT");
}

#[test]
fn output_is_byte_identical_across_runs_and_cache_settings() {
    let f = path("h2.germ");
    let a = run(&["invariants", &f]);
    let b = run(&["invariants", &f]);
    let c = run(&["invariants", &f, "--no-cache"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn json_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["check", &path("cross_cap.germ"), "--json", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["command"], "check");
    assert_eq!(v["d"], 2);
}

#[test]
fn malformed_germs_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.germ");
    std::fs::write(
        &bad,
        r#"{"name":"bad","source_dim":2,"branches":[{"base_point_label":"p0","components":["x1^2","y^2","y^3"]}]}"#,
    )
    .unwrap();
    let (v, code) = run_json(&["invariants", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "NORMAL_FORM_VIOLATION");

    std::fs::write(&bad, r#"{"name":"bad","source_dim":2,"branches":[],"extra":1}"#).unwrap();
    let (v, code) = run_json(&["invariants", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "SCHEMA_VIOLATION");

    let (v, code) = run_json(&["invariants", dir.path().join("missing.germ").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "IO_ERROR");
}

#[test]
fn germs_and_families_are_not_interchangeable() {
    let (v, code) = run_json(&["invariants", &path("ruas.germ")]);
    assert_eq!((code, v["error"]["code"].as_str()), (1, Some("EXPECTED_GERM")));
    let (v, code) = run_json(&["equising", &path("s1.germ")]);
    assert_eq!((code, v["error"]["code"].as_str()), (1, Some("EXPECTED_FAMILY")));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(&["invariants"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn slices_and_verdicts() {
    let (v, code) = run_json(&["slice", &path("s1_n3.germ"), "--level", "2"]);
    assert_eq!(code, 0);
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 3);
    assert_eq!(levels[2]["germ"]["source_dim"], 1);

    let (v, code) = run_json(&["equising", &path("constant_s1.germ"), "--samples", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "WHITNEY_EQUISINGULAR");
    let (v, code) = run_json(&["equising", &path("ruas.germ")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "NOT_EQUISINGULAR");
}
