//! End-to-end runs of the `cmlval` binary.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn cmlval(args: &[&str]) -> Output {
    cmlval_with(args, None)
}

fn cmlval_with(args: &[&str], fixture_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cmlval"));
    cmd.args(args).env_remove("CMLVAL_FIXTURE_DIR");
    if let Some(dir) = fixture_dir {
        cmd.env("CMLVAL_FIXTURE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn table1a_json_passes() {
    let out = cmlval(&["lv", "tables", "--suite", "table1a", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    let rows = v["results"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 18);
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["lv", "value", "--id", "f16.3.c.a", "--format", "json"];
    let a = cmlval(&args);
    let b = cmlval(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn u6_at_i() {
    let out = cmlval(&["mf", "eval", "--fn", "u6", "--tau", "i"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("value = 0.9889401507598757630468652029059160"), "{}", stdout(&out));
}

#[test]
fn clausen_transform_verifies() {
    let out = cmlval(&["hg", "verify", "--id", "clausen", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("max residual"));
}

#[test]
fn hypergeometric_value() {
    let out = cmlval(&["hg", "eval", "--upper", "1/2,1/2", "--lower", "1", "--z", "1/2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let value = v["results"][0]["values"].as_array().unwrap().iter().find(|e| e[0] == "value").unwrap()[1].clone();
    assert!(value.as_str().unwrap().starts_with("1.18034059901609622604"), "{}", value);
}

#[test]
fn fourier_coefficients() {
    let out = cmlval(&["arith", "ap", "--form", "f16.3.c.a", "--count", "13"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("a_5 = -6") && s.contains("a_13 = 10"), "{}", s);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["lv", "tables", "--suite", "nope"][..],
        &["arith", "traces", "--prime-bound", "4"],
        &["mf", "eval", "--fn", "zeta", "--tau", "i"],
        &["mf", "eval", "--fn", "j", "--tau", "-i"],
        &["lv", "value", "--id", "f16.3.c.a", "--precision", "8"],
        &["lv", "value", "--id", "f16.3.c.a", "--tolerance", "0"],
        &["lv", "value", "--id", "f16.3.c.a", "--tolerance", "1e-90"],
        &["frobnicate"],
    ] {
        let out = cmlval(&[args, &["--format", "json"]].concat());
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        let v = json(&out);
        assert_eq!(v["pass"], false);
        assert!(!v["failures"].as_array().unwrap().is_empty());
    }
}

#[test]
fn tolerance_override_applies() {
    let out = cmlval(&["lv", "value", "--id", "f16.3.c.a", "--tolerance", "1e-80", "--precision", "320", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"][0]["identity_tolerance"], 1e-80);
}

#[test]
fn unknown_form_fails() {
    let out = cmlval(&["lv", "value", "--id", "f1.3.a.a", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["failures"].as_array().unwrap().len(), 1);
}

#[test]
fn pole_is_a_failure_not_a_crash() {
    let out = cmlval(&["hg", "eval", "--upper", "1/2,1/2", "--lower", "1", "--z", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn injected_fixture_fails() {
    let dir = tempfile::tempdir().unwrap();
    let tables = include_str!("../../core/fixtures/tables.txt");
    let tampered = tables.replacen("f144.3.g.a 9 ", "f144.3.g.a 10", 1);
    assert_ne!(tables, tampered);
    std::fs::write(dir.path().join("tables.txt"), tampered).unwrap();
    let out = cmlval_with(&["lv", "tables", "--suite", "table1a", "--format", "json"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["failures"].as_array().unwrap().len(), 1);
    assert!(v["failures"][0].as_str().unwrap().contains("d=6,t=1"), "{}", v["failures"]);

    std::fs::write(dir.path().join("u6.txt"), "i 1\n").unwrap();
    let out = cmlval_with(&["mf", "verify", "--samples", "1", "--format", "json"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    let failures = json(&out)["failures"].clone();
    assert_eq!(failures.as_array().unwrap().len(), 1, "{}", failures);
    assert!(failures[0].as_str().unwrap().starts_with("special_values/"), "{}", failures);
    std::fs::write(dir.path().join("tables.txt"), "table1a 6 1\n").unwrap();
    let out = cmlval_with(&["lv", "tables", "--suite", "table1a"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = cmlval(&["mf", "eval", "--fn", "j", "--tau", "i", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "mf eval");
}
