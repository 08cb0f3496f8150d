use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const IDS: &[&str] = &[
    "tensor-product",
    "strongly-stable",
    "grobner-flag",
    "wxyz-embedding",
    "gotzmann-counterexample",
    "cl-kk-grid",
];

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hilbert-embed"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn registered_examples_pass() {
    for id in IDS {
        let out = run(&["paper-example", id]);
        let r = report(&out);
        assert_eq!(out.status.code(), Some(0), "{id}: {r}");
        assert_eq!(r["status"], "pass");
        assert!(r["claims"].as_array().is_some_and(|c| !c.is_empty()));
    }
}

#[test]
fn reports_are_identical_across_runs_and_workers() {
    let a = run(&["paper-example", "tensor-product", "--workers", "1"]);
    let b = run(&["paper-example", "tensor-product", "--workers", "4"]);
    let c = run(&["paper-example", "tensor-product", "--workers", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
}

#[test]
fn failing_claim_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let ring = write(dir.path(), "r.json", r#"{"vars":["x","y"],"relations":["x^2"],"cap":2}"#);
    let good = write(dir.path(), "good.json", r#"{"degrees":{"1":["x","y"],"2":["x*y","y^2"]}}"#);
    let bad = write(dir.path(), "bad.json", r#"{"degrees":{"1":["y","x"],"2":["x*y","y^2"]}}"#);
    let ok = run(&["check-order", "--ring", arg(&ring), "--order", arg(&good)]);
    assert_eq!(ok.status.code(), Some(0));
    let out = run(&["check-order", "--ring", arg(&ring), "--order", arg(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["results"]["violation"]["kind"], "not_minimal");
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let typo = write(dir.path(), "typo.json", r#"{"vars":["x"],"relation":["x^3"],"cap":3}"#);
    let out = run(&["lattice-check", "--ring", arg(&typo)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out)["error"].as_str().unwrap().contains("relation"));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["paper-example", "unknown"]).status.code(), Some(2));
    assert_eq!(run(&["cl-growth", "--e", "2,0", "1", "1"]).status.code(), Some(2));
}

#[test]
fn stabilize_reports_z_stable_output() {
    let dir = tempfile::tempdir().unwrap();
    let ring = write(dir.path(), "r.json", r#"{"vars":["x"],"cap":3}"#);
    let ideal = write(dir.path(), "i.json", r#"{"gens":["x*z"]}"#);
    let out = run(&["stabilize", "--ring", arg(&ring), "--ideal", arg(&ideal)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["ideal"]["gens"], serde_json::json!(["x^2"]));
    assert_eq!(r["results"]["series"], "(0,0,1,2)");
}

#[test]
fn classical_growth_tables() {
    let r = report(&run(&["cl-growth", "--e", "2,2,2", "1", "2"]));
    assert_eq!(r["results"]["growth"], 3);
    let r = report(&run(&["macaulay-growth", "3", "2", "3"]));
    assert_eq!(r["results"]["growth"], "6");
    let r = report(&run(&["cl-growth", "--e", "inf,inf,inf", "2", "3"]));
    assert_eq!(r["results"]["growth"], 6);
}

#[test]
fn extended_orders_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let ring = write(dir.path(), "r.json", r#"{"vars":["x","y"],"relations":["x^2","y^2"],"cap":3}"#);
    let order = write(dir.path(), "o.json", r#"{"degrees":{"1":["x","y"]}}"#);
    let out = run(&["cl-extend", "--ring", arg(&ring), "--order", arg(&order), "--t", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    let s = write(dir.path(), "s.json", &r["results"]["ring"].to_string());
    let tau = write(dir.path(), "tau.json", &r["results"]["order"].to_string());
    let check = run(&["check-order", "--ring", arg(&s), "--order", arg(&tau)]);
    assert_eq!(check.status.code(), Some(0));
}
