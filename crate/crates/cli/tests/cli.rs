use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn symmetrix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symmetrix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn script(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/scripts")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn verify_pass_and_schema() {
    let o = symmetrix(&[
        "verify",
        "pi2",
        "--model",
        "second-order-dd",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let recs = records(&o);
    assert_eq!(recs.len(), 1);
    let r = recs[0].as_object().unwrap();
    let mut keys: Vec<&str> = r.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["check", "samples", "status", "witness"]);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["samples"], 20);
    assert!(r["witness"].is_null());
}

#[test]
fn verify_norm_passes() {
    let o = symmetrix(&[
        "verify",
        "mult",
        "--model",
        "norm-sqrt2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(records(&o).iter().all(|r| r["status"] == "pass"));
}

#[test]
fn verify_failure_exits_two_with_witness() {
    let o = symmetrix(&[
        "verify",
        "mult",
        "--model",
        "deriv-square",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let r = &records(&o)[0];
    assert_eq!(r["status"], "fail");
    assert!(r["witness"].as_str().unwrap().starts_with("x=t, y=t:"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["verify", "cubic", "--model", "square"],
        vec!["verify", "mult", "--model", "nope"],
        vec!["verify", "spadesuit", "--model", "square"],
        vec!["verify", "mult", "--model", "square", "--samples", "0"],
        vec!["symmetrize"],
        vec!["symmetrize", "--expr", "x", "--input", "f"],
        vec!["moments", "--model", "ddd"],
        vec!["frobnicate"],
    ] {
        let o = symmetrix(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn parse_errors_carry_position() {
    let o = symmetrix(&["parse", "--expr", "eq bad: q(x) = 1;"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("<expr>:1:9: undeclared symbol q"), "{err}");
}

#[test]
fn symmetrize_script() {
    let o = symmetrix(&["symmetrize", "--input", &script("add.sym")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("add: "));
    let o = symmetrix(&[
        "symmetrize",
        "--expr",
        "biadditive B; eq e: B(x,x)*x = 0;",
        "--degree",
        "3",
    ]);
    assert_eq!(
        stdout(&o),
        "e: 1/3*x1*B(x2,x3) + 1/3*x2*B(x1,x3) + 1/3*x3*B(x1,x2)\n"
    );
}

#[test]
fn non_homogeneous_is_rejected() {
    let o = symmetrix(&[
        "symmetrize",
        "--expr",
        "additive a; eq e: a(x)*x + x = 0; degree e 2;",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn specialize_script() {
    let o = symmetrix(&["specialize", "--input", &script("mult.sym")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "mult at (1, 1, 1, 1): B(1,1) - B(1,1)^2");
    assert_eq!(
        lines[2],
        "mult at (x, x, 1, 1): 1/3*B(x,x) - 2/3*a(x)^2 + 1/3*a(x^2)"
    );
}

#[test]
fn parse_prints_canonically() {
    let first = symmetrix(&["parse", "--input", &script("moment_quartic.sym")]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    let second = symmetrix(&["parse", "--expr", &text]);
    assert_eq!(stdout(&second), text);
}

#[test]
fn moments_output() {
    let o = symmetrix(&["moments", "--rank", "1", "--bound", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("B_2 = a_1^2 + a_2\n"));
    let o = symmetrix(&["moments", "--rank", "2", "--bound", "2", "--format", "json"]);
    let recs = records(&o);
    assert!(recs
        .iter()
        .any(|r| r["index"] == "(1,1)" && r["bell"] == "a_0_1*a_1_0 + a_1_1"));
    assert!(recs
        .iter()
        .filter(|r| r.get("status").is_some())
        .all(|r| r["status"] == "pass"));
    let o = symmetrix(&["moments", "--bound", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("B_0 = 1\n"));
}

#[test]
fn same_seed_same_bytes() {
    let args = [
        "verify",
        "parallelogram",
        "--model",
        "moment-hom",
        "--seed",
        "42",
        "--samples",
        "5",
    ];
    let a = symmetrix(&args);
    let b = symmetrix(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
