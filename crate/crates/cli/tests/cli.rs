use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmweyl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cmweyl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn validate_builtin_points() {
    for name in ["@zero", "@n2", "@n0", "@n1(1/2,-3)"] {
        let o = run(&["validate", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert_eq!(json(&o)["valid"], Value::Bool(true));
    }
}

#[test]
fn invalid_point_exits_one() {
    let o = run(&[
        "validate",
        r#"{"n":1,"X":[["0"]],"Y":[["0"]],"i":["1"],"j":["0"]}"#,
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["valid"], Value::Bool(false));
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(run(&["validate", "{not json"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "@nowhere"]).status.code(), Some(2));
    assert_eq!(
        run(&["--trunc", "40", "envelope-check", "@zero"])
            .status
            .code(),
        Some(2)
    );
    let o = run(&["groebner", r#"{"generators":[{"terms":[]}]}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"].is_string());
}

#[test]
fn omega_then_groebner_then_theta() {
    let o = run(&["omega", "@n2"]);
    assert_eq!(o.status.code(), Some(0));
    let ideal = String::from_utf8(o.stdout).unwrap();
    let g = run_stdin(&["groebner", "-"], &ideal);
    assert_eq!(g.status.code(), Some(0));
    assert_eq!(json(&g)["complement"].as_array().unwrap().len(), 2);
    let t = run_stdin(&["theta", "-"], &ideal);
    assert_eq!(t.status.code(), Some(0));
    let point = json(&t)["point"].to_string();
    let e = run(&["equiv", &point, "@n2"]);
    assert_eq!(e.status.code(), Some(0));
    assert_eq!(json(&e)["equivalent"], Value::Bool(true));
}

#[test]
fn roundtrip_with_both_tie_breaks() {
    for tie in ["max-l", "min-l"] {
        let o = run(&["--tie-break", tie, "roundtrip", "@n1(1,-2)"]);
        assert_eq!(o.status.code(), Some(0), "{tie}");
        assert_eq!(json(&o)["lambda_match"], Value::Bool(true));
    }
}

#[test]
fn inequivalent_points_report_a_witness() {
    let o = run(&["equiv", "@zero", "@n1(1,0)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["witness"].is_string());
}

#[test]
fn envelope_checks() {
    let ok = run(&["envelope-check", "@zero"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["envelope-check", "@zero", "--perturb", "1,0,1"]);
    assert_eq!(bad.status.code(), Some(1));
    let report = json(&bad);
    let entry = report
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["axiom"] == "homotopy_associativity_k0")
        .expect("entry present")
        .clone();
    assert_eq!(entry["pass"], Value::Bool(false));
    assert_eq!(run(&["dg-check", "@n2"]).status.code(), Some(0));
}

#[test]
fn act_moves_the_point() {
    let aut = r#"{"generators":[{"type":"shift_y","poly":["0","1"]}]}"#;
    let o = run(&["act", "@n1(1,0)", "--aut", aut]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["Y"], serde_json::json!([["-1"]]));
    let bad = r#"{"generators":[{"type":"linear","matrix":["2","0","0","2"]}]}"#;
    assert_eq!(run(&["act", "@zero", "--aut", bad]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let first = run(&["omega", "@n2"]).stdout;
    let second = run(&["omega", "@n2"]).stdout;
    assert_eq!(first, second);
    let ideal = String::from_utf8(first).unwrap();
    let t1 = run_stdin(&["--seed", "3", "theta", "-"], &ideal).stdout;
    let t2 = run_stdin(&["--seed", "3", "theta", "-"], &ideal).stdout;
    assert_eq!(t1, t2);
}

#[test]
fn lambda_and_kappa() {
    let l = run(&["--lambda-bound", "2", "lambda", "@n1(1,0)"]);
    assert_eq!(l.status.code(), Some(0));
    let k = run(&["kappa", "@n2"]);
    assert_eq!(k.status.code(), Some(0));
    let v = json(&k);
    assert_eq!(v["chi_kappa_is_one"], Value::Bool(true));
    assert_eq!(v["series_matches_lambda"], Value::Bool(true));
}
