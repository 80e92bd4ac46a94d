use std::process::{Command, Output};

use serde_json::Value;

fn tate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tate"))
        .args(args)
        .env_remove("TH_DEFAULT_WINDOW")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

fn ok(args: &[&str]) -> String {
    let o = tate(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    serde_json::from_str(&ok(&a)).expect("valid JSON")
}

#[test]
fn residue_example() {
    assert_eq!(ok(&["residue", "1*x^(-1) @[-2,2]"]), "1");
}

#[test]
fn boundary_example() {
    assert_eq!(ok(&["boundary", "--fgl", "mult:1", "1*x^(-2) @[-4,4]", "--kmax", "0"]), "-1");
}

#[test]
fn boundary_json_matches_text() {
    let args = ["boundary", "--fgl", "mult:1", "1*x^(-2) @[-4,4]", "--kmax", "2"];
    let text = ok(&args);
    let j = json(&args);
    let from_json: Vec<&str> = j["b"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let from_text: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(from_json, from_text);
}

#[test]
fn gram_json_matches_text() {
    let args = ["gram", "--range", "-2..1"];
    let text = ok(&args);
    let j = json(&args);
    let rows: Vec<String> = j["matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let cells: Vec<&str> = r.as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    assert_eq!(rows.join("\n"), text);
}

#[test]
fn emitted_series_reparse() {
    let inv = ok(&["nilgroup", "invert", "1*eps^1 + 1*x^(1) @[0,6]"]);
    let back = ok(&["nilgroup", "invert", &inv]);
    let j = json(&["nilgroup", "invert", &inv]);
    assert_eq!(j["literal"].as_str().unwrap(), back);
    assert!(back.starts_with("1*eps^1*x^(0) + 1*x^(1)"), "{back}");
}

#[test]
fn embed_and_pair() {
    let e = ok(&["embed", "1*x^(1) + 2 @[0,1]"]);
    assert_eq!(e, "-1/2*pi^(-1/2)*x^(-3/2) + 2*pi^(-1/2)*x^(-1/2) @[-3/2,-1/2]");
    assert_eq!(ok(&["pair", "1*x^(-1/2) @[-1/2,2]", "1*x^(1/2) @[1/2,2]"]), "1/2");
}

#[test]
fn schurq_evaluation() {
    assert_eq!(ok(&["fock", "schurq", "3,1", "--vars", "1,2,3"]), "1440");
}

#[test]
fn givental_report() {
    let j = json(&["givental", "--H", "-1,1", "--E", "0,0;1,0", "--range", "-3..2"]);
    assert_eq!(j["antisymmetric"], Value::Bool(true));
    let text = ok(&["givental", "--H", "-1,1", "--E", "0,0;1,0", "--range", "-3..2"]);
    assert!(text.contains("antisymmetric: true"));
}

#[test]
fn default_window_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_tate"))
        .args(["embed", "1*x^(1)"])
        .env("TH_DEFAULT_WINDOW", "-2,3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1/2*pi^(-1/2)*x^(-3/2) @[-7/2,3/2]");
    assert_eq!(ok(&["embed", "1*x^(1)"]), "-1/2*pi^(-1/2)*x^(-3/2) @[-17/2,15/2]");
}

#[test]
fn exit_codes() {
    assert_eq!(tate(&["residue", "garbage"]).status.code(), Some(2));
    assert_eq!(tate(&["nilgroup", "invert", "1 + 1*x^(1) @[0,4]"]).status.code(), Some(1));
    let o = tate(&["bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn selftest_passes() {
    let o = tate(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("PASS")).count(), 10);
}
