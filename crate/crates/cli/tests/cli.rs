//! Runs the built binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modcurve")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn genus_examples() {
    let v = json(&["genus", "--q", "8"]);
    assert_eq!(v["result"]["g_q"], "5");
    let v = json(&["genus", "--q", "8", "--n", "1"]);
    assert_eq!(v["result"]["g_q^1"], "0");
    assert_eq!(v["result"]["h"], "6");
    assert_eq!(v["result"]["R"], "24");
    let v = json(&["genus", "--q", "2"]);
    assert_eq!(v["result"]["g_q"], "0");
    assert!(v["result"]["note"].is_string());
}

#[test]
fn cusp_examples() {
    let v = json(&["cusps", "--q", "8", "--n", "1", "--widths"]);
    let mut widths: Vec<i64> =
        v["result"]["orbits"].as_array().unwrap().iter().map(|o| o["width"].as_str().unwrap().parse().unwrap()).collect();
    widths.sort();
    assert_eq!(widths, [1, 1, 2, 4, 8, 8]);
    let v = json(&["cusps", "--q", "4", "--n", "1", "--widths"]);
    assert!(v["result"]["width_source"].as_str().unwrap().contains("scan"));
    let v = json(&["cusps", "--q", "8", "--n", "8"]);
    let orbits = v["result"]["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 24);
    assert!(orbits.iter().all(|o| o["width"] == "8"));
    assert_eq!(code(&["cusps", "--q", "61"]), 2);
}

#[test]
fn equation_examples() {
    let v = json(&["equation", "--q", "8", "--normalize", "--solve-constants"]);
    assert_eq!(v["result"]["equation"], "y^8 = x^2*(x-1)*(x+1)");
    let rows = v["result"]["rotations"].as_array().unwrap();
    let cells: Vec<(&str, &str, &str)> =
        rows.iter().map(|r| (r["cusp"].as_str().unwrap(), r["k"].as_str().unwrap(), r["m"].as_str().unwrap())).collect();
    assert_eq!(cells, [("1/0", "1", "1"), ("3/8", "1", "1"), ("1/4", "1", "2"), ("1/2", "1", "4")]);
    assert_eq!(json(&["equation", "--q", "7", "--normalize"])["result"]["equation"], "y^7 = x*(x-1)^2");
    let v = json(&["equation", "--q", "10", "--normalize"]);
    assert_eq!(v["result"]["equation"], "y^10 = x*(x-1)^2*(x-q1)^5*(x-q2)^5*(x-q3)^8");
    assert_eq!(v["result"]["undetermined"].as_array().unwrap().len(), 3);
    assert_eq!(code(&["equation", "--q", "11"]), 3);
    assert_eq!(code(&["equation", "--q", "10", "--solve-constants"]), 3);
    assert_eq!(code(&["equation", "--q", "8", "--convention", "sideways"]), 2);
}

#[test]
fn group_examples() {
    let v = json(&["group", "--q", "10", "--max-order"]);
    assert_eq!(v["result"]["max_order"], "15");
    assert_eq!(v["result"]["type"], "I");
    let v = json(&["group", "--q", "8", "--center"]);
    assert_eq!(v["result"]["center_order"], "2");
    let v = json(&["group", "--q", "8", "--cusp-maps", "inf", "3/8"]);
    assert_eq!(v["result"]["count"], "8");
    // the closed form is contradicted at q = 15
    assert_eq!(code(&["group", "--q", "15", "--max-order"]), 1);
    assert_eq!(code(&["group", "--q", "41"]), 2);
}

#[test]
fn verify_examples() {
    let v = json(&["verify", "--tables", "1", "--q-max", "20"]);
    assert_eq!(v["checks"].as_array().unwrap().len(), 40);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert_eq!(code(&["verify", "--oracles", "--q-max", "24"]), 0);
    assert_eq!(code(&["verify", "--canonical"]), 0);
    assert_eq!(code(&["verify", "--tables", "2,6,7"]), 0);
    assert_eq!(code(&["verify", "--iso", "--seed", "5"]), 0);
    assert_eq!(code(&["verify", "--tables", "3"]), 2);
}

#[test]
fn canonical_and_lift() {
    let v = json(&["canonical", "--eliminate"]);
    assert_eq!(v["result"]["elimination_a"], "-1");
    assert_eq!(v["result"]["family_size"], "8");
    assert_eq!(v["result"]["preserving"].as_array().unwrap().len(), 8);
    assert_eq!(v["result"]["sigma0_image"], serde_json::json!(["0", "0", "0", "-2", "1"]));
    assert_eq!(json(&["canonical", "--a", "2"])["result"]["preserving"], serde_json::json!([]));
    assert_eq!(code(&["canonical", "--a", "1/2"]), 3);
    assert_eq!(code(&["canonical", "--a", "x"]), 2);
    let v = json(&["lift-solve"]);
    assert_eq!(v["result"]["solutions"], serde_json::json!(["-1"]));
    assert_eq!(v["result"]["solved"], "y^8 = x^2*(x-1)*(x+1)");
    assert_eq!(code(&["lift-solve", "--q", "7"]), 3);
}

#[test]
fn argument_errors() {
    assert_eq!(code(&["genus"]), 2);
    assert_eq!(code(&["genus", "--q", "8", "--n", "3"]), 2);
    assert_eq!(code(&["rotation", "--q", "8", "--cusp", "2/4"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    let out = run(&["genus", "--q", "8", "--n", "3"]);
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

fn no_bare_numbers(v: &Value, path: &str) {
    match v {
        Value::Number(_) => assert!(path.contains("iso_"), "number at {path}"),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| no_bare_numbers(x, &format!("{path}[{i}]"))),
        Value::Object(o) => o.iter().for_each(|(k, x)| no_bare_numbers(x, &format!("{path}.{k}"))),
        _ => {}
    }
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let grid: &[&[&str]] = &[
        &["genus", "--q", "12", "--n", "2"],
        &["cusps", "--q", "10", "--n", "1", "--distribution"],
        &["rotation", "--q", "9", "--cusp", "-1/3"],
        &["equation", "--q", "12", "--normalize", "--convention", "smallest-to-infinity"],
        &["group", "--q", "6", "--order", "--center", "--cusp-maps", "0", "inf"],
        &["verify", "--iso", "--samples", "20"],
        &["lift-solve"],
        &["canonical", "--eta", "3"],
    ];
    for args in grid {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let text = stdout(&full);
        assert_eq!(text, stdout(&full), "{args:?} not deterministic");
        let v: Value = serde_json::from_str(&text).unwrap();
        for key in ["command", "inputs", "result", "checks"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
        assert_eq!(v["command"], args[0]);
        no_bare_numbers(&v, "");
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v);
        for c in v["checks"].as_array().unwrap() {
            assert!(c["name"].is_string() && c["pass"].is_boolean() && c["expected"].is_string() && c["got"].is_string());
        }
    }
}

#[test]
fn text_output() {
    let t = stdout(&["equation", "--q", "8", "--normalize"]);
    assert!(t.lines().any(|l| l == "y^8 = x^2*(x-1)*(x-a)"));
    assert!(t.contains("undetermined: a"));
    let t = stdout(&["verify", "--tables", "1", "--q-max", "20"]);
    assert_eq!(t.trim(), "table 1: 40 checked, pass");
}
