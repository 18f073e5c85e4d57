use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octimage")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    (out.status.code().unwrap(), v)
}

#[test]
fn classify_commutator() {
    let out = run(&["classify", "--poly", "x1*x2 - x2*x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: Pure"));

    let (code, v) = json(&["classify", "--poly", "x1*x2 - x2*x1"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["verdict"], "Pure");
    assert_eq!(r["samples_checked"], 200);
    assert_eq!(r["span_dimension"], 7);
    assert!(r["warnings"].as_array().unwrap().is_empty());
    let ev = &r["evidence"][0];
    assert_eq!(ev["tuple"], serde_json::json!([1, 2]));
    assert_eq!(ev["coeff"], "2");
    assert_eq!(ev["basis"], 3);
    assert_eq!(v["config"]["seed"], 0);
    assert_eq!(v["config"]["params"], "-1,-1,-1");
    assert!(v["config"].get("threads").is_none());
}

#[test]
fn non_multilinear_input_suggests_semi() {
    let out = run(&["classify", "--poly", "x1*x1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("NotMultilinear") && err.contains("semi"), "{err}");
    let (code, v) = json(&["classify", "--poly", "x1*x1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "NotMultilinear");
}

#[test]
fn input_errors_exit_with_one() {
    let (code, v) = json(&["parse", "--poly", "x1 * * x2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "SyntaxError");
    assert_eq!(run(&["--tol", "0", "table"]).status.code(), Some(1));
    assert_eq!(run(&["--params", "0,-1,-1", "table"]).status.code(), Some(1));
    assert_eq!(run(&["orbit", "--from", "1", "--to", "e2"]).status.code(), Some(1));
    let (code, v) = json(&["--mode", "rational", "orbit", "--from", "e1", "--to", "e2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "ModeMismatch");
    assert_eq!(run(&["classify", "--poly", "x1*x2 - x2*x1", "--target", "1"]).status.code(), Some(1));
}

#[test]
fn table_matches_standard_products() {
    let (code, v) = json(&["table"]);
    assert_eq!(code, 0);
    let t = &v["result"]["table"];
    assert_eq!(t[0][0], "e0");
    assert_eq!(t[1][1], "-e0");
    assert_eq!(t[1][2], "e3");
    assert_eq!(t[2][1], "-e3");
    let (_, v) = json(&["--params", "1,-1,-1", "table"]);
    assert_eq!(v["result"]["table"][1][1], "e0");
}

#[test]
fn semi_and_malcev_reports() {
    let (code, v) = json(&["semi", "--poly", "x1*x1", "--excluded", "-2", "--samples", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "Dense");
    assert_eq!(v["result"]["excluded"]["hits"][0]["hits"], 0);
    let (code, v) = json(&["malcev", "--poly", "x1*x2 + x2*x1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "Zero");
    assert!(v["result"]["certificate"]["points"].as_u64().unwrap() > 0);
    let (code, v) = json(&["malcev", "--poly", "x1*x2", "--target", "e7"]);
    assert_eq!(code, 0);
    assert!(v["result"]["realization"]["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn orbit_report() {
    let (code, v) = json(&["orbit", "--from", "e1", "--to", "3*e1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["c"], 3.0);
    assert_eq!(v["config"]["mode"], "real");
}

#[test]
fn selfcheck_lists_named_properties() {
    let (code, v) = json(&["selfcheck", "--samples", "30"]);
    assert_eq!(code, 0);
    let props = v["result"]["properties"].as_array().unwrap();
    assert!(props.len() >= 8);
    assert!(props.iter().all(|p| p["passed"] == true));
}

#[test]
fn batch_file_reports_each_line() {
    let mut f = tempfile();
    writeln!(f.1, "# corpus\nx1*x2 - x2*x1\n\nx1*x1\nx1*x2 + x2*x1").unwrap();
    let (code, v) = json(&["classify", "--file", f.0.to_str().unwrap(), "--samples", "20"]);
    assert_eq!(code, 1);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert_eq!(results[0]["verdict"], "Pure");
    assert_eq!(results[1]["error"]["kind"], "NotMultilinear");
    assert_eq!(results[2]["verdict"], "Full");
    assert_eq!(results[2]["input"], "x1*x2 + x2*x1");
    std::fs::remove_file(&f.0).ok();
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    let path = std::env::temp_dir().join(format!("octimage-batch-{}.txt", std::process::id()));
    let file = std::fs::File::create(&path).unwrap();
    (path, file)
}

#[test]
fn property_p_flag_weakens_the_statement() {
    let (_, v) = json(&["classify", "--poly", "x1*x2 - x2*x1", "--assume-property-p", "false", "--samples", "5"]);
    let w = v["result"]["warnings"].as_array().unwrap();
    assert!(w.iter().any(|s| s.as_str().unwrap().contains("contains")));
}
