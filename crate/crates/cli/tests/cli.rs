use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn gent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gent"))
        .args(args)
        .env_remove("GENT_CAP_OVERRIDE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn entropy_both_methods_agree_on_c5() {
    let out = gent(&["entropy", "--gen", "cycle", "5", "--dist", "uniform", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let tol = 1e-7;
    for m in ["fw", "am"] {
        let x = v["result"][m]["value_bits"].as_f64().unwrap();
        assert!((x - 2.5f64.log2()).abs() <= 2.0 * tol, "{m}: {x}");
    }
    assert!(v["result"]["difference_bits"].as_f64().unwrap() <= 2.0 * tol);
}

#[test]
fn line_graph_of_fig52() {
    let v = json(&gent(&["entropy", "--gen", "fig52", "--line-graph", "--dist", "uniform"]));
    let x = v["result"]["value_bits"].as_f64().unwrap();
    assert!((x - 1.75712).abs() < 1e-3, "{x}");
    assert_eq!(v["graph"]["n"], 15);
}

#[test]
fn missing_file_is_input_error() {
    let out = gent(&["entropy", "missing.col"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.col"));
    assert_eq!(gent(&["entropy", "--gen", "nosuch", "3"]).status.code(), Some(1));
    assert_eq!(gent(&["entropy", "--gen", "cycle", "5", "--tol", "-1"]).status.code(), Some(1));
    assert_eq!(gent(&["entropy"]).status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_2() {
    let out = gent(&["entropy", "--gen", "fig52", "--line-graph", "--method", "am", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["converged"], false);
}

#[test]
fn symmetry_of_petersen_line_graph() {
    let v = json(&gent(&["symmetry", "--gen", "petersen", "--line-of"]));
    assert_eq!(v["result"]["symmetric"], true);
    assert_eq!(v["result"]["criterion"], "k-graph-line");
    let v = json(&gent(&["symmetry", "--gen", "fig52", "--line-of"]));
    assert_eq!(v["result"]["symmetric"], false);
    let v = json(&gent(&["symmetry", "--gen", "star", "3"]));
    assert_eq!(v["result"]["criterion"], "bipartite-matching");
    assert_eq!(v["result"]["symmetric"], false);
    let v = json(&gent(&["symmetry", "--gen", "cycle", "5"]));
    assert_eq!(v["result"]["criterion"], "numeric-only");
    assert_eq!(v["result"]["symmetric"], true);
}

#[test]
fn fractional_values() {
    let v = json(&gent(&["fractional-edge", "--gen", "petersen"]));
    assert_eq!(v["result"]["value"], "3/1");
    let v = json(&gent(&["fractional-edge", "--gen", "fig52"]));
    assert_eq!(v["result"]["value"], "7/2");
    let v = json(&gent(&["fractional", "--gen", "cycle", "5"]));
    assert_eq!(v["result"]["value"], "5/2");
}

#[test]
fn chromatic_entropy_of_c5() {
    let v = json(&gent(&["chromatic-entropy", "--gen", "cycle", "5", "--dist", "uniform"]));
    let x = v["result"]["coloring"]["value_bits"].as_f64().unwrap();
    assert!((x - 1.5219280948873621).abs() <= 1e-9);
    assert_eq!(v["result"]["coloring"]["chi_h"], 3);
}

#[test]
fn distribution_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "[0.3, 0.2, 0.2, 0.1, 0.2]").unwrap();
    let path = f.path().to_str().unwrap();
    let v = json(&gent(&["chromatic-entropy", "--gen", "cycle", "5", "--dist", path]));
    let x = v["result"]["coloring"]["value_bits"].as_f64().unwrap();
    assert!((x - 1.36096).abs() < 1e-5);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "[0.5, 0.2]").unwrap();
    let out = gent(&["entropy", "--gen", "cycle", "5", "--dist", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dimacs_round_trip() {
    let out = gent(&["generate", "--gen", "kneser", "5", "2", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(&out.stdout).unwrap();
    let v = json(&gent(&["fractional", f.path().to_str().unwrap()]));
    assert_eq!(v["result"]["value"], "5/2");
    assert_eq!(v["graph"]["m"], 15);
}

#[test]
fn counting_commands() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    for i in 0..8 {
        writeln!(f, "{} {} {}", i & 1, i >> 1 & 1, i >> 2 & 1).unwrap();
    }
    let v = json(&gent(&["counting", "shearer", f.path().to_str().unwrap()]));
    assert_eq!(v["result"]["n1"], 4);
    assert_eq!(v["result"]["holds"], true);
    let v = json(&gent(&["counting", "bregman", "--gen", "complete_multipartite", "3", "3"]));
    assert_eq!(v["result"]["count"], 6);
    let v = json(&gent(&["counting", "matchings", "--gen", "cycle", "6"]));
    assert_eq!(v["result"]["count"], 2);
}

#[test]
fn cap_override_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_gent"))
        .args(["coloring", "--gen", "cycle", "9"])
        .env("GENT_CAP_OVERRIDE", "grundy=8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn verify_suites() {
    let out = gent(&["verify", "--suite", "paper"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines[..lines.len() - 1].iter().all(|c| c["passed"] == true));
    assert_eq!(lines.last().unwrap()["failed"], 0);
    assert_eq!(gent(&["verify", "--suite", "bogus"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "properties", "--seed", "7", "--sample", "20"];
    let a = gent(&args);
    let b = gent(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let args = ["entropy", "--gen", "petersen", "--method", "both"];
    assert_eq!(gent(&args).stdout, gent(&args).stdout);
}
