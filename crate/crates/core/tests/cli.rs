use std::process::Command;

use toric_poisson::cli::{run, JsonReport};
use toric_poisson::{build_pi, full_table, preset, TableOptions};

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_toric-poisson")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn lib(args: &[&str]) -> toric_poisson::cli::Outcome {
    run(std::iter::once("toric-poisson").chain(args.iter().copied()))
}

fn ascii_grid(text: &str) -> Vec<Vec<usize>> {
    text.lines()
        .skip(2)
        .map(|l| l.split('|').nth(1).unwrap().split_whitespace().map(|v| v.parse().unwrap()).collect())
        .collect()
}

fn csv_grid(text: &str) -> Vec<Vec<usize>> {
    text.lines().skip(1).map(|l| l.split(',').skip(1).map(|v| v.parse().unwrap()).collect()).collect()
}

#[test]
fn nakanishi_table_ascii() {
    let (code, out, err) = bin(&["table", "--preset", "nakanishi", "--dmax", "6"]);
    assert_eq!(code, 0, "{err}");
    let expected = "\
dim H_[d]^p | 0 1 2
------------+------
          0 | 1 0 1
          1 | 0 2 0
          2 | 0 0 1
          3 | 0 0 0
          4 | 0 0 0
          5 | 0 0 0
          6 | 0 0 0
";
    assert_eq!(out, expected);
}

#[test]
fn csv_header_and_rows() {
    let (code, out, _) = bin(&["table", "--n", "2", "--b", "6,-2;-2,2", "--dmax", "8", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("d,h0,h1,h2,h3,h4"));
    assert_eq!(lines.next(), Some("0,1,0,0,2,1"));
    assert_eq!(out.lines().last(), Some("8,0,0,0,2,2"));
}

#[test]
fn emitters_agree() {
    for name in ["p1xp1", "hirzebruch2"] {
        let ascii = lib(&["table", "--preset", name, "--dmax", "5"]).stdout;
        let csv = lib(&["table", "--preset", name, "--dmax", "5", "--format", "csv"]).stdout;
        let json = lib(&["table", "--preset", name, "--dmax", "5", "--format", "json"]).stdout;
        let report: JsonReport = serde_json::from_str(&json).unwrap();
        let from_json: Vec<Vec<usize>> = report.table.iter().map(|r| r.dims.clone()).collect();
        assert_eq!(ascii_grid(&ascii), csv_grid(&csv));
        assert_eq!(csv_grid(&csv), from_json);
    }
}

#[test]
fn json_round_trips() {
    let out = lib(&["generators", "--preset", "p2", "--d", "4", "--p", "2", "--classify", "--format", "json"]);
    assert_eq!(out.code, 0);
    let report: JsonReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", out.stdout);
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 5);
    for k in ["n", "B", "dmax", "table", "generators"] {
        assert!(value.get(k).is_some(), "missing {k}");
    }
    let gens = report.generators.as_ref().unwrap();
    assert_eq!(gens.len(), 2);
    assert!(gens.iter().all(|g| value_type(g) == "II"));
    assert_eq!(gens[0].terms, vec!["z1^2*w2^2 dz2^dw1"]);
    assert_eq!(gens[1].terms, vec!["z2^2*w1^2 dz1^dw2"]);
    // the matrix survives the trip through canonical strings
    let b = preset("p2").unwrap();
    assert_eq!(&report.matrix().unwrap(), b.entries());
    let summary = full_table(&build_pi(&b), 4, &TableOptions::default()).unwrap();
    assert_eq!(report.table.iter().map(|r| r.dims.clone()).collect::<Vec<_>>(), summary.grid());
}

fn value_type(g: &toric_poisson::cli::JsonGenerator) -> String {
    serde_json::to_value(g.kind).unwrap().as_str().unwrap().to_string()
}

#[test]
fn generator_examples() {
    let (code, out, _) = bin(&["generators", "--preset", "nakanishi", "--d", "0", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "H^2_[0]  dim 1\n  dz^dw\n");
    let (_, out, _) = bin(&["generators", "--preset", "nakanishi", "--d", "0", "--p", "2", "--classify"]);
    assert!(out.contains("dz^dw  [Type II]"));
    let (code, out, _) = bin(&["generators", "--n", "1", "--b", "1", "--d", "5", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "H^2_[5]  dim 0\n");
    let out = lib(&["generators", "--n", "1", "--b", "1", "--d", "5", "--p", "2", "--format", "csv"]).stdout;
    assert_eq!(out, "d,p,type,representative\n");
}

#[test]
fn verify_reports() {
    let (code, out, _) = bin(&["verify", "--preset", "hirzebruch2", "--dmax", "6"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
    assert!(out.contains("PASS sigma_squared"));

    let (code, out, _) = bin(&["verify", "--n", "2", "--b", "1,i;-i,1", "--dmax", "4"]);
    assert_eq!(code, 1);
    let fails: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 2, "{out}");
    assert!(fails.iter().all(|l| l.contains("det B = 0")));
    assert!(fails[0].contains("h0_theorem") && fails[1].contains("h1_theorem"));

    let (code, out, _) = bin(&["verify", "--n", "1", "--b", "5", "--dmax", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS n1_table"));
    assert!(out.contains("PASS scalar_invariance"));
}

#[test]
fn verify_json() {
    let out = lib(&["verify", "--preset", "nakanishi", "--dmax", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    assert!(v["checks"].as_array().unwrap().len() >= 9);
}

#[test]
fn hermitian_non_symmetric_skips_h1() {
    let out = lib(&["verify", "--n", "2", "--b", "2,i;-i,2", "--dmax", "3"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("SKIP h1_theorem"));
}

#[test]
fn exit_code_contract() {
    assert_eq!(bin(&["table", "--b", "1,,2"]).0, 2);
    assert_eq!(bin(&["table", "--b", "1,2;2"]).0, 3);
    assert_eq!(bin(&["table", "--n", "3", "--preset", "p2"]).0, 3);
    assert_eq!(bin(&["generators", "--preset", "p2", "--d", "1", "--p", "5"]).0, 3);
    assert_eq!(bin(&["table", "--b", "0,1;2,0"]).0, 2);
    let (code, out, _) = bin(&["table", "--b", "0,1;2,0", "--raw", "--dmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(ascii_grid(&out).len(), 3);
    let (code, _, err) = bin(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn preset_list_and_jobs() {
    let (code, out, _) = bin(&["preset-list"]);
    assert_eq!(code, 0);
    for name in toric_poisson::PRESET_NAMES {
        assert!(out.contains(name));
    }
    let one = lib(&["table", "--preset", "p2", "--dmax", "5", "--jobs", "1"]).stdout;
    let four = lib(&["table", "--preset", "p2", "--dmax", "5", "--jobs", "4"]).stdout;
    assert_eq!(one, four);
}
