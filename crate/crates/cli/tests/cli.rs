mod common;

use std::fs;

use common::*;
use pierce_cli::{parse_pointset, CliError};
use pierce_core::sample::{convex_position, sliver_triple};

#[test]
fn parse_examples() {
    let p = parse_pointset(&data("triangle.json")).unwrap();
    assert_eq!((p.len(), p.dim), (3, 2));
    assert!(p.generic);
    assert!(matches!(parse_pointset(&data("bad_rational.json")), Err(CliError::Parse(_))));
    assert!(matches!(parse_pointset(&data("ragged.json")), Err(CliError::Dimension(_))));
}

#[test]
fn exit_codes() {
    assert_eq!(pierce(&["frobnicate"]).status.code(), Some(2));
    let sample = data("sample12.json");
    let s = sample.to_str().unwrap();
    assert_eq!(pierce(&["select", "--input", s]).status.code(), Some(2));
    assert_eq!(pierce(&["ksets", "--input", s, "--k", "0"]).status.code(), Some(1));
    assert_eq!(pierce(&["halving", "--input", data("bad_rational.json").to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(pierce(&["halving", "--input", s, "--dimension", "3"]).status.code(), Some(1));
    assert_eq!(pierce(&["halving", "--input", s, "--emit-csv"]).status.code(), Some(2));
    assert_eq!(pierce(&["halving", "--input", s]).status.code(), Some(0));
}

#[test]
fn select_matches_golden_report() {
    let dir = tempfile::tempdir().unwrap();
    let sample = data("sample12.json");
    for (args, golden) in [
        (vec!["select", "--input", sample.to_str().unwrap(), "--seed", "7"], "select_seed7.json"),
        (
            vec!["select", "--input", sample.to_str().unwrap(), "--seed", "7", "--r", "4", "--n0", "8"],
            "select_seed7_r4.json",
        ),
    ] {
        let got = without_timestamp(report(&args, dir.path()));
        let want: serde_json::Value = serde_json::from_str(&fs::read_to_string(data(golden)).unwrap()).unwrap();
        assert_eq!(got, without_timestamp(want), "{golden}");
    }
}

#[test]
fn select_report_is_consistent_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let sample = data("sample12.json");
    let s = sample.to_str().unwrap();
    let sel = report(&["select", "--input", s, "--seed", "7", "--r", "4", "--n0", "8"], dir.path());
    let best = report(&["oracle-depth", "--input", s], dir.path());
    let got = sel["result"]["depth"]["pierced_count"].as_u64().unwrap();
    let opt = best["result"]["pierced_count"].as_u64().unwrap();
    assert!(got <= opt && got > 0);
    assert_eq!(best["inputs"]["points"]["points"], sel["inputs"]["points"]["points"]);
}

#[test]
fn csv_tables_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("convex.json");
    write_points(&input, 2, &convex_position(8));
    let out = dir.path().join("out");
    let r = report(&["halving", "--input", input.to_str().unwrap(), "--table"], &out);
    assert_eq!(r["result"]["report"]["count"], 4);
    let subsets = fs::read_to_string(out.join("subsets.csv")).unwrap();
    assert_eq!(subsets.lines().next(), Some("subset,positive,negative"));
    assert_eq!(subsets.lines().count(), 5);
    let table = fs::read_to_string(out.join("table.csv")).unwrap();
    assert!(table.lines().any(|l| l == "8,4"));
    assert!(table.lines().any(|l| l == "4,2"));
}

#[test]
fn classify_reports_class() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("family.json");
    write_simplices(&input, &sliver_triple());
    let r = report(&["classify", "--input", input.to_str().unwrap()], dir.path());
    assert_eq!(r["result"]["class"], "Loose");
    assert_eq!(r["result"]["separated"], true);
    let csv = fs::read_to_string(dir.path().join("class.csv")).unwrap();
    assert_eq!(csv, "class,separated\nLoose,true\n");
}

#[test]
fn reports_echo_exact_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("pts.json");
    fs::write(&input, r#"{"dimension": 2, "points": [["1/3", "0"], ["4", "2/6"], ["0", "5"], ["7/2", "9/2"]]}"#).unwrap();
    let r = report(&["ksets", "--input", input.to_str().unwrap(), "--k", "2"], dir.path());
    assert_eq!(r["inputs"]["points"]["points"][1], serde_json::json!(["4", "1/3"]));
    assert_eq!(r["inputs"]["k"], 2);
    assert_eq!(r["command"], "ksets");
}
