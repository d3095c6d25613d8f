#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pierce_core::geometry::{Point, Simplex};
use pierce_core::rational::format_rational;
use serde_json::{json, Value};

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn pointset_json(dim: usize, points: &[Point]) -> Value {
    let rows: Vec<Vec<String>> = points.iter().map(|p| p.coords().iter().map(format_rational).collect()).collect();
    json!({ "dimension": dim, "points": rows })
}

pub fn write_json(path: &Path, value: &Value) {
    fs::write(path, serde_json::to_string(value).unwrap()).unwrap();
}

pub fn write_points(path: &Path, dim: usize, points: &[Point]) {
    write_json(path, &pointset_json(dim, points));
}

pub fn write_classes(path: &Path, dim: usize, classes: &[Vec<Point>]) {
    write_json(path, &Value::Array(classes.iter().map(|c| pointset_json(dim, c)).collect()));
}

pub fn write_simplices(path: &Path, simplices: &[Simplex]) {
    let dim = simplices[0].ambient_dim();
    let all: Vec<Value> = simplices.iter().map(|s| pointset_json(dim, s.vertices())).collect();
    write_json(path, &Value::Array(all));
}

pub fn pierce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pierce")).args(args).output().unwrap()
}

/// Runs a command writing into `out` and returns the parsed report.
pub fn report(args: &[&str], out: &Path) -> Value {
    let mut full: Vec<&str> = args.to_vec();
    let out_str = out.to_str().unwrap();
    full.extend(["--out", out_str, "--emit-csv"]);
    let o = pierce(&full);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

pub fn without_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timestamp");
    v
}
