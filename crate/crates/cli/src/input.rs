//! Readers for the JSON input formats. Coordinates are rational strings.

use std::fs;
use std::path::Path;

use pierce_core::geometry::{Point, PointSet, Simplex};
use pierce_core::rational::parse_rational;
use pierce_core::turan::{loose_relation, SemiAlgRelation, TuranConstants};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSetFile {
    dimension: usize,
    points: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    edges: Vec<Vec<usize>>,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn convert(file: PointSetFile) -> Result<PointSet, CliError> {
    let d = file.dimension;
    if d == 0 {
        return Err(CliError::Dimension("dimension must be positive".into()));
    }
    let mut points = Vec::with_capacity(file.points.len());
    for (i, row) in file.points.iter().enumerate() {
        if row.len() != d {
            return Err(CliError::Dimension(format!("point {i} has {} coordinates, expected {d}", row.len())));
        }
        let coords = row
            .iter()
            .map(|c| parse_rational(c).map_err(|e| CliError::Parse(format!("point {i}: {e}"))))
            .collect::<Result<_, _>>()?;
        points.push(Point::new(coords));
    }
    Ok(PointSet::new(d, points)?)
}

fn check_dimension(p: &PointSet, expected: Option<usize>) -> Result<(), CliError> {
    match expected {
        Some(d) if d != p.dim => Err(CliError::Dimension(format!("input has dimension {}, expected {d}", p.dim))),
        _ => Ok(()),
    }
}

/// Reads `{"dimension": d, "points": [["p/q", ...], ...]}`.
pub fn parse_pointset(path: &Path) -> Result<PointSet, CliError> {
    convert(read_json(path)?)
}

pub fn read_pointset(path: &Path, dimension: Option<usize>) -> Result<PointSet, CliError> {
    let p = parse_pointset(path)?;
    check_dimension(&p, dimension)?;
    Ok(p)
}

/// Reads a JSON list of point-set objects.
pub fn read_pointsets(path: &Path, dimension: Option<usize>) -> Result<Vec<PointSet>, CliError> {
    let files: Vec<PointSetFile> = read_json(path)?;
    let sets = files.into_iter().map(convert).collect::<Result<Vec<_>, _>>()?;
    for s in &sets {
        check_dimension(s, dimension)?;
    }
    Ok(sets)
}

/// A list of point-set objects, each the vertex list of one simplex.
pub fn read_simplices(path: &Path, dimension: Option<usize>) -> Result<Vec<Simplex>, CliError> {
    read_pointsets(path, dimension)?
        .into_iter()
        .map(|s| Simplex::new(s.points).map_err(CliError::from))
        .collect()
}

/// Reads `{"edges": [[i, j, k], ...]}` with strictly increasing indices.
pub fn read_edges(path: &Path) -> Result<Vec<Vec<usize>>, CliError> {
    let file: EdgeFile = read_json(path)?;
    for e in &file.edges {
        if e.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Parse(format!("edge {e:?} is not strictly increasing")));
        }
    }
    Ok(file.edges)
}

pub fn read_constants(path: Option<&Path>) -> Result<TuranConstants, CliError> {
    match path {
        Some(p) => read_json(p),
        None => Ok(TuranConstants::default()),
    }
}

/// A relation file, or `loose` for the loose-boundary relation in the
/// given dimension.
pub fn read_relation(arg: &str, dimension: Option<usize>) -> Result<SemiAlgRelation, CliError> {
    if arg == "loose" {
        let d = dimension.ok_or_else(|| CliError::Usage("--relation loose needs --dimension".into()))?;
        return Ok(loose_relation(d)?);
    }
    let rel: SemiAlgRelation = read_json(Path::new(arg))?;
    rel.validate()?;
    Ok(rel)
}
