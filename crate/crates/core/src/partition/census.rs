use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{build_partition, SimplicialPartition};
use crate::error::{Error, Result};
use crate::family::{analyze_family, Family, FamilyClass};
use crate::geometry::{combinations, Point, PointSet, Simplex};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub crossed: usize,
    pub loose: usize,
    pub tight: usize,
}

impl ClassCounts {
    pub fn add(&mut self, class: FamilyClass) {
        match class {
            FamilyClass::Crossed => self.crossed += 1,
            FamilyClass::Loose => self.loose += 1,
            FamilyClass::Tight => self.tight += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.crossed + self.loose + self.tight
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeCounts {
    pub crowded: usize,
    pub crossed_ambient: usize,
    pub loose_ambient: usize,
    pub tight_ambient: usize,
}

impl EdgeCounts {
    pub fn total(&self) -> usize {
        self.crowded + self.crossed_ambient + self.loose_ambient + self.tight_ambient
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    Crowded,
    Split(FamilyClass),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoadedFamily {
    pub parts: Vec<usize>,
    pub load: usize,
}

/// Class counts over all `(d+1)`-tuples of nonempty cells, and optionally
/// over the ambient families of an edge set.
#[derive(Clone, Debug, Serialize)]
pub struct TupleCensus {
    pub r_nonempty: usize,
    pub tuples: ClassCounts,
    pub edges: Option<EdgeCounts>,
    pub heaviest_tight: Option<LoadedFamily>,
    /// Class of every tuple of nonempty part indices (sorted).
    #[serde(skip)]
    pub classes: HashMap<Vec<usize>, FamilyClass>,
    /// Ambient part indices (sorted, deduplicated) and kind of every edge.
    #[serde(skip)]
    pub edge_kinds: Vec<(Vec<usize>, EdgeKind)>,
}

fn cell_family(cells: &[&Simplex]) -> Result<Family> {
    Family::new(cells.iter().map(|&c| c.clone()).collect())
}

/// Classifies every family of `d + 1` distinct nonempty cells in parallel.
pub(crate) fn classify_cell_tuples(
    pi: &SimplicialPartition,
) -> Result<HashMap<Vec<usize>, FamilyClass>> {
    let nonempty = pi.nonempty();
    let tuples: Vec<Vec<usize>> = combinations(nonempty.len(), pi.dim + 1)
        .into_iter()
        .map(|t| t.into_iter().map(|i| nonempty[i]).collect())
        .collect();
    tuples
        .into_par_iter()
        .map(|t| {
            let cells: Vec<&Simplex> = t.iter().map(|&j| &pi.parts[j].cell).collect();
            let class = analyze_family(&cell_family(&cells)?)?.0;
            Ok((t, class))
        })
        .collect()
}

pub(crate) fn validate_edges(n: usize, d: usize, edges: &[Vec<usize>]) -> Result<()> {
    for e in edges {
        if e.len() != d + 1 {
            return Err(Error::MalformedEdge(e.clone()));
        }
        for &i in e {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
        }
        let mut s = e.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != e.len() {
            return Err(Error::MalformedEdge(e.clone()));
        }
    }
    Ok(())
}

/// Census of cell tuples of `Π`, with edge ambient classes when `E` is given.
pub fn tuple_census(
    p: &PointSet,
    edges: Option<&[Vec<usize>]>,
    pi: &SimplicialPartition,
) -> Result<TupleCensus> {
    if pi.n != p.len() || pi.dim != p.dim {
        return Err(Error::InvalidArgument("partition was built over a different point set".into()));
    }
    let classes = classify_cell_tuples(pi)?;
    let mut tuples = ClassCounts::default();
    for &c in classes.values() {
        tuples.add(c);
    }
    let mut edge_counts = None;
    let mut edge_kinds = Vec::new();
    let mut heaviest_tight = None;
    if let Some(edges) = edges {
        validate_edges(p.len(), p.dim, edges)?;
        let owner = pi.part_of();
        let mut counts = EdgeCounts::default();
        let mut loads: HashMap<Vec<usize>, usize> = HashMap::new();
        for e in edges {
            let mut ambient: Vec<usize> = e.iter().map(|&i| owner[i]).collect();
            ambient.sort_unstable();
            ambient.dedup();
            let kind = if ambient.len() < p.dim + 1 {
                counts.crowded += 1;
                EdgeKind::Crowded
            } else {
                let class = classes[&ambient];
                match class {
                    FamilyClass::Crossed => counts.crossed_ambient += 1,
                    FamilyClass::Loose => counts.loose_ambient += 1,
                    FamilyClass::Tight => {
                        counts.tight_ambient += 1;
                        *loads.entry(ambient.clone()).or_insert(0) += 1;
                    }
                }
                EdgeKind::Split(class)
            };
            edge_kinds.push((ambient, kind));
        }
        heaviest_tight = loads
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
            .map(|(parts, load)| LoadedFamily { parts, load });
        edge_counts = Some(counts);
    }
    Ok(TupleCensus {
        r_nonempty: pi.nonempty().len(),
        tuples,
        edges: edge_counts,
        heaviest_tight,
        classes,
        edge_kinds,
    })
}

/// Cells of one color class: a partition's nonempty parts, or one point cell
/// per point when the class has fewer than `r` points.
#[derive(Clone, Debug, Serialize)]
pub struct ColorCells {
    pub parts: Vec<Vec<usize>>,
    pub cells: Vec<Simplex>,
    pub singleton_fallback: bool,
}

/// A tight colorful tuple of cells; every colorful point tuple drawn from
/// these parts spans a simplex containing `delta`.
#[derive(Clone, Debug, Serialize)]
pub struct TightBlock {
    pub parts: Vec<usize>,
    pub delta: Simplex,
    pub centroid: Point,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColoredCensus {
    pub colors: Vec<ColorCells>,
    pub counts: ClassCounts,
    pub tight_blocks: Vec<TightBlock>,
}

fn color_cells(p: &PointSet, r: usize, seed: u64) -> Result<ColorCells> {
    if p.len() < r {
        let cells = p
            .points
            .iter()
            .map(|x| Simplex::new(vec![x.clone()]))
            .collect::<Result<_>>()?;
        return Ok(ColorCells {
            parts: (0..p.len()).map(|i| vec![i]).collect(),
            cells,
            singleton_fallback: true,
        });
    }
    let pi = build_partition(p, r, seed)?;
    let (parts, cells) = pi
        .parts
        .into_iter()
        .filter(|q| !q.indices.is_empty())
        .map(|q| (q.indices, q.cell))
        .unzip();
    Ok(ColorCells { parts, cells, singleton_fallback: false })
}

/// Partitions each color class and classifies every colorful tuple of cells.
pub fn colored_tuple_census(colors: &[PointSet], r: usize, seed: u64) -> Result<ColoredCensus> {
    for (i, c) in colors.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::EmptyColorClass(i));
        }
    }
    let dim = colors.first().map_or(0, |c| c.dim);
    if colors.len() != dim + 1 {
        return Err(Error::WrongArity { expected: dim + 1, found: colors.len() });
    }
    if r == 0 {
        return Err(Error::InvalidR { r, n: 0 });
    }
    let cells: Vec<ColorCells> = colors
        .iter()
        .enumerate()
        .map(|(i, c)| color_cells(c, r, seed.wrapping_add(i as u64)))
        .collect::<Result<_>>()?;
    let radix: Vec<usize> = cells.iter().map(|c| c.cells.len()).collect();
    let total: usize = radix.iter().product();
    let results: Vec<(Vec<usize>, FamilyClass, Option<Simplex>)> = (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut tuple = Vec::with_capacity(radix.len());
            for &b in &radix {
                tuple.push(code % b);
                code /= b;
            }
            let members: Vec<&Simplex> =
                tuple.iter().enumerate().map(|(c, &j)| &cells[c].cells[j]).collect();
            let (class, delta) = analyze_family(&cell_family(&members)?)?;
            Ok((tuple, class, delta))
        })
        .collect::<Result<_>>()?;
    let mut counts = ClassCounts::default();
    let mut tight_blocks = Vec::new();
    for (tuple, class, delta) in results {
        counts.add(class);
        if let Some(delta) = delta {
            let centroid = delta.centroid();
            tight_blocks.push(TightBlock { parts: tuple, delta, centroid });
        }
    }
    Ok(ColoredCensus { colors: cells, counts, tight_blocks })
}
