//! Partition-driven piercing-point selection.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{analyze_family, Family, FamilyClass};
use crate::geometry::{binomial, point_in_simplex, Closure, Point, PointSet, Simplex};
use crate::partition::{build_partition, tuple_census, validate_edges, ClassCounts, EdgeCounts, EdgeKind};

use super::oracle::{brute_force_deepest, pierced_open, DepthResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RChoice {
    Fixed(usize),
    /// `ceil(density^-(d^4 + d))`, capped at `n`.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectConfig {
    pub r: RChoice,
    /// Base threshold; defaults to 10 in the plane and 8 in space.
    pub n0: Option<usize>,
    pub seed: u64,
}

impl SelectConfig {
    pub fn new(r: RChoice, seed: u64) -> Self {
        SelectConfig { r, n0: None, seed }
    }

    pub fn base_threshold(&self, dim: usize) -> usize {
        self.n0.unwrap_or(if dim == 2 { 10 } else { 8 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SelectionCase {
    TightPigeonhole,
    RecurseAmbient,
    OracleBase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub r_nonempty: usize,
    pub tuples: ClassCounts,
    pub edges: EdgeCounts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceLevel {
    pub n: usize,
    pub edges: usize,
    pub r: Option<usize>,
    pub census: Option<CensusSummary>,
    pub case: SelectionCase,
    /// Part indices of the chosen family at this level.
    pub family: Option<Vec<usize>>,
    /// Edges assigned to a tight family, and how many of them contain the
    /// returned point (all of them, by construction).
    pub assigned: Option<usize>,
    pub assigned_pierced: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SelectionTrace {
    pub levels: Vec<TraceLevel>,
}

/// `ceil((C(n, d+1) / |E|)^(d^4 + d))` capped at `n`.
pub fn auto_r(n: usize, dim: usize, edges: usize) -> usize {
    let alpha = (dim.pow(4) + dim) as u32;
    let num = BigInt::from(binomial(n, dim + 1)).pow(alpha);
    let den = BigInt::from(edges).pow(alpha);
    let r = num.div_ceil(&den);
    if r >= BigInt::from(n) {
        n
    } else {
        r.try_into().unwrap_or(n).max(1)
    }
}

/// Selects a point pierced by many open simplices of `E`, recursing into the
/// most loaded ambient family until the tight families carry half the edges.
pub fn select_point(
    p: &PointSet,
    edges: &[Vec<usize>],
    config: &SelectConfig,
) -> Result<(DepthResult, SelectionTrace)> {
    if edges.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    validate_edges(p.len(), p.dim, edges)?;
    let d = p.dim;
    let n0 = config.base_threshold(d);
    let mut trace = SelectionTrace::default();
    let mut cur = p.clone();
    let mut cur_edges: Vec<Vec<usize>> = edges.to_vec();
    let mut level = 0u64;
    let point = loop {
        let n = cur.len();
        let m = cur_edges.len();
        let base = |trace: &mut SelectionTrace, r, census| -> Result<Point> {
            trace.levels.push(TraceLevel {
                n,
                edges: m,
                r,
                census,
                case: SelectionCase::OracleBase,
                family: None,
                assigned: None,
                assigned_pierced: None,
            });
            Ok(brute_force_deepest(&cur, &cur_edges)?.point)
        };
        if n <= n0 {
            break base(&mut trace, None, None)?;
        }
        let r = match config.r {
            RChoice::Fixed(r) => r,
            RChoice::Auto => auto_r(n, d, m),
        }
        .clamp(1, n);
        let pi = build_partition(&cur, r, config.seed.wrapping_add(level))?;
        let census = tuple_census(&cur, Some(&cur_edges), &pi)?;
        let counts = census.edges.clone().expect("edges were supplied");
        let summary =
            CensusSummary { r_nonempty: census.r_nonempty, tuples: census.tuples, edges: counts.clone() };
        if 2 * counts.tight_ambient >= m {
            let heavy = census.heaviest_tight.clone().expect("tight edges have a family");
            let cells: Vec<Simplex> = heavy.parts.iter().map(|&j| pi.parts[j].cell.clone()).collect();
            let (class, delta) = analyze_family(&Family::new(cells)?)?;
            debug_assert_eq!(class, FamilyClass::Tight);
            let x = delta.expect("tight families have a bounded cell").centroid();
            let mut assigned = 0;
            let mut pierced = 0;
            for (e, (ambient, _)) in cur_edges.iter().zip(&census.edge_kinds) {
                if *ambient == heavy.parts {
                    assigned += 1;
                    let s = Simplex::new(e.iter().map(|&i| cur.points[i].clone()).collect())?;
                    if point_in_simplex(&x, &s, Closure::Open)? {
                        pierced += 1;
                    }
                }
            }
            trace.levels.push(TraceLevel {
                n,
                edges: m,
                r: Some(r),
                census: Some(summary),
                case: SelectionCase::TightPigeonhole,
                family: Some(heavy.parts),
                assigned: Some(assigned),
                assigned_pierced: Some(pierced),
            });
            break x;
        }
        let mut groups: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, (ambient, kind)) in census.edge_kinds.iter().enumerate() {
            if *kind != EdgeKind::Split(FamilyClass::Tight) {
                groups.entry(ambient).or_default().push(i);
            }
        }
        let (family, assigned) = groups
            .into_iter()
            .fold(None::<(&Vec<usize>, Vec<usize>)>, |best, (k, v)| match best {
                Some(b) if b.1.len() >= v.len() => Some(b),
                _ => Some((k, v)),
            })
            .expect("non-tight edges exist in this case");
        let mut keep: Vec<usize> = family.iter().flat_map(|&j| pi.parts[j].indices.iter().copied()).collect();
        keep.sort_unstable();
        if keep.len() >= n {
            break base(&mut trace, Some(r), Some(summary))?;
        }
        let mut local = vec![usize::MAX; n];
        for (new, &old) in keep.iter().enumerate() {
            local[old] = new;
        }
        let next_edges: Vec<Vec<usize>> =
            assigned.iter().map(|&i| cur_edges[i].iter().map(|&v| local[v]).collect()).collect();
        trace.levels.push(TraceLevel {
            n,
            edges: m,
            r: Some(r),
            census: Some(summary),
            case: SelectionCase::RecurseAmbient,
            family: Some(family.clone()),
            assigned: None,
            assigned_pierced: None,
        });
        cur = cur.subset(&keep);
        cur_edges = next_edges;
        level += 1;
    };
    let pierced = pierced_open(p, edges, &point)?;
    Ok((DepthResult { point, pierced_count: pierced.len(), pierced_indices: Some(pierced) }, trace))
}
