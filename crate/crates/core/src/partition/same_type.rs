use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::build_partition;
use crate::error::{Error, Result};
use crate::family::{is_separated, Family};
use crate::geometry::{combinations, orientation_unchecked, Point, PointSet, Sign};
use crate::rational::{self, Rational};

/// `k` parts on which every transversal sequence has the same order type.
#[derive(Clone, Debug, Serialize)]
pub struct SameType {
    pub r: usize,
    pub part_ids: Vec<usize>,
    pub subsets: Vec<Vec<usize>>,
    /// Orientations of all `(d+1)`-subsequences, lexicographic order.
    pub order_type: Vec<Sign>,
}

/// Orientation vector of a point sequence over its `(d+1)`-subsequences.
pub fn order_type(points: &[&Point]) -> Vec<Sign> {
    let d = points[0].dim();
    combinations(points.len(), d + 1)
        .iter()
        .map(|c| orientation_unchecked(&c.iter().map(|&i| points[i]).collect::<Vec<_>>()))
        .collect()
}

const CLIQUE_NODE_BUDGET: usize = 50_000_000;

struct CliqueSearch<'a> {
    edges: &'a HashSet<Vec<usize>>,
    dim: usize,
    k: usize,
    nodes: usize,
}

impl CliqueSearch<'_> {
    fn compatible(&self, chosen: &[usize], added: usize, x: usize) -> bool {
        if chosen.len() < self.dim - 1 {
            return true;
        }
        combinations(chosen.len(), self.dim - 1).iter().all(|sub| {
            let mut t: Vec<usize> = sub.iter().map(|&i| chosen[i]).collect();
            t.push(added);
            t.push(x);
            t.sort_unstable();
            self.edges.contains(&t)
        })
    }

    fn extend(&mut self, chosen: &mut Vec<usize>, candidates: &[usize]) -> Option<Vec<usize>> {
        if chosen.len() == self.k {
            return Some(chosen.clone());
        }
        for (idx, &c) in candidates.iter().enumerate() {
            if chosen.len() + candidates.len() - idx < self.k {
                return None;
            }
            self.nodes += 1;
            if self.nodes > CLIQUE_NODE_BUDGET {
                return None;
            }
            let rest: Vec<usize> = candidates[idx + 1..]
                .iter()
                .copied()
                .filter(|&x| self.compatible(chosen, c, x))
                .collect();
            chosen.push(c);
            if let Some(found) = self.extend(chosen, &rest) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }
}

/// Partitions `P`, builds the hypergraph of separated cell tuples and
/// returns `k` parts spanning a complete sub-hypergraph. `r` defaults to
/// `⌈c k^{d²}⌉` capped at `n`.
pub fn same_type_extract(
    p: &PointSet,
    k: usize,
    r_override: Option<usize>,
    c: &Rational,
    seed: u64,
) -> Result<SameType> {
    let d = p.dim;
    if k < d + 1 {
        return Err(Error::InvalidK { k, n: p.len() });
    }
    if p.len() < k {
        return Err(Error::InsufficientPoints { needed: k, have: p.len() });
    }
    let r = match r_override {
        Some(r) => r,
        None => {
            let target = c * Rational::from_integer((k as u64).pow((d * d) as u32).into());
            rational::ceil_to_usize(&target).clamp(1, p.len())
        }
    };
    let pi = build_partition(p, r, seed)?;
    let nonempty = pi.nonempty();
    let tuples = combinations(nonempty.len(), d + 1);
    let edges: HashSet<Vec<usize>> = tuples
        .into_par_iter()
        .map(|t| {
            let ids: Vec<usize> = t.iter().map(|&i| nonempty[i]).collect();
            let f = Family::new(ids.iter().map(|&j| pi.parts[j].cell.clone()).collect())?;
            Ok(if is_separated(&f)? { Some(ids) } else { None })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut degree = vec![0usize; pi.parts.len()];
    for e in &edges {
        for &j in e {
            degree[j] += 1;
        }
    }
    // A member of a k-clique lies in C(k-1, d) of its hyperedges.
    let need = crate::geometry::binomial(k - 1, d) as usize;
    let mut candidates: Vec<usize> = nonempty.iter().copied().filter(|&j| degree[j] >= need).collect();
    candidates.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
    let mut search = CliqueSearch { edges: &edges, dim: d, k, nodes: 0 };
    let mut clique = search
        .extend(&mut Vec::new(), &candidates)
        .ok_or(Error::CliqueNotFound { k, parts: nonempty.len() })?;
    clique.sort_unstable();
    let subsets: Vec<Vec<usize>> = clique.iter().map(|&j| pi.parts[j].indices.clone()).collect();
    let reps: Vec<&Point> = subsets.iter().map(|s| &p.points[s[0]]).collect();
    Ok(SameType { r, part_ids: clique, subsets, order_type: order_type(&reps) })
}
