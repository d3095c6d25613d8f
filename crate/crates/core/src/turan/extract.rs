//! Turán-type block extraction: dyadic degree classes, packings, Mnets and
//! the k-partite reduction.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet, Simplex};
use crate::partition::build_partition;
use crate::rational::{self, format_rational, serde_str, Rational};

use super::relation::{eval_relation, SemiAlgRelation};

/// Tunable constants of the extraction, with the defaults used throughout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TuranConstants {
    /// Degree classes start at `eps |V2| / class_divisor`.
    pub class_divisor: u32,
    /// Packing radius is `eps_i / packing_divisor`.
    pub packing_divisor: u32,
    /// Mnet elements need at least `mnet_floor * eps_i * |V2|` members.
    #[serde(with = "serde_str")]
    pub mnet_floor: Rational,
    /// Below `eps_i * |V2| < singleton_threshold` the Mnet is all singletons.
    #[serde(with = "serde_str")]
    pub singleton_threshold: Rational,
    /// Part count of the partition behind each Mnet.
    pub mnet_r: usize,
}

impl Default for TuranConstants {
    fn default() -> Self {
        TuranConstants {
            class_divisor: 10,
            packing_divisor: 10,
            mnet_floor: rational::ratio(1, 100),
            singleton_threshold: rational::int(16),
            mnet_r: 16,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BipartiteInstance {
    pub v1: Vec<Vec<Rational>>,
    pub v2: Vec<Vec<Rational>>,
    pub relation: SemiAlgRelation,
}

#[derive(Clone, Debug, Serialize)]
pub struct MnetSet {
    pub members: Vec<usize>,
    pub region: Option<Simplex>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mnet {
    pub sets: Vec<MnetSet>,
    pub singletons: bool,
    pub r_used: Option<usize>,
    pub cover_verified: bool,
}

/// Bookkeeping of one bipartite extraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub left: usize,
    pub right: usize,
    pub edges: usize,
    pub class_index: u32,
    pub class_sizes: Vec<usize>,
    pub class_mass: usize,
    pub packing: usize,
    pub mnet_sets: usize,
    pub cover_verified: bool,
    pub omega: usize,
    pub w1: usize,
    pub w2: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TuranBlock {
    pub subsets: Vec<Vec<usize>>,
    pub complete: bool,
    pub size_product: u128,
    pub region_note: Option<String>,
    pub levels: Vec<LevelStats>,
}

fn bits(n: usize, members: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for &i in members {
        b.insert(i);
    }
    b
}

fn symdiff(a: &FixedBitSet, b: &FixedBitSet) -> usize {
    a.symmetric_difference(b).count()
}

/// Greedy packing in input order: a hyperedge is kept iff its symmetric
/// difference with every kept one exceeds `delta * ground_size`.
pub fn maximal_packing(ground_size: usize, hyperedges: &[Vec<usize>], delta: &Rational) -> Vec<usize> {
    let sets: Vec<FixedBitSet> = hyperedges.iter().map(|h| bits(ground_size, h)).collect();
    packing_bits(ground_size, &sets, delta)
}

fn packing_bits(ground_size: usize, sets: &[FixedBitSet], delta: &Rational) -> Vec<usize> {
    let radius = delta * rational::int(ground_size as i64);
    let mut kept: Vec<usize> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if kept.iter().all(|&k| rational::int(symdiff(s, &sets[k]) as i64) > radius) {
            kept.push(i);
        }
    }
    kept
}

/// Every hyperedge lies within `delta * ground_size` of a kept one.
pub fn packing_is_maximal(ground_size: usize, hyperedges: &[Vec<usize>], kept: &[usize], delta: &Rational) -> bool {
    let sets: Vec<FixedBitSet> = hyperedges.iter().map(|h| bits(ground_size, h)).collect();
    let radius = delta * rational::int(ground_size as i64);
    sets.iter().all(|s| kept.iter().any(|&k| rational::int(symdiff(s, &sets[k]) as i64) <= radius))
}

/// Mnet for the hyperedges supplied over `rho`: singletons when `rho` is
/// small relative to `eps_i |V2|`, otherwise the large parts of a simplicial
/// partition of `rho`. The cover is checked against `hyperedges`; one retry
/// at doubled `r` follows a failure.
#[allow(clippy::too_many_arguments)]
pub fn build_mnet(
    rho: &[usize],
    right_points: &[Vec<Rational>],
    eps_i: &Rational,
    v2_size: usize,
    r: usize,
    seed: u64,
    hyperedges: &[Vec<usize>],
    constants: &TuranConstants,
) -> Result<Mnet> {
    if rho.is_empty() {
        return Err(Error::InvalidArgument("Mnet ground set is empty".into()));
    }
    let scale = eps_i * rational::int(v2_size as i64);
    let n = right_points.len();
    let covers = |sets: &[MnetSet]| {
        let sb: Vec<FixedBitSet> = sets.iter().map(|s| bits(n, &s.members)).collect();
        hyperedges.iter().all(|h| {
            let hb = bits(n, h);
            sb.iter().any(|s| s.is_subset(&hb))
        })
    };
    if scale < constants.singleton_threshold {
        let sets: Vec<MnetSet> = rho.iter().map(|&v| MnetSet { members: vec![v], region: None }).collect();
        let cover_verified = covers(&sets);
        return Ok(Mnet { sets, singletons: true, r_used: None, cover_verified });
    }
    let floor = &constants.mnet_floor * &scale;
    let dim = right_points[rho[0]].len();
    let ps = PointSet::unscanned(dim, rho.iter().map(|&i| Point::new(right_points[i].clone())).collect(), false)?;
    let mut r_try = r.clamp(1, rho.len());
    let mut retried = false;
    loop {
        let pi = build_partition(&ps, r_try, seed)?;
        let sets: Vec<MnetSet> = pi
            .parts
            .iter()
            .filter(|p| !p.indices.is_empty() && rational::int(p.indices.len() as i64) >= floor)
            .map(|p| {
                let mut members: Vec<usize> = p.indices.iter().map(|&j| rho[j]).collect();
                members.sort_unstable();
                MnetSet { members, region: Some(p.cell.clone()) }
            })
            .collect();
        let ok = covers(&sets);
        if ok || retried || r_try == rho.len() {
            return Ok(Mnet { sets, singletons: false, r_used: Some(r_try), cover_verified: ok });
        }
        retried = true;
        r_try = (2 * r_try).min(rho.len());
    }
}

/// Left-by-right adjacency with the right side's coordinates.
struct Bipartite<'a> {
    rows: Vec<FixedBitSet>,
    right_points: &'a [Vec<Rational>],
}

impl Bipartite<'_> {
    fn edges(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }
}

struct Extraction {
    w1: Vec<usize>,
    w2: Vec<usize>,
    stats: LevelStats,
    note: String,
}

fn check_density(edges: usize, total: u128, eps: &Rational) -> Result<()> {
    let found = Rational::new((edges as u64).into(), (total.max(1) as u64).into());
    if found < *eps {
        return Err(Error::DensityTooLow { required: format_rational(eps), found: format_rational(&found) });
    }
    if edges == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    Ok(())
}

fn extract_pair(g: &Bipartite, eps: &Rational, constants: &TuranConstants, seed: u64) -> Result<Extraction> {
    let n1 = g.rows.len();
    let n2 = g.right_points.len();
    let edges = g.edges();
    check_density(edges, (n1 as u128) * (n2 as u128), eps)?;
    let divisor = rational::int(constants.class_divisor as i64);
    let mut top = 1u32;
    while rational::pow2(top) * eps < divisor {
        top += 1;
    }
    let base = eps * rational::int(n2 as i64) / &divisor;
    let degrees: Vec<usize> = g.rows.iter().map(|r| r.count_ones(..)).collect();
    let class_of = |deg: usize| -> Option<u32> {
        let deg = rational::int(deg as i64);
        (1..=top).rev().find(|&i| deg >= rational::pow2(i - 1) * &base)
    };
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); top as usize];
    let mut mass = 0usize;
    for (v, &deg) in degrees.iter().enumerate() {
        if let Some(i) = class_of(deg) {
            classes[i as usize - 1].push(v);
            mass += deg;
        }
    }
    assert!(2 * mass >= edges, "dyadic classes carry less than half the edges");
    let (ci, class) = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(i, c)| {
            let i = i as u32 + 1;
            let score = rational::int(c.len() as i64) * rational::pow2(i) / rational::int((i * i) as i64);
            (score, i, c)
        })
        .fold(None::<(Rational, u32, &Vec<usize>)>, |best, cand| match best {
            Some(b) if b.0 >= cand.0 => Some(b),
            _ => Some(cand),
        })
        .map(|(_, i, c)| (i, c.clone()))
        .expect("positive density leaves a nonempty class");
    let eps_i = rational::pow2(ci - 1) * eps / &divisor;
    let delta = &eps_i / rational::int(constants.packing_divisor as i64);
    let hyper: Vec<FixedBitSet> = class.iter().map(|&v| g.rows[v].clone()).collect();
    let kept = packing_bits(n2, &hyper, &delta);
    let radius = &delta * rational::int(n2 as i64);
    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); kept.len()];
    for (h, s) in hyper.iter().enumerate() {
        let slot = kept
            .iter()
            .position(|&k| rational::int(symdiff(s, &hyper[k]) as i64) <= radius)
            .expect("packing is maximal");
        assigned[slot].push(h);
    }
    let mut candidates: Vec<MnetSet> = Vec::new();
    let mut cover_verified = true;
    for (slot, &k) in kept.iter().enumerate() {
        let rho: Vec<usize> = hyper[k].ones().collect();
        let restricted: Vec<Vec<usize>> = assigned[slot]
            .iter()
            .map(|&h| hyper[h].ones().filter(|j| hyper[k].contains(*j)).collect())
            .collect();
        let mnet = build_mnet(
            &rho,
            g.right_points,
            &eps_i,
            n2,
            constants.mnet_r,
            seed.wrapping_add(slot as u64),
            &restricted,
            constants,
        )?;
        cover_verified &= mnet.cover_verified;
        candidates.extend(mnet.sets);
    }
    let mnet_sets = candidates.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for (idx, c) in candidates.iter().enumerate() {
        let cb = bits(n2, &c.members);
        let count = class.iter().filter(|&&v| cb.is_subset(&g.rows[v])).count();
        let key = (count, c.members.len());
        if count > 0 && best.map_or(true, |(bc, bs, _)| key > (bc, bs)) {
            best = Some((count, c.members.len(), idx));
        }
    }
    let (omega, note) = match best {
        Some((_, _, idx)) => {
            let c = &candidates[idx];
            let note = match &c.region {
                Some(cell) => format!("partition cell with vertices {:?}", cell.vertices()),
                None => "singleton".to_string(),
            };
            (c.members.clone(), note)
        }
        None => {
            let u = (0..n2)
                .max_by_key(|&u| (class.iter().filter(|&&v| g.rows[v].contains(u)).count(), std::cmp::Reverse(u)))
                .expect("right side is nonempty");
            (vec![u], "singleton fallback".to_string())
        }
    };
    let ob = bits(n2, &omega);
    let w1: Vec<usize> = (0..n1).filter(|&v| ob.is_subset(&g.rows[v])).collect();
    let mut common = FixedBitSet::with_capacity(n2);
    common.insert_range(..);
    for &v in &w1 {
        common.intersect_with(&g.rows[v]);
    }
    let w2: Vec<usize> = common.ones().collect();
    let stats = LevelStats {
        left: n1,
        right: n2,
        edges,
        class_index: ci,
        class_sizes: classes.iter().map(|c| c.len()).collect(),
        class_mass: mass,
        packing: kept.len(),
        mnet_sets,
        cover_verified,
        omega: omega.len(),
        w1: w1.len(),
        w2: w2.len(),
    };
    let note = format!("{note}; W2 is the common neighborhood of W1");
    Ok(Extraction { w1, w2, stats, note })
}

/// Mixed-radix enumeration of index tuples.
fn product(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if sizes.iter().any(|&s| s == 0) {
        return out;
    }
    let mut digits = vec![0usize; sizes.len()];
    loop {
        out.push(digits.clone());
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < sizes[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn validate_classes(classes: &[Vec<Vec<Rational>>], rel: &SemiAlgRelation, eps: &Rational) -> Result<()> {
    if classes.len() < 2 || classes.len() != rel.block_dims.len() {
        return Err(Error::WrongArity { expected: rel.block_dims.len().max(2), found: classes.len() });
    }
    for (c, &dim) in classes.iter().zip(&rel.block_dims) {
        for v in c {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
    }
    if *eps <= Rational::zero() || *eps > Rational::one() {
        return Err(Error::InvalidArgument(format!("eps must lie in (0, 1], got {}", format_rational(eps))));
    }
    Ok(())
}

/// Exhaustive check that every tuple of the product is an edge.
pub fn block_is_complete(
    classes: &[Vec<Vec<Rational>>],
    rel: &SemiAlgRelation,
    subsets: &[Vec<usize>],
) -> Result<bool> {
    let sizes: Vec<usize> = subsets.iter().map(|s| s.len()).collect();
    let results: Vec<Result<bool>> = product(&sizes)
        .into_par_iter()
        .map(|t| {
            let blocks: Vec<&[Rational]> =
                t.iter().enumerate().map(|(c, &j)| classes[c][subsets[c][j]].as_slice()).collect();
            eval_relation(rel, &blocks)
        })
        .collect();
    let mut all = true;
    for r in results {
        all &= r?;
    }
    Ok(all)
}

/// Subsets `W_1 .. W_k` whose product lies in the edge set, by flattening
/// classes `2..k` into one right side and recursing on the extracted
/// right-hand tuples.
pub fn kpartite_turan(
    classes: &[Vec<Vec<Rational>>],
    rel: &SemiAlgRelation,
    eps: &Rational,
    constants: &TuranConstants,
    seed: u64,
) -> Result<TuranBlock> {
    validate_classes(classes, rel, eps)?;
    let k = classes.len();
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let right: Vec<Vec<usize>> = product(&sizes[1..]);
    let flat = |c0: usize, t: &[usize]| -> Vec<Rational> {
        t.iter().enumerate().flat_map(|(i, &j)| classes[c0 + i][j].iter().cloned()).collect()
    };
    let right_points: Vec<Vec<Rational>> = right.iter().map(|t| flat(1, t)).collect();
    let rows: Vec<FixedBitSet> = (0..sizes[0])
        .into_par_iter()
        .map(|v| {
            let mut row = FixedBitSet::with_capacity(right.len());
            for (j, t) in right.iter().enumerate() {
                let mut blocks: Vec<&[Rational]> = vec![classes[0][v].as_slice()];
                blocks.extend(t.iter().enumerate().map(|(i, &x)| classes[i + 1][x].as_slice()));
                if eval_relation(rel, &blocks)? {
                    row.insert(j);
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut g = Bipartite { rows, right_points: &right_points };
    let mut level_eps = eps.clone();
    let mut subsets: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut levels = Vec::new();
    let mut notes = Vec::new();
    let mut c0 = 0;
    let mut right_tuples = right;
    let mut owned_points;
    loop {
        let ex = extract_pair(&g, &level_eps, constants, seed.wrapping_add(c0 as u64 * 1000))?;
        levels.push(ex.stats);
        notes.push(ex.note);
        subsets.push(ex.w1);
        let chosen: Vec<&Vec<usize>> = ex.w2.iter().map(|&j| &right_tuples[j]).collect();
        if c0 + 2 == k {
            subsets.push(chosen.iter().map(|t| t[0]).collect());
            break;
        }
        // Recurse on classes c0+1.. with the chosen tuples as edges.
        let total: u128 = sizes[c0 + 1..].iter().map(|&s| s as u128).product();
        level_eps = Rational::new((chosen.len() as u64).into(), (total as u64).into());
        let edge_set: HashMap<&[usize], ()> = chosen.iter().map(|t| (t.as_slice(), ())).collect();
        c0 += 1;
        let next_right = product(&sizes[c0 + 1..]);
        owned_points = next_right.iter().map(|t| flat(c0 + 1, t)).collect::<Vec<_>>();
        let rows: Vec<FixedBitSet> = (0..sizes[c0])
            .map(|v| {
                let mut row = FixedBitSet::with_capacity(next_right.len());
                for (j, t) in next_right.iter().enumerate() {
                    let mut key = vec![v];
                    key.extend_from_slice(t);
                    if edge_set.contains_key(key.as_slice()) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        right_tuples = next_right;
        g = Bipartite { rows, right_points: &owned_points };
    }
    let complete = block_is_complete(classes, rel, &subsets)?;
    let size_product = subsets.iter().map(|s| s.len() as u128).product();
    Ok(TuranBlock { subsets, complete, size_product, region_note: Some(notes.join(" | ")), levels })
}

/// `W_1 ⊆ V_1`, `W_2 ⊆ V_2` with `W_1 x W_2` inside the relation.
pub fn bipartite_turan(
    inst: &BipartiteInstance,
    eps: &Rational,
    constants: &TuranConstants,
    seed: u64,
) -> Result<TuranBlock> {
    if inst.relation.block_dims.len() != 2 {
        return Err(Error::WrongArity { expected: 2, found: inst.relation.block_dims.len() });
    }
    kpartite_turan(&[inst.v1.clone(), inst.v2.clone()], &inst.relation, eps, constants, seed)
}

/// `|W_1| ... |W_k| / (eps^(d1 + 1) |V_1| ... |V_k|)`.
pub fn scaling_ratio(block: &TuranBlock, eps: &Rational, d1: usize, class_sizes: &[usize]) -> f64 {
    let denom = rational::to_f64(eps).powi(d1 as i32 + 1) * class_sizes.iter().map(|&s| s as f64).product::<f64>();
    block.size_product as f64 / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_examples() {
        let same = vec![vec![0, 1, 2]; 4];
        assert_eq!(maximal_packing(10, &same, &rational::ratio(1, 10)), vec![0]);
        let disjoint = vec![vec![0, 1, 2, 3], vec![5, 6, 7, 8]];
        assert_eq!(maximal_packing(10, &disjoint, &rational::ratio(1, 2)), vec![0, 1]);
        let nested = vec![vec![0], vec![0, 1], vec![0, 1, 2, 3, 4]];
        assert_eq!(maximal_packing(5, &nested, &rational::int(1)), vec![0]);
        assert!(packing_is_maximal(5, &nested, &[0], &rational::int(1)));
    }

    #[test]
    fn product_order() {
        assert_eq!(product(&[2, 2]), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(product(&[2, 0]).is_empty());
    }
}
