//! Simplicial partitions, crossing profiles and the tuple censuses built on
//! them.

mod census;
mod same_type;

pub use census::{
    colored_tuple_census, tuple_census, ClassCounts, ColorCells, ColoredCensus, EdgeCounts,
    EdgeKind, LoadedFamily, TightBlock, TupleCensus,
};
pub(crate) use census::validate_edges;
pub use same_type::{order_type, same_type_extract, SameType};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{point_in_simplex, Closure, OrientedHyperplane, Point, PointSet, Simplex};
use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    pub indices: Vec<usize>,
    pub cell: Simplex,
    pub dummy: bool,
}

/// Parts of a point set, each enclosed in the open interior of its own
/// simplex cell. Empty parts carry tiny dummy cells far from the data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialPartition {
    pub dim: usize,
    pub n: usize,
    pub r: usize,
    pub parts: Vec<Part>,
}

/// Outcome of checking the partition invariants against a point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    pub disjoint_cover: bool,
    pub size_window: bool,
    pub interior_containment: bool,
}

impl PartitionCheck {
    pub fn all(&self) -> bool {
        self.disjoint_cover && self.size_window && self.interior_containment
    }
}

impl SimplicialPartition {
    pub fn nonempty(&self) -> Vec<usize> {
        (0..self.parts.len()).filter(|&i| !self.parts[i].indices.is_empty()).collect()
    }

    /// Part index of every point.
    pub fn part_of(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.n];
        for (j, part) in self.parts.iter().enumerate() {
            for &i in &part.indices {
                owner[i] = j;
            }
        }
        owner
    }

    pub fn check(&self, p: &PointSet) -> PartitionCheck {
        let mut seen = vec![0usize; p.len()];
        for part in &self.parts {
            for &i in &part.indices {
                if i < seen.len() {
                    seen[i] += 1;
                }
            }
        }
        let disjoint_cover = self.n == p.len()
            && self.parts.len() == self.r
            && seen.iter().all(|&c| c == 1)
            && self.parts.iter().flat_map(|q| &q.indices).all(|&i| i < p.len());
        let m = self.n.div_ceil(self.r);
        let size_window = self
            .parts
            .iter()
            .filter(|q| !q.indices.is_empty())
            .all(|q| q.indices.len() >= m && q.indices.len() < 2 * m);
        let interior_containment = self.parts.par_iter().all(|q| {
            q.indices.iter().all(|&i| {
                i < p.len() && point_in_simplex(&p.points[i], &q.cell, Closure::Open).unwrap_or(false)
            })
        });
        PartitionCheck { disjoint_cover, size_window, interior_containment }
    }
}

/// Largest power of two not exceeding a positive rational.
fn dyadic_floor(q: &Rational) -> Rational {
    let mut p = Rational::one();
    let two = rational::int(2);
    while &p > q {
        p /= &two;
    }
    while &(&p * &two) <= q {
        p *= &two;
    }
    p
}

fn bounding_box(points: &[&Point], dim: usize) -> (Vec<Rational>, Vec<Rational>) {
    let mut lo = points[0].coords().to_vec();
    let mut hi = lo.clone();
    for p in points {
        for a in 0..dim {
            if p.coords()[a] < lo[a] {
                lo[a] = p.coords()[a].clone();
            }
            if p.coords()[a] > hi[a] {
                hi[a] = p.coords()[a].clone();
            }
        }
    }
    (lo, hi)
}

/// Median splits along rotating axes into consecutive groups of the given
/// sizes.
fn kd_split(points: &[Point], order: &mut [usize], sizes: &[usize], depth: usize, out: &mut Vec<Vec<usize>>) {
    if sizes.len() == 1 {
        let mut part = order.to_vec();
        part.sort_unstable();
        out.push(part);
        return;
    }
    let dim = points[0].dim();
    let axis = depth % dim;
    order.sort_by(|&a, &b| {
        points[a].coords()[axis]
            .cmp(&points[b].coords()[axis])
            .then_with(|| points[a].cmp(&points[b]))
            .then(a.cmp(&b))
    });
    let half = sizes.len() / 2;
    let split: usize = sizes[..half].iter().sum();
    let (left, right) = order.split_at_mut(split);
    kd_split(points, left, &sizes[..half], depth + 1, out);
    kd_split(points, right, &sizes[half..], depth + 1, out);
}

/// Corner simplex `{x >= lo - mu, sum (x - lo + mu) <= D + (d+1) mu}` around a
/// box, whose facets all keep distance at least `mu` from the box.
fn corner_cell(lo: &[Rational], hi: &[Rational], mu: &Rational) -> Vec<Point> {
    let d = lo.len();
    let width: Rational = lo.iter().zip(hi).map(|(a, b)| b - a).sum();
    let side = width + mu * rational::int(d as i64 + 1);
    let base: Vec<Rational> = lo.iter().map(|a| a - mu).collect();
    let mut verts = vec![Point::new(base.clone())];
    for i in 0..d {
        let mut v = base.clone();
        v[i] += &side;
        verts.push(Point::new(v));
    }
    verts
}

const CELL_PERTURB_ROUNDS: usize = 32;

fn jitter<R: Rng>(verts: &[Point], magnitude: &Rational, rng: &mut R) -> Vec<Point> {
    let den = 1i64 << 20;
    let unit = magnitude / rational::int(den);
    verts
        .iter()
        .map(|v| {
            Point::new(
                v.coords()
                    .iter()
                    .map(|c| c + &unit * rational::int(rng.gen_range(1 - den..den)))
                    .collect(),
            )
        })
        .collect()
}

/// Splits `P` into `r` parts (`⌊n / ⌈n/r⌉⌋` nonempty ones of sizes in
/// `[⌈n/r⌉, 2⌈n/r⌉)`) and encloses each in a perturbed simplex cell.
pub fn build_partition(p: &PointSet, r: usize, seed: u64) -> Result<SimplicialPartition> {
    let n = p.len();
    if r == 0 || r > n {
        return Err(Error::InvalidR { r, n });
    }
    let d = p.dim;
    let m = n.div_ceil(r);
    let k = n / m;
    let base = n / k;
    let extra = n % k;
    let sizes: Vec<usize> = (0..k).map(|i| base + usize::from(i < extra)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut groups = Vec::with_capacity(k);
    kd_split(&p.points, &mut order, &sizes, 0, &mut groups);

    let all: Vec<&Point> = p.points.iter().collect();
    let (glo, ghi) = bounding_box(&all, d);
    let mut scale = glo.iter().zip(&ghi).map(|(a, b)| b - a).max().unwrap_or_else(Rational::zero);
    if scale.is_zero() {
        scale = Rational::one();
    }
    let scale = dyadic_floor(&scale);
    let floor_margin = &scale / rational::int(1 << 16);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::with_capacity(r);
    for group in groups {
        let pts: Vec<&Point> = group.iter().map(|&i| &p.points[i]).collect();
        let (lo, hi) = bounding_box(&pts, d);
        let width: Rational = lo.iter().zip(&hi).map(|(a, b)| b - a).sum();
        let mu = dyadic_floor(&(width / rational::int(100) + &floor_margin));
        let corners = corner_cell(&lo, &hi, &mu);
        let mut magnitude = &mu / rational::int(8 * d as i64);
        let mut cell = None;
        for _ in 0..CELL_PERTURB_ROUNDS {
            let verts = jitter(&corners, &magnitude, &mut rng);
            if let Ok(s) = Simplex::new(verts) {
                if pts.iter().all(|x| point_in_simplex(x, &s, Closure::Open).unwrap_or(false)) {
                    cell = Some(s);
                    break;
                }
            }
            magnitude /= rational::int(2);
        }
        let cell = cell.ok_or(Error::RetryExhausted { rounds: CELL_PERTURB_ROUNDS })?;
        parts.push(Part { indices: group, cell, dummy: false });
    }

    // Dummy cells: tiny simplices at moment-curve positions beyond the data.
    let anchor: Vec<Rational> = ghi.iter().map(|c| c + &scale * rational::int(2)).collect();
    for j in 0..r - k {
        let t = BigInt::from(j as u64 + 1);
        let mut power = BigInt::one();
        let center: Vec<Rational> = anchor
            .iter()
            .map(|a| {
                power *= &t;
                a + &scale * Rational::from_integer(power.clone())
            })
            .collect();
        let size = &scale / rational::pow2(10 + j as u32);
        let mut verts = vec![Point::new(center.clone())];
        for i in 0..d {
            let mut v = center.clone();
            v[i] += &size;
            verts.push(Point::new(v));
        }
        let cell = Simplex::new(verts)?;
        parts.push(Part { indices: Vec::new(), cell, dummy: true });
    }
    Ok(SimplicialPartition { dim: d, n, r, parts })
}

/// Probe hyperplanes for a crossing profile.
#[derive(Clone, Debug)]
pub enum Probes {
    Explicit(Vec<OrientedHyperplane>),
    Auto { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingProfile {
    pub probes: usize,
    /// `histogram[c]` probes crossed exactly `c` cells.
    pub histogram: Vec<usize>,
    pub max: usize,
    pub per_probe: Vec<usize>,
}

/// Hyperplanes through random `d`-subsets of `P` (first half) and through
/// random points of its bounding box with random normals (second half).
pub fn auto_probes(p: &PointSet, count: usize, seed: u64) -> Vec<OrientedHyperplane> {
    let d = p.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<&Point> = p.points.iter().collect();
    let (lo, hi) = bounding_box(&all, d);
    let mut out = Vec::with_capacity(count);
    let spanned = if p.len() >= d { count / 2 } else { 0 };
    let mut attempts = 0;
    while out.len() < spanned && attempts < 10 * count + 100 {
        attempts += 1;
        let idx = rand::seq::index::sample(&mut rng, p.len(), d);
        let pts: Vec<&Point> = idx.iter().map(|i| &p.points[i]).collect();
        if let Ok(h) = OrientedHyperplane::through(&pts) {
            out.push(h);
        }
    }
    while out.len() < count {
        let normal: Vec<Rational> =
            (0..d).map(|_| rational::int(rng.gen_range(-(1i64 << 16)..=1i64 << 16))).collect();
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let through: Vec<Rational> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| a + (b - a) * rational::ratio(rng.gen_range(0..=1i64 << 16), 1 << 16))
            .collect();
        let offset = crate::linalg::dot(&normal, &through);
        out.push(OrientedHyperplane { normal, offset });
    }
    out
}

/// Counts, per probe, the cells with vertices strictly on both sides.
pub fn crossing_profile(pi: &SimplicialPartition, p: &PointSet, probes: &Probes) -> Result<CrossingProfile> {
    let hyperplanes = match probes {
        Probes::Explicit(hs) => hs.clone(),
        Probes::Auto { count, seed } => auto_probes(p, *count, *seed),
    };
    for h in &hyperplanes {
        if h.dim() != pi.dim {
            return Err(Error::DimensionMismatch { expected: pi.dim, found: h.dim() });
        }
    }
    // Integer frame: cell vertices times their common denominator.
    let scale = linalg::common_denominator(pi.parts.iter().flat_map(|q| q.cell.vertices()));
    let cells: Vec<Vec<Vec<BigInt>>> = pi
        .parts
        .iter()
        .map(|q| q.cell.vertices().iter().map(|v| linalg::scaled(v, &scale)).collect())
        .collect();
    let per_probe: Vec<usize> = hyperplanes
        .par_iter()
        .map(|h| {
            let (normal, offset) = scaled_probe(h, &scale);
            cells
                .iter()
                .filter(|verts| {
                    let mut pos = false;
                    let mut neg = false;
                    for v in verts.iter() {
                        match (linalg::int_dot(&normal, v) - &offset).sign() {
                            num_bigint::Sign::Plus => pos = true,
                            num_bigint::Sign::Minus => neg = true,
                            num_bigint::Sign::NoSign => {}
                        }
                    }
                    pos && neg
                })
                .count()
        })
        .collect();
    let max = per_probe.iter().copied().max().unwrap_or(0);
    let mut histogram = vec![0usize; max + 1];
    for &c in &per_probe {
        histogram[c] += 1;
    }
    Ok(CrossingProfile { probes: per_probe.len(), histogram, max, per_probe })
}

/// Integer `(A, B)` with `sign(A . X - B) = side(X / scale)`.
fn scaled_probe(h: &OrientedHyperplane, scale: &BigInt) -> (Vec<BigInt>, BigInt) {
    let mut l = h.offset.denom().clone();
    for a in &h.normal {
        l = num_integer::Integer::lcm(&l, a.denom());
    }
    let normal = h.normal.iter().map(|a| a.numer() * (&l / a.denom())).collect();
    let offset = h.offset.numer() * (&l / h.offset.denom()) * scale;
    (normal, offset)
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.max(f64::MIN_POSITIVE).ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    if var == 0.0 {
        0.0
    } else {
        cov / var
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_floor_brackets() {
        assert_eq!(dyadic_floor(&rational::ratio(3, 1)), rational::int(2));
        assert_eq!(dyadic_floor(&rational::ratio(1, 3)), rational::ratio(1, 4));
        assert_eq!(dyadic_floor(&rational::int(4)), rational::int(4));
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [16.0, 64.0, 256.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.sqrt()).collect();
        assert!((log_log_slope(&xs, &ys) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn corner_cell_keeps_margin() {
        let lo = vec![rational::int(0), rational::int(0)];
        let hi = vec![rational::int(2), rational::int(1)];
        let v = corner_cell(&lo, &hi, &rational::ratio(1, 8));
        let s = Simplex::new(v).unwrap();
        for c in [[0, 0], [2, 0], [0, 1], [2, 1]] {
            assert!(point_in_simplex(&Point::from_ints(&c), &s, Closure::Open).unwrap());
        }
    }
}
