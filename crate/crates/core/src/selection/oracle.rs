//! Exact depth oracles over hyperplane arrangements.
//!
//! Both oracles work in an integer frame (all points multiplied by the common
//! denominator) and evaluate depth from the sign vector of a candidate point
//! against every facet hyperplane.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{is_generic, next_combination, point_in_simplex, Closure, Point, PointSet, Sign, Simplex};
use crate::linalg::{common_denominator, int_det, int_dot, scaled};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthResult {
    pub point: Point,
    pub pierced_count: usize,
    pub pierced_indices: Option<Vec<usize>>,
}

/// Affine function `f(X) = normal . X - offset` whose sign is the
/// orientation of `(q_1, .., q_d, X)`.
#[derive(Clone, Debug)]
struct Facet {
    normal: Vec<BigInt>,
    offset: BigInt,
}

impl Facet {
    fn of(support: &[&[BigInt]]) -> Facet {
        let d = support[0].len();
        let q1 = support[0];
        let mut rows: Vec<Vec<BigInt>> = support[1..]
            .iter()
            .map(|q| q.iter().zip(q1).map(|(a, b)| a - b).collect())
            .collect();
        let normal: Vec<BigInt> = (0..d)
            .map(|k| {
                let unit: Vec<BigInt> =
                    (0..d).map(|j| if j == k { BigInt::one() } else { BigInt::zero() }).collect();
                rows.push(unit);
                let det = int_det(&rows);
                rows.pop();
                det
            })
            .collect();
        let offset = int_dot(&normal, q1);
        Facet { normal, offset }
    }

    /// Sign at the rational point `X / q` with `q > 0`.
    fn sign_at(&self, x: &[BigInt], q: &BigInt) -> Sign {
        Sign::of_int(&(int_dot(&self.normal, x) - &self.offset * q))
    }
}

/// Simplex given by facet indices: facet `k` omits vertex `k`, and the
/// simplex contains `X` iff `parity[k] * sign f_k(X)` equals `orient`.
struct SimplexRecord {
    facets: Vec<usize>,
    parity: Vec<bool>,
    orient: Sign,
}

impl SimplexRecord {
    fn contains(&self, signs: &[Sign], mode: Closure) -> bool {
        self.facets.iter().zip(&self.parity).all(|(&f, &flip)| {
            let s = if flip { signs[f].flip() } else { signs[f] };
            s == self.orient || (mode == Closure::Closed && s == Sign::Zero)
        })
    }
}

struct Arrangement {
    dim: usize,
    scale: BigInt,
    ints: Vec<Vec<BigInt>>,
    facets: Vec<Facet>,
    simplices: Vec<SimplexRecord>,
}

impl Arrangement {
    fn build(dim: usize, points: &[Point], tuples: &[Vec<usize>]) -> Result<Arrangement> {
        let scale = common_denominator(points);
        let ints: Vec<Vec<BigInt>> = points.iter().map(|p| scaled(p, &scale)).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut facets = Vec::new();
        let mut simplices = Vec::with_capacity(tuples.len());
        for t in tuples {
            let mut t = t.clone();
            t.sort_unstable();
            let mut ids = Vec::with_capacity(dim + 1);
            let mut parity = Vec::with_capacity(dim + 1);
            for k in 0..=dim {
                let key: Vec<usize> =
                    t.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
                let id = *index.entry(key.clone()).or_insert_with(|| {
                    let support: Vec<&[BigInt]> = key.iter().map(|&v| ints[v].as_slice()).collect();
                    facets.push(Facet::of(&support));
                    facets.len() - 1
                });
                ids.push(id);
                parity.push((dim - k) % 2 == 1);
            }
            let last = &facets[ids[dim]];
            let orient = Sign::of_int(&(int_dot(&last.normal, &ints[t[dim]]) - &last.offset));
            if orient == Sign::Zero {
                return Err(Error::DegenerateVertices(format!("simplex {t:?} is flat")));
            }
            simplices.push(SimplexRecord { facets: ids, parity, orient });
        }
        Ok(Arrangement { dim, scale, ints, facets, simplices })
    }

    /// Distinct intersection points of `d` facet hyperplanes with
    /// independent normals, as reduced `(X, q)` with `q > 0`.
    fn vertices(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        let d = self.dim;
        let l = self.facets.len();
        if l < d {
            return Vec::new();
        }
        let mut seen = HashSet::new();
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            let rows: Vec<&Facet> = idx.iter().map(|&i| &self.facets[i]).collect();
            if let Some(v) = solve_int(&rows) {
                seen.insert(v);
            }
            if !next_combination(&mut idx, l) {
                break;
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    fn signs_at(&self, x: &[BigInt], q: &BigInt) -> Vec<Sign> {
        self.facets.iter().map(|f| f.sign_at(x, q)).collect()
    }

    fn depth(&self, signs: &[Sign], mode: Closure) -> usize {
        self.simplices.iter().filter(|s| s.contains(signs, mode)).count()
    }

    fn unscale(&self, x: &[BigInt], q: &BigInt) -> Point {
        let den = q * &self.scale;
        Point::new(x.iter().map(|c| Rational::new(c.clone(), den.clone())).collect())
    }
}

/// Cramer solution of `normal_i . X = offset_i`, reduced with `q > 0`.
fn solve_int(rows: &[&Facet]) -> Option<(Vec<BigInt>, BigInt)> {
    let d = rows.len();
    let m: Vec<Vec<BigInt>> = rows.iter().map(|f| f.normal.clone()).collect();
    let q = int_det(&m);
    if q.is_zero() {
        return None;
    }
    let mut x: Vec<BigInt> = (0..d)
        .map(|k| {
            let mk: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|f| {
                    let mut r = f.normal.clone();
                    r[k] = f.offset.clone();
                    r
                })
                .collect();
            int_det(&mk)
        })
        .collect();
    Some(reduce(&mut x, q))
}

fn reduce(x: &mut Vec<BigInt>, mut q: BigInt) -> (Vec<BigInt>, BigInt) {
    if q.is_negative() {
        q = -q;
        x.iter_mut().for_each(|c| *c = -&*c);
    }
    let g = x.iter().fold(q.clone(), |g, c| g.gcd(c));
    if !g.is_one() {
        x.iter_mut().for_each(|c| *c = &*c / &g);
        q = q / &g;
    }
    (x.clone(), q)
}

fn half(v: &[BigInt]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn cross(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// One direction strictly inside every region of the central line
/// arrangement with the given normals (at least two non-parallel ones).
fn sector_directions(normals: &[&[BigInt]]) -> Vec<Vec<BigInt>> {
    let mut dirs: Vec<Vec<BigInt>> = Vec::with_capacity(2 * normals.len());
    for n in normals {
        let u = vec![-&n[1], n[0].clone()];
        dirs.push(u.iter().map(|c| -c).collect());
        dirs.push(u);
    }
    dirs.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| cross(b, a).cmp(&BigInt::zero()))
    });
    dirs.dedup_by(|a, b| half(a) == half(b) && cross(a, b).is_zero());
    let k = dirs.len();
    (0..k)
        .map(|i| {
            let (a, b) = (&dirs[i], &dirs[(i + 1) % k]);
            vec![&a[0] + &b[0], &a[1] + &b[1]]
        })
        .collect()
}

/// Rational point strictly inside every cell of the line arrangement
/// `normal . x = offset` (some cells may be listed more than once).
fn line_cell_points(lines: &[(Vec<BigInt>, BigInt)]) -> Vec<Vec<Rational>> {
    let facets: Vec<Facet> =
        lines.iter().map(|(n, b)| Facet { normal: n.clone(), offset: b.clone() }).collect();
    let mut verts = HashSet::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            if let Some(v) = solve_int(&[&facets[i], &facets[j]]) {
                verts.insert(v);
            }
        }
    }
    if verts.is_empty() {
        return parallel_cell_points(lines);
    }
    let mut out = Vec::new();
    for (x, q) in verts {
        let vals: Vec<BigInt> =
            facets.iter().map(|f| int_dot(&f.normal, &x) - &f.offset * &q).collect();
        let incident: Vec<&[BigInt]> = facets
            .iter()
            .zip(&vals)
            .filter(|(_, v)| v.is_zero())
            .map(|(f, _)| f.normal.as_slice())
            .collect();
        for w in sector_directions(&incident) {
            let delta = step_length(&facets, &vals, &q, &w);
            out.push(
                x.iter()
                    .zip(&w)
                    .map(|(c, wc)| Rational::new(c.clone(), q.clone()) + &delta * Rational::from_integer(wc.clone()))
                    .collect(),
            );
        }
    }
    out
}

/// Half the largest step along `w` from `X / q` that crosses no facet not
/// through the point, capped at one.
fn step_length(facets: &[Facet], vals: &[BigInt], q: &BigInt, w: &[BigInt]) -> Rational {
    let mut best = Rational::one();
    for (f, v) in facets.iter().zip(vals) {
        if v.is_zero() {
            continue;
        }
        let nw = int_dot(&f.normal, w);
        if nw.is_zero() {
            continue;
        }
        let t = Rational::new(v.abs(), q * nw.abs());
        if t < best {
            best = t;
        }
    }
    best / Rational::from_integer(BigInt::from(2))
}

fn parallel_cell_points(lines: &[(Vec<BigInt>, BigInt)]) -> Vec<Vec<Rational>> {
    let a = &lines[0].0;
    let k = if a[0].is_zero() { 1 } else { 0 };
    let aa = Rational::from_integer(int_dot(a, a));
    let mut ts: Vec<Rational> = lines
        .iter()
        .map(|(n, b)| {
            let lambda = Rational::new(n[k].clone(), a[k].clone());
            Rational::from_integer(b.clone()) / (lambda * &aa)
        })
        .collect();
    ts.sort();
    ts.dedup();
    let mut params = vec![&ts[0] - Rational::one()];
    for w in ts.windows(2) {
        params.push((&w[0] + &w[1]) / Rational::from_integer(BigInt::from(2)));
    }
    params.push(&ts[ts.len() - 1] + Rational::one());
    params
        .into_iter()
        .map(|t| a.iter().map(|c| &t * Rational::from_integer(c.clone())).collect())
        .collect()
}

fn cross3(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Directions inside every region of a central plane arrangement in 3D whose
/// normals span space, found on the two affine slices `w . x = +-|w|^2`.
fn orthant_directions(normals: &[&[BigInt]]) -> Vec<Vec<BigInt>> {
    let (w, u1, u2) = slice_frame(normals);
    let mut out = Vec::new();
    for sigma in [1i32, -1] {
        for st in line_cell_points(&slice_lines(normals, &w, &u1, &u2, sigma)) {
            let q = st.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            let s = st[0].numer() * (&q / st[0].denom());
            let t = st[1].numer() * (&q / st[1].denom());
            let dir: Vec<BigInt> = (0..3)
                .map(|k| BigInt::from(sigma) * &q * &w[k] + &s * &u1[k] + &t * &u2[k])
                .collect();
            out.push(dir);
        }
    }
    out
}

/// A direction `w` parallel to no normal, and a basis `u1, u2` of `w`'s
/// orthogonal complement.
fn slice_frame(normals: &[&[BigInt]]) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let mut seed = [1i64, 2, 5];
    let w: Vec<BigInt> = loop {
        let w: Vec<BigInt> = seed.iter().map(|&c| BigInt::from(c)).collect();
        if normals.iter().all(|n| cross3(n, &w).iter().any(|c| !c.is_zero())) {
            break w;
        }
        seed = [seed[0] * 3 + 1, seed[1] * 5 - 7, seed[2] * 7 + 3];
    };
    let axis = (0..3)
        .map(|k| {
            let mut e = vec![BigInt::zero(); 3];
            e[k] = BigInt::one();
            e
        })
        .find(|e| cross3(&w, e).iter().any(|c| !c.is_zero()))
        .expect("nonzero w has a transverse axis");
    let u1 = cross3(&w, &axis);
    let u2 = cross3(&w, &u1);
    (w, u1, u2)
}

/// Traces of the planes `n . x = 0` on the slice `{sigma w + s u1 + t u2}`,
/// in the `(s, t)` coordinates.
fn slice_lines(
    normals: &[&[BigInt]],
    w: &[BigInt],
    u1: &[BigInt],
    u2: &[BigInt],
    sigma: i32,
) -> Vec<(Vec<BigInt>, BigInt)> {
    normals
        .iter()
        .map(|n| {
            let nw = int_dot(n, w);
            (vec![int_dot(n, u1), int_dot(n, u2)], if sigma > 0 { -nw } else { nw })
        })
        .collect()
}

fn region_directions(dim: usize, normals: &[&[BigInt]]) -> Vec<Vec<BigInt>> {
    match dim {
        2 => sector_directions(normals),
        _ => orthant_directions(normals),
    }
}

fn signs_along(normals: &[&[BigInt]], w: &[BigInt]) -> Vec<Sign> {
    normals.iter().map(|n| Sign::of_int(&int_dot(n, w))).collect()
}

/// Sign vectors of the incident normals over every region around a vertex.
/// Cheaper than `region_directions`: no explicit directions are built.
fn region_patterns(dim: usize, normals: &[&[BigInt]]) -> Vec<Vec<Sign>> {
    if normals.len() == dim {
        return (0..1u32 << dim)
            .map(|m| {
                (0..dim).map(|k| if m >> k & 1 == 1 { Sign::Positive } else { Sign::Negative }).collect()
            })
            .collect();
    }
    if dim == 2 {
        return sector_directions(normals).iter().map(|w| signs_along(normals, w)).collect();
    }
    let (w, u1, u2) = slice_frame(normals);
    let mut out = Vec::new();
    for sigma in [1i32, -1] {
        out.extend(line_cell_patterns(&slice_lines(normals, &w, &u1, &u2, sigma)));
    }
    out
}

/// Sign vectors over the lines of every cell of a line arrangement.
fn line_cell_patterns(lines: &[(Vec<BigInt>, BigInt)]) -> Vec<Vec<Sign>> {
    let facets: Vec<Facet> =
        lines.iter().map(|(n, b)| Facet { normal: n.clone(), offset: b.clone() }).collect();
    let mut verts = HashSet::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            if let Some(v) = solve_int(&[&facets[i], &facets[j]]) {
                verts.insert(v);
            }
        }
    }
    if verts.is_empty() {
        return parallel_cell_points(lines)
            .iter()
            .map(|x| {
                lines
                    .iter()
                    .map(|(n, b)| {
                        let v: Rational = n.iter().zip(x).map(|(a, c)| c * Rational::from_integer(a.clone())).sum();
                        Sign::of(&(v - Rational::from_integer(b.clone())))
                    })
                    .collect()
            })
            .collect();
    }
    let mut out = Vec::new();
    for (x, q) in verts {
        let signs: Vec<Sign> = facets.iter().map(|f| f.sign_at(&x, &q)).collect();
        let incident: Vec<usize> = (0..signs.len()).filter(|&i| signs[i] == Sign::Zero).collect();
        let normals: Vec<&[BigInt]> = incident.iter().map(|&i| facets[i].normal.as_slice()).collect();
        for w in sector_directions(&normals) {
            let mut pattern = signs.clone();
            for (&i, s) in incident.iter().zip(signs_along(&normals, &w)) {
                pattern[i] = s;
            }
            out.push(pattern);
        }
    }
    out
}

struct Best {
    depth: usize,
    vertex: (Vec<BigInt>, BigInt),
    /// Signs of the incident facets in the chosen region.
    pattern: Vec<Sign>,
}

fn pick(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.depth > a.depth { b } else { a }),
        (a, b) => a.or(b),
    }
}

/// Every facet's simplex must be nondegenerate and `d` in {2, 3}.
fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// Independent recount of the edges whose open simplex contains `x`.
pub fn pierced_open(p: &PointSet, edges: &[Vec<usize>], x: &Point) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        let s = Simplex::new(e.iter().map(|&j| p.points[j].clone()).collect())?;
        if point_in_simplex(x, &s, Closure::Open)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Maximum number of open simplices of `E` containing one point.
pub fn brute_force_deepest(p: &PointSet, edges: &[Vec<usize>]) -> Result<DepthResult> {
    check_dim(p.dim)?;
    if edges.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    crate::partition::validate_edges(p.len(), p.dim, edges)?;
    let arr = Arrangement::build(p.dim, &p.points, edges)?;
    let best = arr
        .vertices()
        .into_par_iter()
        .map(|(x, q)| {
            let mut signs = arr.signs_at(&x, &q);
            let incident: Vec<usize> = (0..signs.len()).filter(|&i| signs[i] == Sign::Zero).collect();
            let normals: Vec<&[BigInt]> = incident.iter().map(|&i| arr.facets[i].normal.as_slice()).collect();
            let mut best: Option<Best> = None;
            for pattern in region_patterns(arr.dim, &normals) {
                for (&i, &s) in incident.iter().zip(&pattern) {
                    signs[i] = s;
                }
                let depth = arr.depth(&signs, Closure::Open);
                if best.as_ref().map_or(true, |b| depth > b.depth) {
                    best = Some(Best { depth, vertex: (x.clone(), q.clone()), pattern });
                }
            }
            best
        })
        .reduce(|| None, pick)
        .expect("an edge contributes a vertex");
    let (x, q) = &best.vertex;
    let vals: Vec<BigInt> = arr.facets.iter().map(|f| int_dot(&f.normal, x) - &f.offset * q).collect();
    let normals: Vec<&[BigInt]> =
        arr.facets.iter().zip(&vals).filter(|(_, v)| v.is_zero()).map(|(f, _)| f.normal.as_slice()).collect();
    let w = region_directions(arr.dim, &normals)
        .into_iter()
        .find(|w| signs_along(&normals, w) == best.pattern)
        .expect("every region pattern has a direction");
    let w = &w;
    let delta = step_length(&arr.facets, &vals, q, w);
    let base = arr.unscale(x, q);
    let shift = Point::new(
        w.iter().map(|c| &delta * Rational::new(c.clone(), arr.scale.clone())).collect(),
    );
    let point = base.add(&shift);
    let pierced = pierced_open(p, edges, &point)?;
    assert_eq!(pierced.len(), best.depth, "open depth recount disagrees with the arrangement");
    Ok(DepthResult { point, pierced_count: pierced.len(), pierced_indices: Some(pierced) })
}

/// Lower bound `ceil(prod |P_i| / (d+1)!)` on the colorful closed depth.
pub fn colorful_floor(sizes: &[usize]) -> u128 {
    let prod: u128 = sizes.iter().map(|&s| s as u128).product();
    let fact: u128 = (1..=sizes.len() as u128).product();
    prod.div_ceil(fact)
}

/// Maximum number of closed colorful simplices containing one point.
pub fn colorful_deepest(classes: &[PointSet]) -> Result<DepthResult> {
    let dim = classes.first().map(|c| c.dim).ok_or(Error::WrongArity { expected: 3, found: 0 })?;
    check_dim(dim)?;
    if classes.len() != dim + 1 {
        return Err(Error::WrongArity { expected: dim + 1, found: classes.len() });
    }
    let mut points = Vec::new();
    let mut offsets = Vec::new();
    for (c, class) in classes.iter().enumerate() {
        if class.dim != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: class.dim });
        }
        if class.is_empty() {
            return Err(Error::EmptyColorClass(c));
        }
        offsets.push(points.len());
        points.extend(class.points.iter().cloned());
    }
    if !is_generic(dim, &points) {
        return Err(Error::DegenerateVertices("color classes are not jointly generic".into()));
    }
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let tuples = colorful_tuples(&sizes, &offsets);
    let arr = Arrangement::build(dim, &points, &tuples)?;
    let mut candidates = arr.vertices();
    candidates.extend(arr.ints.iter().map(|x| (x.clone(), BigInt::one())));
    let best = candidates
        .into_par_iter()
        .map(|(x, q)| {
            let depth = arr.depth(&arr.signs_at(&x, &q), Closure::Closed);
            Some(Best { depth, vertex: (x, q), pattern: Vec::new() })
        })
        .reduce(|| None, pick)
        .expect("input points are candidates");
    let point = arr.unscale(&best.vertex.0, &best.vertex.1);
    let mut pierced = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        let s = Simplex::new(t.iter().map(|&j| points[j].clone()).collect())?;
        if point_in_simplex(&point, &s, Closure::Closed)? {
            pierced.push(i);
        }
    }
    assert_eq!(pierced.len(), best.depth, "closed depth recount disagrees with the arrangement");
    assert!(pierced.len() as u128 >= colorful_floor(&sizes), "colorful depth below the floor");
    Ok(DepthResult { point, pierced_count: pierced.len(), pierced_indices: Some(pierced) })
}

/// All colorful tuples in mixed-radix order, as indices into the
/// concatenated classes.
pub(crate) fn colorful_tuples(sizes: &[usize], offsets: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut digits = vec![0usize; sizes.len()];
    loop {
        out.push(digits.iter().zip(offsets).map(|(d, o)| d + o).collect());
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sectors_split_two_lines_into_four() {
        let n1 = [BigInt::from(1), BigInt::from(0)];
        let n2 = [BigInt::from(0), BigInt::from(1)];
        let dirs = sector_directions(&[&n1, &n2]);
        assert_eq!(dirs.len(), 4);
        assert!(dirs.iter().all(|w| !w[0].is_zero() && !w[1].is_zero()));
        let mut patterns: Vec<(bool, bool)> =
            dirs.iter().map(|w| (w[0].is_positive(), w[1].is_positive())).collect();
        patterns.sort();
        patterns.dedup();
        assert_eq!(patterns.len(), 4);
    }

    #[test]
    fn three_planes_give_eight_orthants() {
        let e: Vec<Vec<BigInt>> = (0..3)
            .map(|k| (0..3).map(|j| BigInt::from((j == k) as i32)).collect())
            .collect();
        let normals: Vec<&[BigInt]> = e.iter().map(|v| v.as_slice()).collect();
        let mut patterns: Vec<Vec<bool>> = orthant_directions(&normals)
            .iter()
            .map(|w| w.iter().map(|c| c.is_positive()).collect())
            .collect();
        assert!(orthant_directions(&normals).iter().all(|w| w.iter().all(|c| !c.is_zero())));
        patterns.sort();
        patterns.dedup();
        assert_eq!(patterns.len(), 8);
    }

    #[test]
    fn parallel_lines_have_strip_points() {
        let lines = vec![
            (vec![BigInt::from(1), BigInt::from(1)], BigInt::from(0)),
            (vec![BigInt::from(2), BigInt::from(2)], BigInt::from(6)),
        ];
        assert_eq!(line_cell_points(&lines).len(), 3);
    }

    #[test]
    fn floor_values() {
        assert_eq!(colorful_floor(&[2, 2, 2]), 2);
        assert_eq!(colorful_floor(&[4, 4, 4]), 11);
        assert_eq!(colorful_floor(&[1, 1, 1]), 1);
    }
}
