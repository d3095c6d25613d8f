//! Points, hyperplanes, simplices and the orientation predicate.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        Sign::of_ordering(q.cmp(&Rational::zero()))
    }

    pub fn of_int(q: &BigInt) -> Sign {
        Sign::of_ordering(q.cmp(&BigInt::zero()))
    }

    pub fn of_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

/// A point with exact rational coordinates. Ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    #[serde(with = "rational::serde_vec")]
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Point {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Point {
        Point::new(coords.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn origin(dim: usize) -> Point {
        Point::new(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point::new(self.coords.iter().map(|a| a * s).collect())
    }

    pub fn centroid(points: &[Point]) -> Point {
        let dim = points[0].dim();
        let n = Rational::from_integer(BigInt::from(points.len()));
        let mut sum = vec![Rational::zero(); dim];
        for p in points {
            for (s, c) in sum.iter_mut().zip(&p.coords) {
                *s += c;
            }
        }
        Point::new(sum.into_iter().map(|s| s / &n).collect())
    }

    /// Convex (or affine) combination `sum w_i p_i`.
    pub fn combination(points: &[Point], weights: &[Rational]) -> Point {
        let dim = points[0].dim();
        let mut sum = vec![Rational::zero(); dim];
        for (p, w) in points.iter().zip(weights) {
            for (s, c) in sum.iter_mut().zip(&p.coords) {
                *s += c * w;
            }
        }
        Point::new(sum)
    }

    /// Max-norm distance.
    pub fn linf_distance(&self, other: &Point) -> Rational {
        linalg::abs_max(self.sub(other).coords())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rational::format_rational(c))?;
        }
        write!(f, ")")
    }
}

fn check_dims(points: &[&Point], dim: usize) -> Result<()> {
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
    }
    Ok(())
}

/// Sign of det[[1 ... 1], [p_1 ... p_{d+1}]] with points as columns.
pub fn orientation(pts: &[&Point]) -> Result<Sign> {
    let d = pts.first().map_or(0, |p| p.dim());
    check_dims(pts, d)?;
    if pts.len() != d + 1 {
        return Err(Error::WrongArity { expected: d + 1, found: pts.len() });
    }
    Ok(orientation_unchecked(pts))
}

pub(crate) fn orientation_unchecked(pts: &[&Point]) -> Sign {
    // det(M) = det(M^T): rows (1, p_i) give the same sign.
    let rows: Vec<Vec<Rational>> = pts
        .iter()
        .map(|p| {
            let mut r = Vec::with_capacity(p.dim() + 1);
            r.push(rational::one());
            r.extend(p.coords.iter().cloned());
            r
        })
        .collect();
    linalg::determinant_sign(&rows)
}

/// Affine independence of up to `d + 1` points in `R^d`.
pub fn affinely_independent(pts: &[&Point]) -> bool {
    if pts.len() <= 1 {
        return true;
    }
    let d = pts[0].dim();
    if pts.len() > d + 1 {
        return false;
    }
    if pts.len() == d + 1 {
        return orientation_unchecked(pts) != Sign::Zero;
    }
    let rows: Vec<Vec<Rational>> = pts[1..].iter().map(|p| p.sub(pts[0]).coords).collect();
    linalg::rank(&rows) == pts.len() - 1
}

/// `{x : normal . x = offset}` with positive side `normal . x > offset`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedHyperplane {
    #[serde(with = "rational::serde_vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub offset: Rational,
}

impl fmt::Debug for OrientedHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} . x = {}", Point::new(self.normal.clone()), rational::format_rational(&self.offset))
    }
}

impl OrientedHyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("zero normal".into()));
        }
        Ok(OrientedHyperplane { normal, offset })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal . x - offset`.
    pub fn evaluate(&self, x: &Point) -> Rational {
        linalg::dot(&self.normal, x.coords()) - &self.offset
    }

    pub fn side(&self, x: &Point) -> Sign {
        Sign::of(&self.evaluate(x))
    }

    pub fn flipped(&self) -> Self {
        OrientedHyperplane {
            normal: self.normal.iter().map(|a| -a).collect(),
            offset: -&self.offset,
        }
    }

    /// Hyperplane spanned by `d` affinely independent points, with an
    /// arbitrary but deterministic orientation and a primitive integer normal.
    pub fn through(support: &[&Point]) -> Result<Self> {
        let d = support.first().map_or(0, |p| p.dim());
        check_dims(support, d)?;
        if support.len() != d || d == 0 {
            return Err(Error::WrongArity { expected: d, found: support.len() });
        }
        let rows: Vec<Vec<Rational>> =
            support[1..].iter().map(|p| p.sub(support[0]).coords).collect();
        let normal = linalg::cofactor_normal(&rows, d);
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::DegenerateSupport);
        }
        let normal = linalg::primitive(&normal);
        let offset = linalg::dot(&normal, support[0].coords());
        Ok(OrientedHyperplane { normal, offset })
    }

    pub fn oriented_towards(self, witness: &Point) -> Result<Self> {
        match self.side(witness) {
            Sign::Positive => Ok(self),
            Sign::Negative => Ok(self.flipped()),
            Sign::Zero => Err(Error::WitnessOnHyperplane),
        }
    }

    /// True when both open sides contain vertices of `points`.
    pub fn crosses(&self, points: &[Point]) -> bool {
        let mut pos = false;
        let mut neg = false;
        for p in points {
            match self.side(p) {
                Sign::Positive => pos = true,
                Sign::Negative => neg = true,
                Sign::Zero => {}
            }
            if pos && neg {
                return true;
            }
        }
        false
    }

    /// True when the hyperplane meets the convex hull of `points`.
    pub fn meets_hull(&self, points: &[Point]) -> bool {
        let mut pos = false;
        let mut neg = false;
        for p in points {
            match self.side(p) {
                Sign::Positive => pos = true,
                Sign::Negative => neg = true,
                Sign::Zero => return true,
            }
        }
        pos && neg
    }
}

/// Hyperplane through `support` with `witness` strictly on the positive side.
pub fn hyperplane_through(support: &[Point], witness: &Point) -> Result<OrientedHyperplane> {
    let refs: Vec<&Point> = support.iter().collect();
    check_dims(&[witness], support.first().map_or(witness.dim(), Point::dim))?;
    OrientedHyperplane::through(&refs)?.oriented_towards(witness)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Open,
    Closed,
}

/// Convex hull of affinely independent points, stored in lexicographic
/// vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidArgument("simplex without vertices".into()));
        };
        let d = first.dim();
        check_dims(&vertices.iter().collect::<Vec<_>>(), d)?;
        if !affinely_independent(&vertices.iter().collect::<Vec<_>>()) {
            return Err(Error::DegenerateSupport);
        }
        vertices.sort();
        Ok(Simplex { vertices })
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Intrinsic dimension `k` (number of vertices minus one).
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn centroid(&self) -> Point {
        Point::centroid(&self.vertices)
    }

    /// The facets, each omitting one vertex, in vertex order.
    pub fn facets(&self) -> Vec<Simplex> {
        (0..self.vertices.len())
            .map(|skip| Simplex {
                vertices: self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, v)| v.clone())
                    .collect(),
            })
            .collect()
    }

    /// Barycentric coordinates of `x`, or `None` when `x` is off the affine
    /// hull.
    pub fn barycentric(&self, x: &Point) -> Option<Vec<Rational>> {
        let d = self.ambient_dim();
        let k = self.vertices.len();
        let mut a = vec![vec![Rational::zero(); k]; d + 1];
        let mut b = vec![Rational::zero(); d + 1];
        for (j, v) in self.vertices.iter().enumerate() {
            for (i, c) in v.coords().iter().enumerate() {
                a[i][j] = c.clone();
            }
            a[d][j] = rational::one();
        }
        for (i, c) in x.coords().iter().enumerate() {
            b[i] = c.clone();
        }
        b[d] = rational::one();
        linalg::solve(&a, &b)
    }
}

/// Barycentric membership test; open means relative interior.
pub fn point_in_simplex(x: &Point, s: &Simplex, mode: Closure) -> Result<bool> {
    if x.dim() != s.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: s.ambient_dim(), found: x.dim() });
    }
    Ok(match s.barycentric(x) {
        None => false,
        Some(lambda) => match mode {
            Closure::Closed => lambda.iter().all(|l| !l.is_negative()),
            Closure::Open => lambda.iter().all(Signed::is_positive),
        },
    })
}

/// A labeled point list. `generic` records a completed genericity scan; it is
/// false both for degenerate sets and for sets too large to scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub dim: usize,
    pub points: Vec<Point>,
    pub generic: bool,
}

/// Largest number of `(d+1)`-subsets a construction-time genericity scan
/// will visit.
pub const GENERICITY_SCAN_LIMIT: u128 = 2_000_000;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

impl PointSet {
    /// Validates dimensions and scans genericity when the scan is affordable.
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        check_dims(&points.iter().collect::<Vec<_>>(), dim)?;
        let generic = binomial(points.len(), dim + 1) <= GENERICITY_SCAN_LIMIT
            && is_generic(dim, &points);
        Ok(PointSet { dim, points, generic })
    }

    /// Skips the genericity scan; `generic` is set to `assume_generic`.
    pub fn unscanned(dim: usize, points: Vec<Point>, assume_generic: bool) -> Result<Self> {
        check_dims(&points.iter().collect::<Vec<_>>(), dim)?;
        Ok(PointSet { dim, points, generic: assume_generic })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn subset(&self, indices: &[usize]) -> PointSet {
        let pts: Vec<Point> = indices.iter().map(|&i| self.points[i].clone()).collect();
        PointSet { dim: self.dim, points: pts, generic: self.generic }
    }
}

/// Every `(d+1)`-subset has nonzero orientation (every smaller set is
/// independent when fewer than `d + 1` points exist).
pub fn is_generic(dim: usize, points: &[Point]) -> bool {
    let n = points.len();
    if n < dim + 1 {
        return affinely_independent(&points.iter().collect::<Vec<_>>());
    }
    let mut idx: Vec<usize> = (0..=dim).collect();
    loop {
        let pts: Vec<&Point> = idx.iter().map(|&i| &points[i]).collect();
        if orientation_unchecked(&pts) == Sign::Zero {
            return false;
        }
        if !next_combination(&mut idx, n) {
            return true;
        }
    }
}

/// Advances a sorted index combination in lexicographic order.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        if k == 0 || !next_combination(&mut idx, n) {
            return out;
        }
    }
}

const PERTURB_DENOMINATOR_BITS: u32 = 20;
pub const PERTURB_ROUNDS: usize = 32;

/// Moves every coordinate by a seeded offset of absolute value below
/// `magnitude`, halving the magnitude until the result is generic.
pub fn perturb_general_position(p: &PointSet, seed: u64, magnitude: &Rational) -> Result<PointSet> {
    if !magnitude.is_positive() {
        return Err(Error::InvalidArgument("perturbation magnitude must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let den = 1i64 << PERTURB_DENOMINATOR_BITS;
    let mut mag = magnitude.clone();
    for _ in 0..PERTURB_ROUNDS {
        let unit = &mag / rational::int(den);
        let points: Vec<Point> = p
            .points
            .iter()
            .map(|x| {
                Point::new(
                    x.coords()
                        .iter()
                        .map(|c| c + &unit * rational::int(rng.gen_range(1 - den..den)))
                        .collect(),
                )
            })
            .collect();
        if is_generic(p.dim, &points) {
            return Ok(PointSet { dim: p.dim, points, generic: true });
        }
        mag /= rational::int(2);
    }
    Err(Error::RetryExhausted { rounds: PERTURB_ROUNDS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    #[test]
    fn orientation_examples() {
        let o = |a: &[i64], b: &[i64], c: &[i64]| orientation(&[&p(a), &p(b), &p(c)]).unwrap();
        assert_eq!(o(&[0, 0], &[1, 0], &[0, 1]), Sign::Positive);
        assert_eq!(o(&[0, 0], &[0, 1], &[1, 0]), Sign::Negative);
        assert_eq!(o(&[0, 0], &[1, 1], &[2, 2]), Sign::Zero);
        assert_eq!(orientation(&[&p(&[1]), &p(&[3])]).unwrap(), Sign::Positive);
        assert!(matches!(
            orientation(&[&p(&[0, 0]), &p(&[1, 0, 0]), &p(&[0, 1])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hyperplane_examples() {
        let h = hyperplane_through(&[p(&[0, 0]), p(&[1, 0])], &p(&[0, 1])).unwrap();
        assert_eq!(h.normal, vec![int(0), int(1)]);
        assert_eq!(h.offset, int(0));
        let h = hyperplane_through(&[p(&[0, 0]), p(&[1, 0])], &p(&[0, -1])).unwrap();
        assert_eq!(h.normal, vec![int(0), int(-1)]);
        assert_eq!(h.offset, int(0));
        assert_eq!(
            hyperplane_through(&[p(&[0, 0]), p(&[2, 0])], &p(&[1, 0])),
            Err(Error::WitnessOnHyperplane)
        );
        assert_eq!(
            hyperplane_through(&[p(&[1, 1]), p(&[1, 1])], &p(&[1, 0])),
            Err(Error::DegenerateSupport)
        );
    }

    #[test]
    fn simplex_membership_examples() {
        let s = Simplex::new(vec![p(&[0, 0]), p(&[4, 0]), p(&[0, 4])]).unwrap();
        let c = s.centroid();
        assert!(point_in_simplex(&c, &s, Closure::Open).unwrap());
        assert!(point_in_simplex(&c, &s, Closure::Closed).unwrap());
        assert!(point_in_simplex(&p(&[4, 0]), &s, Closure::Closed).unwrap());
        assert!(!point_in_simplex(&p(&[4, 0]), &s, Closure::Open).unwrap());
        assert!(!point_in_simplex(&p(&[9, 9]), &s, Closure::Closed).unwrap());
        let seg = Simplex::new(vec![p(&[0, 0]), p(&[2, 2])]).unwrap();
        assert!(point_in_simplex(&p(&[1, 1]), &seg, Closure::Open).unwrap());
        assert!(!point_in_simplex(&p(&[1, 0]), &seg, Closure::Closed).unwrap());
    }

    #[test]
    fn simplex_order_is_canonical() {
        let a = Simplex::new(vec![p(&[3, 0]), p(&[0, 1]), p(&[0, 0])]).unwrap();
        assert_eq!(a.vertices()[0], p(&[0, 0]));
        assert_eq!(a.vertices()[2], p(&[3, 0]));
        assert!(Simplex::new(vec![p(&[0, 0]), p(&[1, 1]), p(&[2, 2])]).is_err());
    }

    #[test]
    fn perturbation_examples() {
        let collinear = PointSet::new(2, vec![p(&[0, 0]), p(&[1, 0]), p(&[2, 0])]).unwrap();
        assert!(!collinear.generic);
        let mag = ratio(1, 100);
        let out = perturb_general_position(&collinear, 3, &mag).unwrap();
        assert!(out.generic);
        let pts: Vec<&Point> = out.points.iter().collect();
        assert_ne!(orientation(&pts).unwrap(), Sign::Zero);
        for (a, b) in collinear.points.iter().zip(&out.points) {
            assert!(a.linf_distance(b) < mag);
        }
        assert_eq!(out, perturb_general_position(&collinear, 3, &mag).unwrap());

        let dup = PointSet::new(2, vec![p(&[1, 1]), p(&[1, 1])]).unwrap();
        let out = perturb_general_position(&dup, 9, &mag).unwrap();
        assert_ne!(out.points[0], out.points[1]);
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let c = combinations(4, 2);
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![0, 1]);
        assert_eq!(c[5], vec![2, 3]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(binomial(15, 3), 455);
    }
}
