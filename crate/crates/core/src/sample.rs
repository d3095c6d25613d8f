//! Seeded instance generators for experiments and test suites.

use num_bigint::BigInt;
use rand::Rng;

use crate::geometry::{Point, Simplex};
use crate::rational::{self, Rational};

/// Bits of resolution of random coordinates.
pub const COORD_BITS: u32 = 32;

/// Uniform rational in `[0, 1)` with denominator `2^COORD_BITS`.
pub fn unit<R: Rng>(rng: &mut R) -> Rational {
    let k: u64 = rng.gen_range(0..1u64 << COORD_BITS);
    Rational::new(BigInt::from(k), BigInt::from(1u64 << COORD_BITS))
}

pub fn uniform_point<R: Rng>(dim: usize, rng: &mut R) -> Point {
    Point::new((0..dim).map(|_| unit(rng)).collect())
}

/// `n` points uniform in the unit cube.
pub fn uniform_points<R: Rng>(dim: usize, n: usize, rng: &mut R) -> Vec<Point> {
    (0..n).map(|_| uniform_point(dim, rng)).collect()
}

/// A full-dimensional simplex whose vertices lie within `radius` of `center`
/// in the max-norm.
pub fn small_simplex<R: Rng>(center: &Point, radius: &Rational, rng: &mut R) -> Simplex {
    let d = center.dim();
    loop {
        let verts: Vec<Point> = (0..=d)
            .map(|_| {
                Point::new(
                    center
                        .coords()
                        .iter()
                        .map(|c| c + radius * (unit(rng) * rational::int(2) - rational::one()))
                        .collect(),
                )
            })
            .collect();
        if let Ok(s) = Simplex::new(verts) {
            return s;
        }
    }
}

/// Points `(t, t^2)` on a parabola: convex position with integer
/// coordinates.
pub fn convex_position(n: usize) -> Vec<Point> {
    (0..n as i64).map(|t| Point::from_ints(&[t, t * t])).collect()
}

/// `ε`-simplices around three far-apart corners; the family is tight.
pub fn corner_triple(scale: i64, radius: &Rational) -> Vec<Simplex> {
    let tri = |x: i64, y: i64, r: &Rational| {
        let c = Point::from_ints(&[x, y]);
        let e = |dx: i64, dy: i64, k: i64| {
            Point::new(vec![
                &c.coords()[0] + r * rational::ratio(dx, k),
                &c.coords()[1] + r * rational::ratio(dy, k),
            ])
        };
        Simplex::new(vec![e(-3, -2, 3), e(3, -1, 3), e(1, 3, 3)]).expect("triangle")
    };
    vec![tri(0, 0, radius), tri(scale, 0, radius), tri(0, scale, radius)]
}

/// Thin triangles along the middle portions of the edges of a big triangle;
/// the family is separated and loose.
pub fn sliver_triple() -> Vec<Simplex> {
    let corners = [Point::from_ints(&[0, 0]), Point::from_ints(&[60, 0]), Point::from_ints(&[0, 60])];
    let centroid = Point::centroid(&corners);
    (0..3)
        .map(|e| {
            let a = &corners[e];
            let b = &corners[(e + 1) % 3];
            let along = |t: Rational| a.add(&b.sub(a).scale(&t));
            let p = along(rational::ratio(1, 5));
            let q = along(rational::ratio(4, 5));
            let mid = along(rational::ratio(1, 2));
            let inward = mid.add(&centroid.sub(&mid).scale(&rational::ratio(1, 20)));
            Simplex::new(vec![p, q, inward]).expect("sliver")
        })
        .collect()
}

/// `per_edge` thin triangles on disjoint stretches of each edge of a big
/// triangle, with vertices jittered off the edge lines.
pub fn sliver_ring<R: Rng>(per_edge: usize, rng: &mut R) -> Vec<Simplex> {
    let corners = [Point::from_ints(&[0, 0]), Point::from_ints(&[60, 0]), Point::from_ints(&[0, 60])];
    let centroid = Point::centroid(&corners);
    let k = per_edge as i64;
    let mut out = Vec::with_capacity(3 * per_edge);
    for e in 0..3 {
        let a = &corners[e];
        let b = &corners[(e + 1) % 3];
        let along = |t: Rational| a.add(&b.sub(a).scale(&t));
        for j in 0..k {
            let jitter = |p: Point, rng: &mut R| {
                Point::new(p.coords().iter().map(|c| c + (unit(rng) - rational::ratio(1, 2)) / rational::int(50)).collect())
            };
            let p = jitter(along(rational::ratio(10 * j + 1, 10 * k)), rng);
            let q = jitter(along(rational::ratio(10 * j + 9, 10 * k)), rng);
            let mid = along(rational::ratio(2 * j + 1, 2 * k));
            let inward = jitter(mid.add(&centroid.sub(&mid).scale(&rational::ratio(1, 20))), rng);
            out.push(Simplex::new(vec![p, q, inward]).expect("sliver"));
        }
    }
    out
}

/// `d + 1` small simplices with random centers and radii in `R^d`.
pub fn random_family_members<R: Rng>(dim: usize, max_radius: &Rational, rng: &mut R) -> Vec<Simplex> {
    (0..=dim)
        .map(|_| {
            let center = uniform_point(dim, rng);
            let radius = max_radius * (unit(rng) * rational::ratio(9, 10) + rational::ratio(1, 10));
            small_simplex(&center, &radius, rng)
        })
        .collect()
}

/// The facets of `s`, each shrunk towards its own centroid by `factor`.
pub fn shrunken_facets(s: &Simplex, factor: &Rational) -> Vec<Simplex> {
    s.facets()
        .iter()
        .map(|f| {
            let c = f.centroid();
            let verts = f.vertices().iter().map(|v| c.add(&v.sub(&c).scale(factor))).collect();
            Simplex::new(verts).expect("shrunk facet")
        })
        .collect()
}

/// Shrunken facets of a random simplex, with random shrink factor in
/// `[2/5, 4/5)`. In the plane such families are typically separated and
/// loose; in space they are crossed.
pub fn random_facet_family<R: Rng>(dim: usize, rng: &mut R) -> Vec<Simplex> {
    let s = loop {
        if let Ok(s) = Simplex::new(uniform_points(dim, dim + 1, rng)) {
            break s;
        }
    };
    let factor = rational::ratio(2, 5) + unit(rng) * rational::ratio(2, 5);
    shrunken_facets(&s, &factor)
}
