//! Classification of `(d+1)`-families of simplices as crossed, loose or
//! tight, together with inner tangents, the cell `Δ(K)`, pinning witnesses
//! and transversal searches.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    combinations, point_in_simplex, Closure, OrientedHyperplane, Point, Sign, Simplex,
};
use crate::linalg::{self, IntHyperplane};
use num_bigint::BigInt;
use crate::lp::{linear_feasible, Feasibility, LinearConstraint, Relation};
use crate::rational::{self, Rational};
use num_traits::{Signed, Zero};

/// `d + 1` pairwise vertex-disjoint simplices in `R^d`. Members may have any
/// dimension up to `d`; single points are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    dim: usize,
    members: Vec<Simplex>,
    /// Common denominator of all vertex coordinates.
    scale: BigInt,
    /// Vertex coordinates multiplied by `scale`, member by member.
    ints: Vec<Vec<Vec<BigInt>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyClass {
    Crossed,
    Loose,
    Tight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaCell {
    BoundedSimplex(Simplex),
    Empty,
    Unbounded,
}

impl Family {
    pub fn new(members: Vec<Simplex>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::InvalidArgument("family without members".into()));
        };
        let dim = first.ambient_dim();
        if members.len() != dim + 1 {
            return Err(Error::WrongArity { expected: dim + 1, found: members.len() });
        }
        for m in &members {
            if m.ambient_dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.ambient_dim() });
            }
        }
        for (a, b) in combinations(members.len(), 2).iter().map(|p| (p[0], p[1])) {
            if members[a].vertices().iter().any(|v| members[b].vertices().contains(v)) {
                return Err(Error::InvalidArgument(format!(
                    "members {a} and {b} share a vertex"
                )));
            }
        }
        let scale = linalg::common_denominator(members.iter().flat_map(|m| m.vertices()));
        let ints = members
            .iter()
            .map(|m| m.vertices().iter().map(|v| linalg::scaled(v, &scale)).collect())
            .collect();
        Ok(Family { dim, members, scale, ints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[Simplex] {
        &self.members
    }

    /// All member vertices, member by member.
    pub fn union_vertices(&self) -> Vec<Point> {
        self.members.iter().flat_map(|m| m.vertices().iter().cloned()).collect()
    }

    /// Visits every choice of one vertex per member in `chosen`, passing the
    /// scaled vertices, in mixed-radix order. Stops when `f` returns false.
    fn for_each_assignment<F>(&self, chosen: &[usize], mut f: F) -> Result<()>
    where
        F: FnMut(&[&[BigInt]]) -> Result<bool>,
    {
        let radix: Vec<usize> = chosen.iter().map(|&j| self.ints[j].len()).collect();
        let mut digits = vec![0usize; chosen.len()];
        let mut pts: Vec<&[BigInt]> = Vec::with_capacity(chosen.len());
        loop {
            pts.clear();
            pts.extend(chosen.iter().zip(&digits).map(|(&j, &t)| self.ints[j][t].as_slice()));
            if !f(&pts)? {
                return Ok(());
            }
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    return Ok(());
                }
                digits[pos] += 1;
                if digits[pos] < radix[pos] {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    fn union_ints(&self) -> Vec<&[BigInt]> {
        self.ints.iter().flat_map(|m| m.iter().map(Vec::as_slice)).collect()
    }

    fn all_members(&self) -> Vec<usize> {
        (0..self.members.len()).collect()
    }

    fn others(&self, i: usize) -> Vec<usize> {
        (0..self.members.len()).filter(|&j| j != i).collect()
    }
}

/// The common nonzero orientation of all colorful vertex tuples, or `None`
/// when both signs occur.
pub fn separation_sign(f: &Family) -> Result<Option<Sign>> {
    let mut pos = false;
    let mut neg = false;
    let mut zero = false;
    f.for_each_assignment(&f.all_members(), |pts| {
        match linalg::int_orientation(pts) {
            Sign::Positive => pos = true,
            Sign::Negative => neg = true,
            Sign::Zero => zero = true,
        }
        Ok(!(pos && neg))
    })?;
    if pos && neg {
        return Ok(None);
    }
    if zero {
        return Err(Error::DegenerateVertices("zero colorful orientation".into()));
    }
    Ok(Some(if pos { Sign::Positive } else { Sign::Negative }))
}

/// True iff every colorful vertex tuple has the same nonzero orientation.
pub fn is_separated(f: &Family) -> Result<bool> {
    Ok(separation_sign(f)?.is_some())
}

fn require_separated(f: &Family) -> Result<()> {
    if is_separated(f)? {
        Ok(())
    } else {
        Err(Error::NotSeparated)
    }
}

/// Searches all vertex assignments for the tangent omitting member `i`;
/// assumes separation was checked. Works in scaled coordinates.
fn tangent_scaled(f: &Family, i: usize) -> Result<IntHyperplane> {
    let mut found: Option<IntHyperplane> = None;
    let mut count = 0usize;
    let own = &f.ints[i];
    f.for_each_assignment(&f.others(i), |pts| {
        let h = IntHyperplane::through(pts)
            .ok_or_else(|| Error::DegenerateVertices("dependent colorful vertices".into()))?;
        let s = h.side(&own[0]);
        if s == Sign::Zero || own.iter().any(|v| h.side(v) != s) {
            return Ok(true);
        }
        let h = if s == Sign::Positive { h.flipped() } else { h };
        let mut valid = true;
        let mut touching = vec![0usize; f.members.len()];
        'members: for (j, m) in f.ints.iter().enumerate() {
            if j == i {
                continue;
            }
            for v in m {
                match h.side(v) {
                    Sign::Negative => {
                        valid = false;
                        break 'members;
                    }
                    Sign::Zero => touching[j] += 1,
                    Sign::Positive => {}
                }
            }
        }
        if valid && touching.iter().any(|&t| t > 1) {
            return Err(Error::DegenerateVertices(
                "inner tangent contains two vertices of one member".into(),
            ));
        }
        if valid {
            count += 1;
            found = Some(h);
        }
        Ok(true)
    })?;
    match (count, found) {
        (1, Some(h)) => Ok(h),
        (c, _) => Err(Error::DegenerateVertices(format!(
            "expected one inner tangent for member {i}, found {c}"
        ))),
    }
}

fn tangent_unchecked(f: &Family, i: usize) -> Result<OrientedHyperplane> {
    Ok(tangent_scaled(f, i)?.unscale(&f.scale))
}

/// The unique hyperplane touching every member `j != i` at one vertex, with
/// those members on its closed positive side and member `i` strictly on the
/// negative side.
pub fn inner_tangent(f: &Family, i: usize) -> Result<OrientedHyperplane> {
    if i >= f.members.len() {
        return Err(Error::IndexOutOfRange { index: i, len: f.members.len() });
    }
    require_separated(f)?;
    tangent_unchecked(f, i)
}

/// All `d + 1` inner tangents, indexed by the omitted member.
pub fn inner_tangents(f: &Family) -> Result<Vec<OrientedHyperplane>> {
    require_separated(f)?;
    (0..f.members.len()).map(|i| tangent_unchecked(f, i)).collect()
}

fn halfspace(h: &OrientedHyperplane, relation: Relation) -> LinearConstraint {
    LinearConstraint::new(h.normal.clone(), relation, h.offset.clone())
}

/// Intersection of the tangents' negative open sides, classified by whether
/// the closed positive sides have a common point.
pub fn delta_cell_from_tangents(dim: usize, tangents: &[OrientedHyperplane]) -> Result<DeltaCell> {
    let positive: Vec<LinearConstraint> =
        tangents.iter().map(|h| halfspace(h, Relation::Ge)).collect();
    if linear_feasible(dim, &positive)?.is_feasible() {
        let negative: Vec<LinearConstraint> =
            tangents.iter().map(|h| halfspace(h, Relation::Lt)).collect();
        return Ok(if linear_feasible(dim, &negative)?.is_feasible() {
            DeltaCell::Unbounded
        } else {
            DeltaCell::Empty
        });
    }
    tangent_simplex(tangents).map(DeltaCell::BoundedSimplex)
}

/// The simplex whose vertices are the intersections of all but one tangent.
fn tangent_simplex(tangents: &[OrientedHyperplane]) -> Result<Simplex> {
    let mut vertices = Vec::with_capacity(tangents.len());
    for k in 0..tangents.len() {
        let (a, b): (Vec<Vec<Rational>>, Vec<Rational>) = tangents
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, h)| (h.normal.clone(), h.offset.clone()))
            .unzip();
        let v = linalg::solve(&a, &b)
            .ok_or_else(|| Error::DegenerateVertices("inner tangents not in general position".into()))?;
        vertices.push(Point::new(v));
    }
    Simplex::new(vertices).map_err(|_| Error::DegenerateVertices("degenerate tangent simplex".into()))
}

/// `Δ(K)`, the intersection of the negative open sides of the inner tangents.
pub fn delta_cell(f: &Family) -> Result<DeltaCell> {
    let tangents = inner_tangents(f)?;
    delta_cell_from_tangents(f.dim, &tangents)
}

/// Whether the closed positive sides of `d + 1` hyperplanes in `R^d` have a
/// common point, decided by the Farkas certificate: the normals have a
/// one-dimensional space of linear dependencies `λ`, and the system is
/// infeasible iff `λ` can be taken positive with `Σ λ_i b_i > 0`. Returns
/// `None` when some `d` normals are dependent.
fn positive_sides_meet(tangents: &[IntHyperplane]) -> Option<bool> {
    let k = tangents.len();
    let lambda: Vec<BigInt> = (0..k)
        .map(|i| {
            let rows: Vec<Vec<BigInt>> = tangents
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.normal.clone())
                .collect();
            let det = linalg::int_det(&rows);
            if i % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect();
    if lambda.iter().any(Zero::is_zero) {
        return None;
    }
    let positive = lambda[0].is_positive();
    if lambda.iter().any(|l| l.is_positive() != positive) {
        return Some(true);
    }
    let certificate: BigInt = lambda.iter().zip(tangents).map(|(l, h)| l * &h.offset).sum();
    let certificate = if positive { certificate } else { -certificate };
    Some(!certificate.is_positive())
}

/// The class together with `Δ(K)` when the family is tight.
pub fn analyze_family(f: &Family) -> Result<(FamilyClass, Option<Simplex>)> {
    if !is_separated(f)? {
        return Ok((FamilyClass::Crossed, None));
    }
    let scaled: Vec<IntHyperplane> =
        (0..f.members.len()).map(|i| tangent_scaled(f, i)).collect::<Result<_>>()?;
    let tangents: Vec<OrientedHyperplane> = scaled.iter().map(|h| h.unscale(&f.scale)).collect();
    match positive_sides_meet(&scaled) {
        Some(true) => Ok((FamilyClass::Loose, None)),
        Some(false) => Ok((FamilyClass::Tight, Some(tangent_simplex(&tangents)?))),
        None => Err(Error::DegenerateVertices("inner tangents not in general position".into())),
    }
}

/// Crossed when not separated; otherwise tight exactly when the closed
/// positive sides of the inner tangents are disjoint (so `Δ(K)` is a bounded
/// simplex), loose when they meet.
pub fn classify_family(f: &Family) -> Result<FamilyClass> {
    if !is_separated(f)? {
        return Ok(FamilyClass::Crossed);
    }
    let scaled: Vec<IntHyperplane> =
        (0..f.members.len()).map(|i| tangent_scaled(f, i)).collect::<Result<_>>()?;
    match positive_sides_meet(&scaled) {
        Some(true) => Ok(FamilyClass::Loose),
        Some(false) => Ok(FamilyClass::Tight),
        None => Err(Error::DegenerateVertices("inner tangents not in general position".into())),
    }
}

/// Intersection of all closed colorful simplices, as closed halfspaces
/// `normal . x >= offset`.
#[derive(Clone, Debug)]
pub struct ColorfulCore {
    pub dim: usize,
    pub halfspaces: Vec<OrientedHyperplane>,
    pub interior_point: Option<Point>,
}

impl ColorfulCore {
    pub fn interior_nonempty(&self) -> bool {
        self.interior_point.is_some()
    }

    pub fn constraints(&self) -> Vec<LinearConstraint> {
        self.halfspaces.iter().map(|h| halfspace(h, Relation::Ge)).collect()
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.halfspaces.iter().all(|h| h.side(x) != Sign::Negative)
    }
}

/// Every colorful simplex is the intersection of the halfspaces bounded by
/// its facets; since the side of the omitted vertex is the same for every
/// vertex of its member, the core is cut out by one halfspace per choice of
/// omitted member and vertex assignment of the rest.
pub fn colorful_core_oracle(f: &Family) -> Result<ColorfulCore> {
    require_separated(f)?;
    let mut halfspaces = Vec::new();
    for k in 0..f.members.len() {
        let witness = &f.ints[k][0];
        f.for_each_assignment(&f.others(k), |pts| {
            let h = IntHyperplane::through(pts)
                .ok_or_else(|| Error::DegenerateVertices("dependent colorful vertices".into()))?;
            let h = match h.side(witness) {
                Sign::Positive => h,
                Sign::Negative => h.flipped(),
                Sign::Zero => {
                    return Err(Error::DegenerateVertices("vertex on a colorful facet".into()))
                }
            };
            let h = h.unscale(&f.scale);
            if !halfspaces.contains(&h) {
                halfspaces.push(h);
            }
            Ok(true)
        })?;
    }
    let strict: Vec<LinearConstraint> =
        halfspaces.iter().map(|h| halfspace(h, Relation::Gt)).collect();
    let interior_point = linear_feasible(f.dim, &strict)?.point();
    Ok(ColorfulCore { dim: f.dim, halfspaces, interior_point })
}

/// Points `y_i` inside member `i` with `x = sum weights_i y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorfulWitness {
    pub points: Vec<Point>,
    #[serde(with = "crate::rational::serde_vec")]
    pub weights: Vec<Rational>,
}

impl ColorfulWitness {
    pub fn simplex(&self) -> Result<Simplex> {
        Simplex::new(self.points.clone())
    }

    /// `x` is the stated convex combination.
    pub fn reproduces(&self, x: &Point) -> bool {
        self.weights.iter().all(|w| !w.is_negative())
            && self.weights.iter().sum::<Rational>() == rational::one()
            && Point::combination(&self.points, &self.weights) == *x
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pinning {
    Pinned(ColorfulWitness),
    NotPinned,
}

/// Decides `x ∈ conv(∪K)` and, when it holds, splits the convex combination
/// into one point per member.
pub fn pinned_with_witness(f: &Family, x: &Point) -> Result<Pinning> {
    if x.dim() != f.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, found: x.dim() });
    }
    let members = f.members.len();
    let fallback: Vec<Point> = f.members.iter().map(|m| m.vertices()[0].clone()).collect();
    for (j, m) in f.members.iter().enumerate() {
        if point_in_simplex(x, m, Closure::Closed)? {
            let mut points = fallback.clone();
            points[j] = x.clone();
            let mut weights = vec![Rational::zero(); members];
            weights[j] = rational::one();
            return Ok(Pinning::Pinned(ColorfulWitness { points, weights }));
        }
    }
    let verts = f.union_vertices();
    let n = verts.len();
    let mut rows = Vec::with_capacity(n + f.dim + 1);
    for v in 0..n {
        let mut c = vec![Rational::zero(); n];
        c[v] = rational::one();
        rows.push(LinearConstraint::new(c, Relation::Ge, Rational::zero()));
    }
    rows.push(LinearConstraint::new(vec![rational::one(); n], Relation::Eq, rational::one()));
    for axis in 0..f.dim {
        let c = verts.iter().map(|v| v.coords()[axis].clone()).collect();
        rows.push(LinearConstraint::new(c, Relation::Eq, x.coords()[axis].clone()));
    }
    let Feasibility::Feasible(lambda) = linear_feasible(n, &rows)? else {
        return Ok(Pinning::NotPinned);
    };
    let lambda = lambda.into_coords();
    let mut points = Vec::with_capacity(members);
    let mut weights = Vec::with_capacity(members);
    let mut offset = 0;
    for m in &f.members {
        let k = m.vertices().len();
        let mass: Rational = lambda[offset..offset + k].iter().sum();
        if mass.is_zero() {
            points.push(m.vertices()[0].clone());
        } else {
            let local: Vec<Rational> = lambda[offset..offset + k].iter().map(|l| l / &mass).collect();
            points.push(Point::combination(m.vertices(), &local));
        }
        weights.push(mass);
        offset += k;
    }
    let witness = ColorfulWitness { points, weights };
    assert!(witness.reproduces(x), "colorful witness failed exact re-verification");
    Ok(Pinning::Pinned(witness))
}

/// A hyperplane spanned by union vertices, with the `(member, vertex)` pairs
/// it passes through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    pub hyperplane: OrientedHyperplane,
    pub support: Vec<(usize, usize)>,
}

/// Searches the hyperplanes spanned by `d` union vertices for one meeting
/// every member. With `require_crossed`, separated families are rejected by
/// the orientation criterion before searching.
pub fn transversal_through_vertices(f: &Family, require_crossed: bool) -> Result<Transversal> {
    if require_crossed && is_separated(f)? {
        return Err(Error::NoTransversal);
    }
    let labels: Vec<(usize, usize)> = f
        .members
        .iter()
        .enumerate()
        .flat_map(|(j, m)| (0..m.vertices().len()).map(move |t| (j, t)))
        .collect();
    let verts = f.union_ints();
    for subset in combinations(verts.len(), f.dim) {
        let pts: Vec<&[BigInt]> = subset.iter().map(|&i| verts[i]).collect();
        let Some(h) = IntHyperplane::through(&pts) else {
            continue;
        };
        let meets = |m: &Vec<Vec<BigInt>>| {
            let sides: Vec<Sign> = m.iter().map(|v| h.side(v)).collect();
            sides.contains(&Sign::Zero)
                || (sides.contains(&Sign::Positive) && sides.contains(&Sign::Negative))
        };
        if f.ints.iter().all(meets) {
            return Ok(Transversal {
                hyperplane: h.unscale(&f.scale),
                support: subset.iter().map(|&i| labels[i]).collect(),
            });
        }
    }
    Err(Error::NoTransversal)
}

/// For a loose family pinned by `x`, a hyperplane through `x` and `d - 1`
/// union vertices meeting at least `d` members.
pub fn crossing_hyperplane_through_point(f: &Family, x: &Point) -> Result<OrientedHyperplane> {
    if classify_family(f)? != FamilyClass::Loose {
        return Err(Error::NotLoose);
    }
    if pinned_with_witness(f, x)? == Pinning::NotPinned {
        return Err(Error::NotPinned);
    }
    let verts = f.union_vertices();
    for subset in combinations(verts.len(), f.dim - 1) {
        let mut pts: Vec<&Point> = vec![x];
        pts.extend(subset.iter().map(|&i| &verts[i]));
        let Ok(h) = OrientedHyperplane::through(&pts) else {
            continue;
        };
        let met = f.members.iter().filter(|m| h.meets_hull(m.vertices())).count();
        if met >= f.dim {
            return Ok(h);
        }
    }
    Err(Error::NoTransversal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn seg(a: i64, b: i64) -> Simplex {
        Simplex::new(vec![Point::from_ints(&[a]), Point::from_ints(&[b])]).unwrap()
    }

    #[test]
    fn intervals_on_the_line() {
        let f = Family::new(vec![seg(0, 1), seg(2, 3)]).unwrap();
        assert!(is_separated(&f).unwrap());
        let h0 = inner_tangent(&f, 0).unwrap();
        assert_eq!(h0.side(&Point::from_ints(&[2])), Sign::Zero);
        assert_eq!(h0.side(&Point::from_ints(&[0])), Sign::Negative);
        let h1 = inner_tangent(&f, 1).unwrap();
        assert_eq!(h1.side(&Point::from_ints(&[1])), Sign::Zero);
        assert_eq!(h1.side(&Point::from_ints(&[3])), Sign::Negative);
        let DeltaCell::BoundedSimplex(s) = delta_cell(&f).unwrap() else {
            panic!("expected a bounded cell");
        };
        assert_eq!(s.vertices(), &[Point::from_ints(&[1]), Point::from_ints(&[2])]);
        assert_eq!(classify_family(&f).unwrap(), FamilyClass::Tight);
        let core = colorful_core_oracle(&f).unwrap();
        assert!(core.contains(&Point::from_ints(&[1])));
        assert!(core.contains(&Point::from_ints(&[2])));
        assert!(!core.contains(&Point::from_ints(&[3])));
        assert!(core.interior_nonempty());
    }

    #[test]
    fn overlapping_intervals_have_a_vertex_transversal() {
        let f = Family::new(vec![seg(0, 2), seg(1, 3)]).unwrap();
        assert!(!is_separated(&f).unwrap());
        let t = transversal_through_vertices(&f, true).unwrap();
        let x = &t.hyperplane.offset / &t.hyperplane.normal[0];
        assert!(x == int(1) || x == int(2));
        assert!(matches!(crossing_hyperplane_through_point(&f, &Point::from_ints(&[1])), Err(Error::NotLoose)));
    }

    #[test]
    fn shared_vertices_are_rejected() {
        assert!(Family::new(vec![seg(0, 1), seg(1, 3)]).is_err());
    }
}
