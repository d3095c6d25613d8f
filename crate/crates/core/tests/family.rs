use pierce_core::family::*;
use pierce_core::geometry::{combinations, point_in_simplex, Closure, OrientedHyperplane};
use pierce_core::lp::{linear_feasible, LinearConstraint, Relation};
use pierce_core::rational::{int, ratio};
use pierce_core::sample;
use pierce_core::{Error, Point, Sign, Simplex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn eps_triangle(x: i64, y: i64) -> Simplex {
    let c = Point::from_ints(&[x, y]);
    let r = ratio(1, 100);
    let v = |dx: i64, dy: i64| {
        Point::new(vec![&c.coords()[0] + &r * int(dx), &c.coords()[1] + &r * int(dy)])
    };
    Simplex::new(vec![v(-3, -2), v(3, -1), v(1, 3)]).unwrap()
}

fn family(centers: &[(i64, i64)]) -> Family {
    Family::new(centers.iter().map(|&(x, y)| eps_triangle(x, y)).collect()).unwrap()
}

#[test]
fn separation_examples() {
    assert!(is_separated(&family(&[(0, 0), (4, 0), (0, 4)])).unwrap());
    assert!(!is_separated(&family(&[(0, 0), (1, 0), (2, 0)])).unwrap());
}

/// Independent tangent oracle: every line through one vertex of each of the
/// two other members, kept when it separates as required.
fn tangent_oracle(f: &Family, i: usize) -> Vec<OrientedHyperplane> {
    let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    let mut found = Vec::new();
    for a in f.members()[others[0]].vertices() {
        for b in f.members()[others[1]].vertices() {
            let dx = &b.coords()[0] - &a.coords()[0];
            let dy = &b.coords()[1] - &a.coords()[1];
            let normal = vec![-dy, dx];
            let offset = &normal[0] * &a.coords()[0] + &normal[1] * &a.coords()[1];
            let mut h = OrientedHyperplane::new(normal, offset).unwrap();
            if h.side(&f.members()[i].vertices()[0]) == Sign::Positive {
                h = h.flipped();
            }
            let own_ok = f.members()[i].vertices().iter().all(|v| h.side(v) == Sign::Negative);
            let rest_ok = others
                .iter()
                .flat_map(|&j| f.members()[j].vertices())
                .all(|v| h.side(v) != Sign::Negative);
            if own_ok && rest_ok {
                found.push(h);
            }
        }
    }
    found
}

#[test]
fn inner_tangent_matches_assignment_oracle() {
    let f = family(&[(0, 0), (4, 0), (0, 4)]);
    let h = inner_tangent(&f, 2).unwrap();
    let oracle = tangent_oracle(&f, 2);
    assert_eq!(oracle.len(), 1);
    let o = &oracle[0];
    // Same oriented line up to positive scaling.
    let s = &h.normal[0] * &o.normal[1] - &h.normal[1] * &o.normal[0];
    assert_eq!(s, int(0));
    for v in f.union_vertices() {
        assert_eq!(h.side(&v), o.side(&v));
    }
    let touched = (0..2)
        .filter(|&j| f.members()[j].vertices().iter().filter(|v| h.side(v) == Sign::Zero).count() == 1)
        .count();
    assert_eq!(touched, 2);
    assert!(matches!(inner_tangent(&family(&[(0, 0), (1, 0), (2, 0)]), 0), Err(Error::NotSeparated)));
}

#[test]
fn corner_triple_is_tight_with_large_cell() {
    let f = family(&[(0, 0), (10, 0), (0, 10)]);
    assert_eq!(classify_family(&f).unwrap(), FamilyClass::Tight);
    let DeltaCell::BoundedSimplex(s) = delta_cell(&f).unwrap() else { panic!("not bounded") };
    // Each cell vertex lies within 1/10 of a triangle corner.
    for v in s.vertices() {
        let near = [(0, 0), (10, 0), (0, 10)]
            .iter()
            .any(|&(x, y)| v.linf_distance(&Point::from_ints(&[x, y])) < ratio(1, 10));
        assert!(near, "{v:?}");
    }
    let core = colorful_core_oracle(&f).unwrap();
    assert!(core.interior_nonempty());
    for v in s.vertices() {
        assert!(core.contains(v));
    }
}

#[test]
fn collinear_centers_are_crossed() {
    let f = family(&[(0, 0), (5, 0), (10, 0)]);
    assert_eq!(classify_family(&f).unwrap(), FamilyClass::Crossed);
    let t = transversal_through_vertices(&f, true).unwrap();
    assert_eq!(t.support.len(), 2);
    assert_ne!(t.support[0].0, t.support[1].0);
    for m in f.members() {
        assert!(t.hyperplane.meets_hull(m.vertices()));
    }
    assert!(matches!(
        transversal_through_vertices(&family(&[(0, 0), (4, 0), (0, 4)]), false),
        Err(Error::NoTransversal)
    ));
}

#[test]
fn sliver_triple_is_loose() {
    let f = Family::new(sample::sliver_triple()).unwrap();
    assert!(is_separated(&f).unwrap());
    assert_eq!(classify_family(&f).unwrap(), FamilyClass::Loose);
    assert!(matches!(delta_cell(&f).unwrap(), DeltaCell::Empty | DeltaCell::Unbounded));
    assert!(!colorful_core_oracle(&f).unwrap().interior_nonempty());
    // Every pair of slivers spans a hull containing the big triangle's centroid.
    let centroid = Point::from_ints(&[20, 20]);
    for pair in combinations(3, 2) {
        let verts: Vec<Point> = pair.iter().flat_map(|&j| f.members()[j].vertices().to_vec()).collect();
        let hull = hull_constraints(&verts);
        assert!(hull.iter().all(|c| c.holds(centroid.coords())));
    }
    let h = crossing_hyperplane_through_point(&f, &centroid).unwrap();
    assert_eq!(h.side(&centroid), Sign::Zero);
    assert!(f.members().iter().filter(|m| h.meets_hull(m.vertices())).count() >= 2);
}

/// Closed halfspaces of the convex hull of points in the plane, by brute force
/// over point pairs.
fn hull_constraints(points: &[Point]) -> Vec<LinearConstraint> {
    let mut out = Vec::new();
    for pair in combinations(points.len(), 2) {
        let Ok(h) = OrientedHyperplane::through(&[&points[pair[0]], &points[pair[1]]]) else { continue };
        let sides: Vec<Sign> = points.iter().map(|p| h.side(p)).collect();
        let h = if sides.contains(&Sign::Negative) { h.flipped() } else { h };
        if points.iter().all(|p| h.side(p) != Sign::Negative) {
            out.push(LinearConstraint::new(h.normal.clone(), Relation::Ge, h.offset.clone()));
        }
    }
    out
}

#[test]
fn pinning_examples() {
    let f = family(&[(0, 0), (10, 0), (0, 10)]);
    let x = Point::new(vec![ratio(10, 3), ratio(10, 3)]);
    let Pinning::Pinned(w) = pinned_with_witness(&f, &x).unwrap() else { panic!("not pinned") };
    assert!(w.reproduces(&x));
    assert!(point_in_simplex(&x, &w.simplex().unwrap(), Closure::Closed).unwrap());
    for (j, y) in w.points.iter().enumerate() {
        assert!(point_in_simplex(y, &f.members()[j], Closure::Closed).unwrap());
    }
    assert_eq!(pinned_with_witness(&f, &Point::from_ints(&[50, 50])).unwrap(), Pinning::NotPinned);
    let v = f.members()[0].vertices()[1].clone();
    let Pinning::Pinned(w) = pinned_with_witness(&f, &v).unwrap() else { panic!("not pinned") };
    assert_eq!(w.points[0], v);
}

#[test]
fn point_member_is_never_loose() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..200 {
        let mut members = sample::random_family_members(2, &ratio(1, 3), &mut rng);
        members[0] = Simplex::new(vec![members[0].centroid()]).unwrap();
        let Ok(f) = Family::new(members) else { continue };
        if let Ok(class) = classify_family(&f) {
            assert_ne!(class, FamilyClass::Loose);
            checked += 1;
        }
    }
    assert!(checked > 150);
}

/// Random families checked against the core oracle, the cell-boundedness
/// dichotomy, split containment and tangent uniqueness.
#[test]
fn random_families_satisfy_structural_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tight = 0;
    let mut loose = 0;
    for round in 0..150 {
        let members = if round % 3 == 0 {
            sample::random_facet_family(2, &mut rng)
        } else {
            sample::random_family_members(2, &ratio(2, 5), &mut rng)
        };
        let f = Family::new(members).unwrap();
        if !is_separated(&f).unwrap() {
            continue;
        }
        let class = classify_family(&f).unwrap();
        let core = colorful_core_oracle(&f).unwrap();
        assert_eq!(class == FamilyClass::Tight, core.interior_nonempty());
        let tangents = inner_tangents(&f).unwrap();
        for i in 0..3 {
            assert_eq!(tangent_oracle(&f, i).len(), 1);
        }
        let pos: Vec<LinearConstraint> = tangents
            .iter()
            .map(|h| LinearConstraint::new(h.normal.clone(), Relation::Ge, h.offset.clone()))
            .collect();
        let positive_nonempty = linear_feasible(2, &pos).unwrap().is_feasible();
        let bounded = matches!(delta_cell(&f).unwrap(), DeltaCell::BoundedSimplex(_));
        assert!(positive_nonempty != bounded);
        if let DeltaCell::BoundedSimplex(s) = delta_cell(&f).unwrap() {
            tight += 1;
            let c = s.centroid();
            for a in f.members()[0].vertices() {
                for b in f.members()[1].vertices() {
                    for e in f.members()[2].vertices() {
                        let t = Simplex::new(vec![a.clone(), b.clone(), e.clone()]).unwrap();
                        assert!(point_in_simplex(&c, &t, Closure::Closed).unwrap());
                    }
                }
            }
            for (i, m) in f.members().iter().enumerate() {
                for v in m.vertices() {
                    for (j, h) in tangents.iter().enumerate() {
                        if j != i {
                            assert_ne!(h.side(v), Sign::Negative);
                        }
                    }
                }
            }
        } else {
            loose += 1;
        }
    }
    assert!(tight > 10 && loose > 5, "tight {tight} loose {loose}");
}
