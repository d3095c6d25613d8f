use pierce_core::family::{classify_family, Family, FamilyClass};
use pierce_core::geometry::Simplex;
use pierce_core::rational;
use pierce_core::sample::{sliver_ring, small_simplex};
use pierce_core::geometry::{point_in_simplex, Closure, Point};
use pierce_core::selection::pinning_pipeline;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_families(sigma: &[Simplex], seed: u64) -> usize {
    let out = pinning_pipeline(sigma, seed).unwrap();
    for f in &out.families {
        let members: Vec<Simplex> = f.simplices.iter().map(|&i| sigma[i].clone()).collect();
        let family = Family::new(members).unwrap();
        assert_eq!(classify_family(&family).unwrap(), FamilyClass::Loose);
        assert!(f.witness.reproduces(out.point.as_ref().unwrap()));
        for (y, &i) in f.witness.points.iter().zip(&f.simplices) {
            assert!(point_in_simplex(y, &sigma[i], Closure::Closed).unwrap());
        }
    }
    out.families.len()
}

#[test]
fn sliver_ring_has_pinned_loose_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sigma = sliver_ring(2, &mut rng);
    let out = pinning_pipeline(&sigma, 11).unwrap();
    assert!(out.loose_before > 0);
    assert!(out.point.is_some());
    assert!(check_families(&sigma, 11) >= 1);
}

#[test]
fn larger_sliver_ring() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sigma = sliver_ring(3, &mut rng);
    assert!(check_families(&sigma, 2) >= 1);
}

#[test]
fn small_separated_simplices() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut sigma = Vec::new();
    for c in [[0, 0], [100, 0], [0, 100], [50, 50], [0, 50], [50, 0]] {
        sigma.push(small_simplex(&Point::from_ints(&c), &rational::ratio(1, 2), &mut rng));
    }
    let out = pinning_pipeline(&sigma, 4).unwrap();
    assert_eq!(out.point.is_none(), out.loose_after == 0);
    if out.loose_after == 0 {
        assert!(out.families.is_empty());
    }
}

#[test]
fn pipeline_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sigma = sliver_ring(2, &mut rng);
    let a = pinning_pipeline(&sigma, 9).unwrap();
    let b = pinning_pipeline(&sigma, 9).unwrap();
    assert_eq!(a.point, b.point);
    assert_eq!(a.families, b.families);
}

#[test]
fn rejects_too_few_simplices() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sigma = sliver_ring(1, &mut rng);
    assert!(pinning_pipeline(&sigma[..2], 0).is_err());
}
