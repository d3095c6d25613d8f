use pierce_core::extremal::{halving_count, halving_pairs_by_sweep, kset_count};
use pierce_core::geometry::{Point, PointSet};
use pierce_core::sample::{convex_position, uniform_points};
use pierce_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn set(points: Vec<Point>) -> PointSet {
    let d = points[0].dim();
    PointSet::new(d, points).unwrap()
}

fn random_set(d: usize, n: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    set(uniform_points(d, n, &mut rng))
}

#[test]
fn triangle_pairs_all_halve() {
    let r = halving_count(&set(convex_position(3))).unwrap();
    assert_eq!(r.count, 3);
    assert!(r.sides.iter().all(|&(a, b)| a + b == 1));
}

#[test]
fn convex_even_sets_halve_by_diagonals() {
    for n in [4, 6, 8, 10] {
        let p = set(convex_position(n));
        assert_eq!(halving_count(&p).unwrap().count, n / 2, "n = {n}");
    }
    let r = halving_count(&set(convex_position(4))).unwrap();
    assert_eq!(r.subsets, vec![vec![0, 2], vec![1, 3]]);
}

#[test]
fn sweep_agrees_with_direct_counts() {
    for n in 3..=14 {
        for seed in 0..3 {
            let p = random_set(2, n, seed * 100 + n as u64);
            let direct = halving_count(&p).unwrap();
            assert_eq!(direct.subsets, halving_pairs_by_sweep(&p).unwrap(), "n = {n}, seed = {seed}");
            let cap = (n - 2).div_ceil(2);
            assert!(direct.sides.iter().all(|&(a, b)| a <= cap && b <= cap));
        }
    }
}

#[test]
fn spatial_halving_sides_are_bounded() {
    let p = random_set(3, 9, 4);
    let r = halving_count(&p).unwrap();
    assert!(r.count > 0);
    assert!(r.sides.iter().all(|&(a, b)| a <= 3 && b <= 3 && a + b == 6));
}

#[test]
fn kset_examples() {
    let p = set(convex_position(4));
    assert_eq!(kset_count(&p, 1).unwrap().count, 4);
    assert_eq!(kset_count(&p, 2).unwrap().count, 4);
    assert_eq!(kset_count(&p, 4).unwrap().count, 1);
    let heptagon = set(convex_position(7));
    assert_eq!(kset_count(&heptagon, 1).unwrap().count, 7);
}

#[test]
fn kset_counts_are_symmetric() {
    for (d, n, seed) in [(2, 9, 1), (2, 10, 2), (3, 8, 3)] {
        let p = random_set(d, n, seed);
        for k in 1..n {
            assert_eq!(kset_count(&p, k).unwrap().count, kset_count(&p, n - k).unwrap().count, "k = {k}");
        }
    }
}

#[test]
fn extremal_errors() {
    let p = set(convex_position(4));
    assert!(matches!(kset_count(&p, 0), Err(Error::InvalidK { .. })));
    assert!(matches!(kset_count(&p, 5), Err(Error::InvalidK { .. })));
    let one = set(vec![Point::from_ints(&[0, 0])]);
    assert!(matches!(halving_count(&one), Err(Error::TooFewPoints { .. })));
}
