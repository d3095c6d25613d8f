//! Pinned loose families among a collection of simplices, found through
//! their boundaries, a complete loose block and colorful selection.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{classify_family, pinned_with_witness, ColorfulWitness, Family, FamilyClass, Pinning};
use crate::geometry::{is_generic, Point, PointSet, Simplex};
use crate::rational::{self, serde_str, Rational};
use crate::turan::{encode_simplex, kpartite_turan, loose_relation, TuranConstants};

use super::oracle::colorful_deepest;

const SHRINK_ROUNDS: usize = 32;
const REPRESENTATIVE_ROUNDS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PinnedFamily {
    /// Indices into the input collection, sorted.
    pub simplices: Vec<usize>,
    pub witness: ColorfulWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct PinningOutcome {
    pub point: Option<Point>,
    pub families: Vec<PinnedFamily>,
    /// Input simplices per color class.
    pub colors: Vec<Vec<usize>>,
    /// Loose colorful boundary tuples before and after shrinking.
    pub loose_before: usize,
    pub loose_after: usize,
    #[serde(with = "serde_str")]
    pub eta: Rational,
    pub block_sizes: Vec<usize>,
    pub colorful_depth: usize,
}

struct Boundary {
    parent: usize,
    facet: Simplex,
}

fn is_loose(members: Vec<Simplex>) -> Result<bool> {
    Ok(classify_family(&Family::new(members)?)? == FamilyClass::Loose)
}

fn mixed_radix(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        digits[i] = index % sizes[i];
        index /= sizes[i];
    }
    digits
}

fn colorful_loose_tuples(classes: &[Vec<Simplex>]) -> Result<Vec<Vec<usize>>> {
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let total: usize = sizes.iter().product();
    let flags = (0..total)
        .into_par_iter()
        .map(|i| {
            let t = mixed_radix(i, &sizes);
            let members = t.iter().enumerate().map(|(c, &j)| classes[c][j].clone()).collect();
            Ok((t, is_loose(members)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(flags.into_iter().filter(|(_, l)| *l).map(|(t, _)| t).collect())
}

/// Moves every vertex towards its facet's centroid by `eta` in the max norm.
fn shrink(facet: &Simplex, eta: &Rational) -> Result<Simplex> {
    let c = facet.centroid();
    let verts = facet
        .vertices()
        .iter()
        .map(|v| {
            let dist = v.linf_distance(&c);
            v.add(&c.sub(v).scale(&(eta / dist)))
        })
        .collect();
    Simplex::new(verts)
}

fn min_vertex_distance(sigma: &[Simplex]) -> Rational {
    let verts: Vec<&Point> = sigma.iter().flat_map(|s| s.vertices()).collect();
    let mut best: Option<Rational> = None;
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let d = verts[i].linf_distance(verts[j]);
            if best.as_ref().map_or(true, |b| d < *b) {
                best = Some(d);
            }
        }
    }
    best.unwrap_or_else(rational::one)
}

fn random_interior_point(s: &Simplex, rng: &mut ChaCha8Rng) -> Point {
    let weights: Vec<Rational> = s.vertices().iter().map(|_| rational::int(rng.gen_range(1..1024))).collect();
    let total: Rational = weights.iter().sum();
    let weights: Vec<Rational> = weights.iter().map(|w| w / &total).collect();
    Point::combination(s.vertices(), &weights)
}

/// Colors `sigma` into `d + 1` classes, replaces every simplex by its
/// shrunken boundary facets, extracts a complete loose block of facets,
/// places one representative per facet and reports the input families
/// reached by colorful simplices through the deepest colorful point, each
/// re-verified as loose and pinned.
pub fn pinning_pipeline(sigma: &[Simplex], seed: u64) -> Result<PinningOutcome> {
    let d = sigma.first().map(|s| s.ambient_dim()).ok_or(Error::InvalidR { r: 0, n: 0 })?;
    if sigma.len() < d + 1 {
        return Err(Error::InvalidR { r: sigma.len(), n: d + 1 });
    }
    for s in sigma {
        if s.ambient_dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: s.ambient_dim() });
        }
        if s.dim() != d {
            return Err(Error::WrongArity { expected: d + 1, found: s.vertices().len() });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..sigma.len()).collect();
    order.shuffle(&mut rng);
    let mut colors: Vec<Vec<usize>> = vec![Vec::new(); d + 1];
    for (k, &i) in order.iter().enumerate() {
        colors[k % (d + 1)].push(i);
    }
    colors.iter_mut().for_each(|c| c.sort_unstable());

    let boundary: Vec<Vec<Boundary>> = colors
        .iter()
        .map(|c| {
            c.iter()
                .flat_map(|&i| sigma[i].facets().into_iter().map(move |facet| Boundary { parent: i, facet }))
                .collect()
        })
        .collect();
    let raw: Vec<Vec<Simplex>> = boundary.iter().map(|c| c.iter().map(|b| b.facet.clone()).collect()).collect();
    let loose_before = colorful_loose_tuples(&raw)?;

    let mut eta = min_vertex_distance(sigma) / rational::pow2(10);
    let mut shrunk = None;
    for _ in 0..SHRINK_ROUNDS {
        let candidate: Vec<Vec<Simplex>> =
            raw.iter().map(|c| c.iter().map(|f| shrink(f, &eta)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        let verts: Vec<Point> = candidate.iter().flatten().flat_map(|f| f.vertices().iter().cloned()).collect();
        if is_generic(d, &verts) {
            let kept = loose_before
                .par_iter()
                .map(|t| is_loose(t.iter().enumerate().map(|(c, &j)| candidate[c][j].clone()).collect()))
                .collect::<Result<Vec<_>>>()?;
            if kept.iter().all(|&k| k) {
                shrunk = Some(candidate);
                break;
            }
        }
        eta /= rational::int(2);
    }
    let shrunk = shrunk.ok_or(Error::RetryExhausted { rounds: SHRINK_ROUNDS })?;
    let loose_after = colorful_loose_tuples(&shrunk)?;
    let mut outcome = PinningOutcome {
        point: None,
        families: Vec::new(),
        colors,
        loose_before: loose_before.len(),
        loose_after: loose_after.len(),
        eta: eta.clone(),
        block_sizes: Vec::new(),
        colorful_depth: 0,
    };
    if loose_after.is_empty() {
        return Ok(outcome);
    }

    let encoded: Vec<Vec<Vec<Rational>>> = shrunk.iter().map(|c| c.iter().map(encode_simplex).collect()).collect();
    let total: usize = shrunk.iter().map(|c| c.len()).product();
    let density = Rational::new(loose_after.len().into(), total.into());
    let block = kpartite_turan(&encoded, &loose_relation(d)?, &density, &TuranConstants::default(), seed)?;
    assert!(block.complete, "loose block failed its completeness check");
    outcome.block_sizes = block.subsets.iter().map(|s| s.len()).collect();

    let mut reps = None;
    for _ in 0..REPRESENTATIVE_ROUNDS {
        let classes: Vec<Vec<Point>> = block
            .subsets
            .iter()
            .enumerate()
            .map(|(c, s)| s.iter().map(|&j| random_interior_point(&shrunk[c][j], &mut rng)).collect())
            .collect();
        let all: Vec<Point> = classes.iter().flatten().cloned().collect();
        if is_generic(d, &all) {
            reps = Some(classes);
            break;
        }
    }
    let reps = reps.ok_or(Error::RetryExhausted { rounds: REPRESENTATIVE_ROUNDS })?;
    let sets = reps.into_iter().map(|pts| PointSet::unscanned(d, pts, true)).collect::<Result<Vec<_>>>()?;
    let deepest = colorful_deepest(&sets)?;
    let x = deepest.point.clone();
    outcome.colorful_depth = deepest.pierced_count;

    let sizes: Vec<usize> = block.subsets.iter().map(|s| s.len()).collect();
    let mut parents: Vec<Vec<usize>> = deepest
        .pierced_indices
        .unwrap_or_default()
        .into_iter()
        .map(|i| {
            let digits = mixed_radix(i, &sizes);
            let mut p: Vec<usize> =
                digits.iter().enumerate().map(|(c, &j)| boundary[c][block.subsets[c][j]].parent).collect();
            p.sort_unstable();
            p
        })
        .collect();
    parents.sort();
    parents.dedup();
    for p in parents {
        let family = Family::new(p.iter().map(|&i| sigma[i].clone()).collect())?;
        if classify_family(&family)? != FamilyClass::Loose {
            continue;
        }
        if let Pinning::Pinned(witness) = pinned_with_witness(&family, &x)? {
            outcome.families.push(PinnedFamily { simplices: p, witness });
        }
    }
    outcome.point = Some(x);
    Ok(outcome)
}
