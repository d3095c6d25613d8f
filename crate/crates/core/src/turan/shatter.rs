//! Empirical lower bounds on the shatter function of a relation's ranges.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::partition::log_log_slope;
use crate::rational::{self, Rational};
use crate::sample;

use super::relation::{eval_flat, SemiAlgRelation};

const GRID_TARGET: usize = 1000;
const RANDOM_LEFT: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShatterEstimate {
    pub m: usize,
    pub max_traces: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShatterLadder {
    pub estimates: Vec<ShatterEstimate>,
    pub exponent: f64,
}

/// Left-vertex sample: a grid of about a thousand points over the inflated
/// bounding box of `anchor` (or `[-1, 2]^d1` without anchors), random points
/// in the same box, and the anchors themselves.
pub fn left_samples(d1: usize, anchor: &[Vec<Rational>], seed: u64) -> Vec<Vec<Rational>> {
    let usable: Vec<&Vec<Rational>> = anchor.iter().filter(|a| a.len() == d1).collect();
    let (lo, hi): (Vec<Rational>, Vec<Rational>) = if usable.is_empty() {
        (vec![rational::int(-1); d1], vec![rational::int(2); d1])
    } else {
        (0..d1)
            .map(|c| {
                let min = usable.iter().map(|a| &a[c]).min().cloned().unwrap();
                let max = usable.iter().map(|a| &a[c]).max().cloned().unwrap();
                let pad = (&max - &min) / rational::int(2) + rational::ratio(1, 8);
                (&min - &pad, &max + &pad)
            })
            .unzip()
    };
    let mut steps = 1usize;
    while (steps + 1).pow(d1 as u32) <= GRID_TARGET {
        steps += 1;
    }
    let shift = rational::ratio(1, 7919);
    let mut out = Vec::new();
    for mut k in 0..steps.pow(d1 as u32) {
        let mut x = Vec::with_capacity(d1);
        for c in 0..d1 {
            let i = (k % steps) as i64;
            k /= steps;
            let w = &hi[c] - &lo[c];
            x.push(&lo[c] + w * rational::ratio(2 * i + 1, 2 * steps as i64) + &shift);
        }
        out.push(x);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_LEFT {
        out.push((0..d1).map(|c| &lo[c] + (&hi[c] - &lo[c]) * sample::unit(&mut rng)).collect());
    }
    out.extend(usable.into_iter().cloned());
    out
}

/// Maximum number of distinct traces `N(x) ∩ W` over `trials` random
/// `m`-subsets `W` of the ground set. Each trial draws one permutation that
/// does not depend on `m`, and `W` is its `m`-prefix, so the estimate is
/// nondecreasing in `m` for fixed `(ground, trials, seed)`.
pub fn estimate_shatter(
    rel: &SemiAlgRelation,
    ground: &[Vec<Rational>],
    anchors: &[Vec<Rational>],
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<ShatterEstimate> {
    let d1 = rel.block_dims[0];
    let left = left_samples(d1, anchors, seed);
    let m = m.min(ground.len());
    let mut best = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..trials.max(1) {
        let mut order: Vec<usize> = (0..ground.len()).collect();
        order.shuffle(&mut rng);
        let w = &order[..m];
        let mut traces: HashSet<Vec<bool>> = HashSet::new();
        for x in &left {
            let mut trace = Vec::with_capacity(m);
            for &j in w {
                let mut flat = x.clone();
                flat.extend(ground[j].iter().cloned());
                trace.push(eval_flat(rel, &flat)?);
            }
            traces.insert(trace);
        }
        best = best.max(traces.len());
    }
    Ok(ShatterEstimate { m, max_traces: best })
}

/// Estimates over a ladder of `m` values with the fitted log-log exponent.
pub fn shatter_ladder(
    rel: &SemiAlgRelation,
    ground: &[Vec<Rational>],
    anchors: &[Vec<Rational>],
    ms: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ShatterLadder> {
    let estimates = ms
        .iter()
        .map(|&m| estimate_shatter(rel, ground, anchors, m, trials, seed))
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = estimates.iter().map(|e| e.m as f64).collect();
    let ys: Vec<f64> = estimates.iter().map(|e| e.max_traces as f64).collect();
    Ok(ShatterLadder { exponent: log_log_slope(&xs, &ys), estimates })
}
