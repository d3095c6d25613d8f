//! Exact halving-simplex and k-set counts.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{combinations, is_generic, OrientedHyperplane, Point, PointSet, Sign};
use crate::lp::{linear_feasible, LinearConstraint, Relation};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalvingReport {
    pub n: usize,
    pub d: usize,
    pub count: usize,
    pub subsets: Vec<Vec<usize>>,
    /// Strict positive and negative side counts of each listed subset.
    pub sides: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KSetReport {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub count: usize,
    pub subsets: Vec<Vec<usize>>,
}

fn require_generic(p: &PointSet) -> Result<()> {
    if p.generic || is_generic(p.dim, &p.points) {
        Ok(())
    } else {
        Err(Error::DegenerateVertices("point set is not in general position".into()))
    }
}

/// `d`-subsets whose spanning hyperplane leaves at most `ceil((n-d)/2)`
/// points strictly on each side.
pub fn halving_count(p: &PointSet) -> Result<HalvingReport> {
    let (n, d) = (p.len(), p.dim);
    if n < d || d == 0 {
        return Err(Error::TooFewPoints { needed: d.max(1), have: n });
    }
    require_generic(p)?;
    let cap = (n - d).div_ceil(2);
    let found: Vec<(Vec<usize>, (usize, usize))> = combinations(n, d)
        .into_par_iter()
        .map(|s| {
            let support: Vec<&Point> = s.iter().map(|&i| &p.points[i]).collect();
            let h = OrientedHyperplane::through(&support)?;
            let (mut pos, mut neg, mut on) = (0, 0, 0);
            for x in &p.points {
                match h.side(x) {
                    Sign::Positive => pos += 1,
                    Sign::Negative => neg += 1,
                    Sign::Zero => on += 1,
                }
            }
            assert_eq!(on, d, "spanning hyperplane of {s:?} meets {on} points");
            Ok((s, (pos, neg)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, (pos, neg))| *pos <= cap && *neg <= cap)
        .collect();
    let (subsets, sides): (Vec<_>, Vec<_>) = found.into_iter().unzip();
    Ok(HalvingReport { n, d, count: subsets.len(), subsets, sides })
}

fn half_plane(v: &[Rational]) -> u8 {
    if v[1] > Rational::zero() || (v[1].is_zero() && v[0] > Rational::zero()) {
        0
    } else {
        1
    }
}

fn cross(a: &[Rational], b: &[Rational]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Planar halving pairs by an angular sweep around every point: for each
/// ordered pair `(i, j)` the number of points strictly left of `i -> j` is
/// read off a rotating window over the angularly sorted directions from `i`.
pub fn halving_pairs_by_sweep(p: &PointSet) -> Result<Vec<Vec<usize>>> {
    if p.dim != 2 {
        return Err(Error::UnsupportedDimension(p.dim));
    }
    let n = p.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, have: n });
    }
    require_generic(p)?;
    let cap = (n - 2).div_ceil(2);
    let mut left = vec![vec![0usize; n]; n];
    for i in 0..n {
        let mut dirs: Vec<(usize, Vec<Rational>)> =
            (0..n).filter(|&j| j != i).map(|j| (j, p.points[j].sub(&p.points[i]).into_coords())).collect();
        dirs.sort_by(|(_, a), (_, b)| {
            half_plane(a).cmp(&half_plane(b)).then_with(|| cross(b, a).cmp(&Rational::zero()))
        });
        let m = dirs.len();
        let mut b = 0;
        for a in 0..m {
            b = b.max(a + 1);
            while b < a + m && cross(&dirs[a].1, &dirs[b % m].1) > Rational::zero() {
                b += 1;
            }
            left[i][dirs[a].0] = b - a - 1;
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if left[i][j] <= cap && left[j][i] <= cap {
                pairs.push(vec![i, j]);
            }
        }
    }
    Ok(pairs)
}

/// Decides whether `inside` can be cut out of `p` by an open halfspace.
pub fn strictly_separable(p: &PointSet, inside: &[usize]) -> Result<bool> {
    let d = p.dim;
    let mut member = vec![false; p.len()];
    for &i in inside {
        member[i] = true;
    }
    let constraints: Vec<LinearConstraint> = p
        .points
        .iter()
        .zip(&member)
        .map(|(x, &m)| {
            let mut coeffs = x.coords().to_vec();
            coeffs.push(-rational::one());
            LinearConstraint::new(coeffs, if m { Relation::Gt } else { Relation::Lt }, Rational::zero())
        })
        .collect();
    Ok(linear_feasible(d + 1, &constraints)?.is_feasible())
}

/// All `k`-subsets cut out of `p` by open halfspaces.
pub fn kset_count(p: &PointSet, k: usize) -> Result<KSetReport> {
    let n = p.len();
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let flags = combinations(n, k)
        .into_par_iter()
        .map(|s| Ok((strictly_separable(p, &s)?, s)))
        .collect::<Result<Vec<_>>>()?;
    let subsets: Vec<Vec<usize>> = flags.into_iter().filter(|(ok, _)| *ok).map(|(_, s)| s).collect();
    Ok(KSetReport { n, d: p.dim, k, count: subsets.len(), subsets })
}
