//! Exact feasibility of mixed strict/non-strict linear systems.
//!
//! A dictionary-form simplex method with Bland's rule. Strict rows share one
//! slack `t` bounded by 1; the system is strictly feasible iff `max t > 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Gt,
    Ge,
    Eq,
    Le,
    Lt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub bound: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, bound: Rational) -> Self {
        LinearConstraint { coeffs, relation, bound }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs = linalg::dot(&self.coeffs, x);
        match self.relation {
            Relation::Gt => lhs > self.bound,
            Relation::Ge => lhs >= self.bound,
            Relation::Eq => lhs == self.bound,
            Relation::Le => lhs <= self.bound,
            Relation::Lt => lhs < self.bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Point),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn point(self) -> Option<Point> {
        match self {
            Feasibility::Feasible(p) => Some(p),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decides whether `constraints` over `R^dim` have a common solution and
/// returns one. The witness is re-checked exactly before it is returned.
pub fn linear_feasible(dim: usize, constraints: &[LinearConstraint]) -> Result<Feasibility> {
    for c in constraints {
        if c.coeffs.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: c.coeffs.len() });
        }
    }
    let strict = constraints
        .iter()
        .any(|c| matches!(c.relation, Relation::Gt | Relation::Lt));
    // Columns: x+ (dim), x- (dim), then t when strict.
    let nvars = 2 * dim + usize::from(strict);
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut push = |coeffs: &[Rational], sign: i64, bound: &Rational, with_t: bool| {
        let s = rational::int(sign);
        let mut row = Vec::with_capacity(nvars);
        row.extend(coeffs.iter().map(|a| a * &s));
        row.extend(coeffs.iter().map(|a| -(a * &s)));
        if strict {
            row.push(if with_t { Rational::one() } else { Rational::zero() });
        }
        rows.push((row, bound * &s));
    };
    for c in constraints {
        match c.relation {
            Relation::Le => push(&c.coeffs, 1, &c.bound, false),
            Relation::Lt => push(&c.coeffs, 1, &c.bound, true),
            Relation::Ge => push(&c.coeffs, -1, &c.bound, false),
            Relation::Gt => push(&c.coeffs, -1, &c.bound, true),
            Relation::Eq => {
                push(&c.coeffs, 1, &c.bound, false);
                push(&c.coeffs, -1, &c.bound, false);
            }
        }
    }
    let mut objective = vec![Rational::zero(); nvars];
    if strict {
        let mut cap = vec![Rational::zero(); nvars];
        cap[nvars - 1] = Rational::one();
        rows.push((cap, Rational::one()));
        objective[nvars - 1] = Rational::one();
    }
    let Some((y, value)) = maximize(nvars, &rows, &objective) else {
        return Ok(Feasibility::Infeasible);
    };
    if strict && !value.is_positive() {
        return Ok(Feasibility::Infeasible);
    }
    let x: Vec<Rational> = (0..dim).map(|i| &y[i] - &y[dim + i]).collect();
    assert!(
        constraints.iter().all(|c| c.holds(&x)),
        "simplex witness failed exact re-verification"
    );
    Ok(Feasibility::Feasible(Point::new(x)))
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

/// Fraction-free dictionary: with common denominator `den`,
/// `x_basic[r] = (value[r] + sum_j coef[r][j] * x_nonbasic[j]) / den` and
/// `z = (z0 + sum_j obj[j] * x_nonbasic[j]) / den`. Pivots divide exactly, so
/// every entry stays an integer bounded by a subdeterminant of the input.
struct Dictionary {
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    value: Vec<BigInt>,
    coef: Vec<Vec<BigInt>>,
    obj: Vec<BigInt>,
    z0: BigInt,
    den: BigInt,
}

fn positive_in(x: &BigInt, den: &BigInt) -> bool {
    !x.is_zero() && x.is_negative() == den.is_negative()
}

fn negative_in(x: &BigInt, den: &BigInt) -> bool {
    !x.is_zero() && x.is_negative() != den.is_negative()
}

impl Dictionary {
    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.coef[r][j].clone();
        let ncols = self.nonbasic.len();
        for i in 0..self.basic.len() {
            if i == r {
                continue;
            }
            let f = self.coef[i][j].clone();
            for k in 0..ncols {
                if k != j {
                    let t = &self.coef[i][k] * &p - &f * &self.coef[r][k];
                    self.coef[i][k] = t / &self.den;
                }
            }
            let t = &self.value[i] * &p - &f * &self.value[r];
            self.value[i] = t / &self.den;
        }
        let f = self.obj[j].clone();
        for k in 0..ncols {
            if k != j {
                let t = &self.obj[k] * &p - &f * &self.coef[r][k];
                self.obj[k] = t / &self.den;
            }
        }
        let t = &self.z0 * &p - &f * &self.value[r];
        self.z0 = t / &self.den;
        for k in 0..ncols {
            if k != j {
                self.coef[r][k] = -&self.coef[r][k];
            }
        }
        self.coef[r][j] = self.den.clone();
        self.value[r] = -&self.value[r];
        self.den = p;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[j]);
    }

    /// One Bland's-rule step: smallest-index improving variable enters,
    /// smallest-index minimum-ratio row leaves.
    fn step(&mut self) -> Step {
        let entering = (0..self.nonbasic.len())
            .filter(|&j| positive_in(&self.obj[j], &self.den))
            .min_by_key(|&j| self.nonbasic[j]);
        let Some(j) = entering else {
            return Step::Optimal;
        };
        let mut best: Option<usize> = None;
        for r in 0..self.basic.len() {
            if !negative_in(&self.coef[r][j], &self.den) {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    // -coef[r][j] and -coef[b][j] share the sign of den, so
                    // cross-multiplying preserves the order of the ratios.
                    let lhs = &self.value[r] * -&self.coef[b][j];
                    let rhs = &self.value[b] * -&self.coef[r][j];
                    lhs < rhs || (lhs == rhs && self.basic[r] < self.basic[b])
                }
            };
            if better {
                best = Some(r);
            }
        }
        match best {
            None => Step::Unbounded,
            Some(r) => {
                self.pivot(r, j);
                Step::Pivoted
            }
        }
    }

    fn optimize(&mut self) -> bool {
        loop {
            match self.step() {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Pivoted => {}
            }
        }
    }
}

/// Clears the denominators of a constraint row `g . y <= h`.
fn integer_row(g: &[Rational], h: &Rational) -> (Vec<BigInt>, BigInt) {
    let mut l = h.denom().clone();
    for q in g {
        l = l.lcm(q.denom());
    }
    let ints = g.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    (ints, h.numer() * (&l / h.denom()))
}

/// Maximizes `c . y` over `{y >= 0 : G y <= h}`. Returns `None` when the
/// system is infeasible; unbounded objectives are not expected by callers and
/// also yield `None`.
pub(crate) fn maximize(
    n: usize,
    rows: &[(Vec<Rational>, Rational)],
    c: &[Rational],
) -> Option<(Vec<Rational>, Rational)> {
    let m = rows.len();
    let aux = n + m;
    let int_rows: Vec<(Vec<BigInt>, BigInt)> = rows.iter().map(|(g, h)| integer_row(g, h)).collect();
    let mut dict = Dictionary {
        basic: (n..n + m).collect(),
        nonbasic: (0..n).collect(),
        value: int_rows.iter().map(|(_, h)| h.clone()).collect(),
        coef: int_rows.iter().map(|(g, _)| g.iter().map(|a| -a).collect()).collect(),
        obj: vec![BigInt::zero(); n],
        z0: BigInt::zero(),
        den: BigInt::one(),
    };
    let most_negative = (0..m)
        .filter(|&r| dict.value[r].is_negative())
        .min_by(|&a, &b| dict.value[a].cmp(&dict.value[b]).then(a.cmp(&b)));
    if let Some(r0) = most_negative {
        // Phase I: maximize -x0 subject to G y - x0 <= h.
        for row in dict.coef.iter_mut() {
            row.push(BigInt::one());
        }
        dict.nonbasic.push(aux);
        dict.obj = vec![BigInt::zero(); n + 1];
        dict.obj[n] = -BigInt::one();
        dict.pivot(r0, n);
        dict.optimize();
        if negative_in(&dict.z0, &dict.den) {
            return None;
        }
        if let Some(r) = dict.basic.iter().position(|&v| v == aux) {
            match (0..dict.nonbasic.len()).find(|&j| !dict.coef[r][j].is_zero()) {
                Some(j) => dict.pivot(r, j),
                None => {
                    dict.basic.remove(r);
                    dict.value.remove(r);
                    dict.coef.remove(r);
                }
            }
        }
        let col = dict.nonbasic.iter().position(|&v| v == aux).expect("aux is nonbasic");
        dict.nonbasic.remove(col);
        for row in dict.coef.iter_mut() {
            row.remove(col);
        }
    }
    // Express the real objective in the current nonbasic variables; scale the
    // objective to integers first (a positive factor does not move the optimum).
    let (cint, _) = integer_row(c, &Rational::zero());
    let ncols = dict.nonbasic.len();
    dict.obj = vec![BigInt::zero(); ncols];
    dict.z0 = BigInt::zero();
    for (var, cv) in cint.iter().enumerate() {
        if cv.is_zero() {
            continue;
        }
        if let Some(j) = dict.nonbasic.iter().position(|&v| v == var) {
            dict.obj[j] += cv * &dict.den;
        } else if let Some(r) = dict.basic.iter().position(|&v| v == var) {
            dict.z0 += cv * &dict.value[r];
            for k in 0..ncols {
                let t = cv * &dict.coef[r][k];
                dict.obj[k] += t;
            }
        }
    }
    if !dict.optimize() {
        return None;
    }
    let mut y = vec![Rational::zero(); n];
    for (r, &v) in dict.basic.iter().enumerate() {
        if v < n {
            y[v] = Rational::new(dict.value[r].clone(), dict.den.clone());
        }
    }
    let z = linalg::dot(c, &y);
    Some((y, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn c1(a: i64, rel: Relation, b: i64) -> LinearConstraint {
        LinearConstraint::new(vec![int(a)], rel, int(b))
    }

    #[test]
    fn open_interval_is_feasible() {
        let f = linear_feasible(1, &[c1(1, Relation::Gt, 0), c1(1, Relation::Lt, 1)]).unwrap();
        let x = f.point().unwrap();
        assert!(x.coords()[0] > int(0) && x.coords()[0] < int(1));
    }

    #[test]
    fn contradictory_strict_rows_are_infeasible() {
        let f = linear_feasible(1, &[c1(1, Relation::Gt, 0), c1(1, Relation::Lt, 0)]).unwrap();
        assert_eq!(f, Feasibility::Infeasible);
        let f = linear_feasible(1, &[c1(1, Relation::Ge, 0), c1(1, Relation::Le, 0)]).unwrap();
        assert_eq!(f, Feasibility::Feasible(Point::from_ints(&[0])));
    }

    #[test]
    fn equalities_pin_the_point() {
        let f = linear_feasible(
            2,
            &[
                LinearConstraint::new(vec![int(1), int(0)], Relation::Eq, int(1)),
                LinearConstraint::new(vec![int(0), int(1)], Relation::Eq, int(2)),
            ],
        )
        .unwrap();
        assert_eq!(f, Feasibility::Feasible(Point::from_ints(&[1, 2])));
    }

    #[test]
    fn negative_region_needs_phase_one() {
        let f = linear_feasible(
            2,
            &[
                LinearConstraint::new(vec![int(1), int(1)], Relation::Le, int(-5)),
                LinearConstraint::new(vec![int(1), int(-1)], Relation::Gt, ratio(7, 3)),
                LinearConstraint::new(vec![int(0), int(1)], Relation::Ge, int(-100)),
            ],
        )
        .unwrap();
        assert!(f.is_feasible());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let r = linear_feasible(2, &[c1(1, Relation::Gt, 0)]);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(linear_feasible(3, &[]).unwrap().is_feasible());
    }
}
