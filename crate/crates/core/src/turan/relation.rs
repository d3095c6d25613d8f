//! Semi-algebraic relations: polynomial sign atoms combined by a Boolean
//! formula, evaluated exactly over rational tuples.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{classify_family, Family, FamilyClass};
use crate::geometry::{Point, Simplex};
use crate::rational::{serde_str, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    #[serde(with = "serde_str")]
    pub coeff: Rational,
}

/// Dense-by-monomial polynomial over `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Polynomial {
    pub nvars: usize,
    pub terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn new(nvars: usize, terms: Vec<Monomial>) -> Result<Self> {
        let p = Polynomial { nvars, terms };
        p.validate()?;
        Ok(p)
    }

    /// `sum coeffs[j] * x_j - constant`.
    pub fn linear(coeffs: &[Rational], constant: &Rational) -> Self {
        let n = coeffs.len();
        let mut terms: Vec<Monomial> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let mut e = vec![0; n];
                e[j] = 1;
                Monomial { exponents: e, coeff: c.clone() }
            })
            .collect();
        if !constant.is_zero() {
            terms.push(Monomial { exponents: vec![0; n], coeff: -constant });
        }
        Polynomial { nvars: n, terms }
    }

    fn validate(&self) -> Result<()> {
        for t in &self.terms {
            if t.exponents.len() != self.nvars {
                return Err(Error::DimensionMismatch { expected: self.nvars, found: t.exponents.len() });
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exponents.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn negated(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Monomial { exponents: t.exponents.clone(), coeff: -&t.coeff })
                .collect(),
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (xi, &e) in x.iter().zip(&t.exponents) {
                if e > 0 {
                    v *= num_traits::pow(xi.clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }
}

/// Boolean formula over atoms `polys[index] <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum Formula {
    True,
    False,
    Atom { index: usize },
    Not { arg: Box<Formula> },
    And { args: Vec<Formula> },
    Or { args: Vec<Formula> },
}

impl Formula {
    pub fn atom(index: usize) -> Self {
        Formula::Atom { index }
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not { arg: Box::new(f) }
    }

    fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::True | Formula::False => None,
            Formula::Atom { index } => Some(*index),
            Formula::Not { arg } => arg.max_atom(),
            Formula::And { args } | Formula::Or { args } => args.iter().filter_map(|a| a.max_atom()).max(),
        }
    }

    fn eval(&self, atom: &mut impl FnMut(usize) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom { index } => atom(*index),
            Formula::Not { arg } => !arg.eval(atom),
            Formula::And { args } => args.iter().all(|a| a.eval(atom)),
            Formula::Or { args } => args.iter().any(|a| a.eval(atom)),
        }
    }
}

/// Edge relation of a k-partite hypergraph whose vertex classes live in
/// `R^{block_dims[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiAlgRelation {
    pub block_dims: Vec<usize>,
    pub polys: Vec<Polynomial>,
    pub formula: Formula,
    pub degree: u32,
    /// When set, blocks encode `(d-1)`-simplices in `R^d` and a tuple is an
    /// edge only if, beyond the formula, its family is loose.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loose_dim: Option<usize>,
}

impl SemiAlgRelation {
    pub fn new(block_dims: Vec<usize>, polys: Vec<Polynomial>, formula: Formula, degree: u32) -> Result<Self> {
        let rel = SemiAlgRelation { block_dims, polys, formula, degree, loose_dim: None };
        rel.validate()?;
        Ok(rel)
    }

    pub fn nvars(&self) -> usize {
        self.block_dims.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_dims.is_empty() || self.block_dims.contains(&0) {
            return Err(Error::InvalidArgument("block dimensions must be positive".into()));
        }
        let n = self.nvars();
        for p in &self.polys {
            p.validate()?;
            if p.nvars != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.nvars });
            }
            if p.degree() > self.degree {
                return Err(Error::InvalidArgument(format!(
                    "polynomial degree {} exceeds the bound {}",
                    p.degree(),
                    self.degree
                )));
            }
        }
        if let Some(i) = self.formula.max_atom() {
            if i >= self.polys.len() {
                return Err(Error::IndexOutOfRange { index: i, len: self.polys.len() });
            }
        }
        if let Some(d) = self.loose_dim {
            if self.block_dims.len() != d + 1 || self.block_dims.iter().any(|&b| b != d * d) {
                return Err(Error::InvalidArgument("loose relation needs d+1 blocks of dimension d^2".into()));
            }
        }
        Ok(())
    }

    /// `a . (v1 - v2) > 0` over two blocks of dimension `a.len()`.
    pub fn halfspace(a: &[Rational]) -> Self {
        let mut coeffs: Vec<Rational> = a.to_vec();
        coeffs.extend(a.iter().map(|c| -c));
        let poly = Polynomial::linear(&coeffs, &Rational::zero());
        SemiAlgRelation {
            block_dims: vec![a.len(), a.len()],
            polys: vec![poly],
            formula: Formula::not(Formula::atom(0)),
            degree: 1,
            loose_dim: None,
        }
    }

    /// Relation with no atoms and a constant formula.
    pub fn constant(block_dims: Vec<usize>, value: bool) -> Self {
        SemiAlgRelation {
            block_dims,
            polys: Vec::new(),
            formula: if value { Formula::True } else { Formula::False },
            degree: 0,
            loose_dim: None,
        }
    }
}

/// Concatenated coordinates of a simplex's vertices in increasing
/// lexicographic order (so by first coordinate for generic vertices).
pub fn encode_simplex(s: &Simplex) -> Vec<Rational> {
    s.vertices().iter().flat_map(|v| v.coords().iter().cloned()).collect()
}

pub fn decode_simplex(dim: usize, coords: &[Rational]) -> Result<Simplex> {
    let verts: Vec<Point> = coords.chunks(dim).map(|c| Point::new(c.to_vec())).collect();
    Simplex::new(verts).map_err(|_| Error::DegenerateVertices("block does not encode a simplex".into()))
}

/// `det [[1 ..1]; [x_1 .. x_{d+1}]]` over the given variable indices
/// (`vars[i][c]` is coordinate `c` of point `i`), by Leibniz expansion.
fn orientation_poly(nvars: usize, vars: &[Vec<usize>]) -> Polynomial {
    let n = vars.len();
    let mut terms = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let sign_of = |perm: &[usize]| {
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    };
    loop {
        // Row 0 is all ones; row r >= 1 is coordinate r-1. perm[r] is the column.
        let mut e = vec![0u32; nvars];
        for r in 1..n {
            e[vars[perm[r]][r - 1]] += 1;
        }
        terms.push(Monomial { exponents: e, coeff: sign_of(&perm) });
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Polynomial { nvars, terms }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Looseness of `d + 1` `(d-1)`-simplices in `R^d`, each block holding the
/// `d` vertices of one simplex. The formula states that every colorful
/// orientation determinant has one common nonzero sign; the existential part
/// is decided by exact classification.
pub fn loose_relation(d: usize) -> Result<SemiAlgRelation> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let k = d + 1;
    let nvars = k * d * d;
    let mut dets = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let vars: Vec<Vec<usize>> =
            (0..k).map(|b| (0..d).map(|c| b * d * d + choice[b] * d + c).collect()).collect();
        dets.push(orientation_poly(nvars, &vars));
        let mut i = k;
        let done = loop {
            if i == 0 {
                break true;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < d {
                break false;
            }
            choice[i] = 0;
        };
        if done {
            break;
        }
    }
    let m = dets.len();
    let mut polys = dets.clone();
    polys.extend(dets.iter().map(|p| p.negated()));
    let positive = Formula::And { args: (0..m).map(|j| Formula::not(Formula::atom(j))).collect() };
    let negative = Formula::And { args: (0..m).map(|j| Formula::not(Formula::atom(m + j))).collect() };
    let rel = SemiAlgRelation {
        block_dims: vec![d * d; k],
        polys,
        formula: Formula::Or { args: vec![positive, negative] },
        degree: d as u32,
        loose_dim: Some(d),
    };
    rel.validate()?;
    Ok(rel)
}

/// Exact value of the relation on one point per block.
pub fn eval_relation(rel: &SemiAlgRelation, tuple: &[&[Rational]]) -> Result<bool> {
    if tuple.len() != rel.block_dims.len() {
        return Err(Error::WrongArity { expected: rel.block_dims.len(), found: tuple.len() });
    }
    for (b, &dim) in tuple.iter().zip(&rel.block_dims) {
        if b.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: b.len() });
        }
    }
    let x: Vec<Rational> = tuple.iter().flat_map(|b| b.iter().cloned()).collect();
    let mut cache: Vec<Option<bool>> = vec![None; rel.polys.len()];
    let holds = rel.formula.eval(&mut |i| {
        *cache[i].get_or_insert_with(|| rel.polys[i].eval(&x) <= Rational::zero())
    });
    if !holds {
        return Ok(false);
    }
    match rel.loose_dim {
        None => Ok(true),
        Some(d) => {
            let members = tuple.iter().map(|b| decode_simplex(d, b)).collect::<Result<Vec<_>>>()?;
            Ok(classify_family(&Family::new(members)?)? == FamilyClass::Loose)
        }
    }
}

/// Flattened tuple evaluation: `x` holds every block back to back.
pub fn eval_flat(rel: &SemiAlgRelation, x: &[Rational]) -> Result<bool> {
    let mut blocks = Vec::with_capacity(rel.block_dims.len());
    let mut at = 0;
    for &d in &rel.block_dims {
        if at + d > x.len() {
            return Err(Error::DimensionMismatch { expected: rel.nvars(), found: x.len() });
        }
        blocks.push(&x[at..at + d]);
        at += d;
    }
    if at != x.len() {
        return Err(Error::DimensionMismatch { expected: rel.nvars(), found: x.len() });
    }
    eval_relation(rel, &blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn orientation_poly_matches_determinant() {
        // Points (0,0), (1,0), (0,1): det [[1,1,1],[0,1,0],[0,0,1]] = 1.
        let vars = vec![vec![0, 1], vec![2, 3], vec![4, 5]];
        let p = orientation_poly(6, &vars);
        assert_eq!(p.terms.len(), 6);
        let x: Vec<Rational> = [0, 0, 1, 0, 0, 1].iter().map(|&v| int(v)).collect();
        assert_eq!(p.eval(&x), int(1));
        let y: Vec<Rational> = [0, 0, 0, 1, 1, 0].iter().map(|&v| int(v)).collect();
        assert_eq!(p.eval(&y), int(-1));
    }

    #[test]
    fn halfspace_relation() {
        let rel = SemiAlgRelation::halfspace(&[int(1), int(2)]);
        let a = [int(3), int(0)];
        let b = [int(0), int(1)];
        assert!(eval_relation(&rel, &[&a, &b]).unwrap());
        assert!(!eval_relation(&rel, &[&b, &a]).unwrap());
        assert!(!eval_relation(&rel, &[&a, &a]).unwrap());
        assert!(matches!(eval_relation(&rel, &[&a[..1], &b]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn constant_false_is_false() {
        let rel = SemiAlgRelation::constant(vec![1, 1], false);
        assert!(!eval_relation(&rel, &[&[int(0)], &[int(5)]]).unwrap());
    }

    #[test]
    fn formula_roundtrips_through_json() {
        let rel = loose_relation(2).unwrap();
        let json = serde_json::to_string(&rel).unwrap();
        let back: SemiAlgRelation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rel);
        assert_eq!(rel.polys.len(), 16);
        assert_eq!(rel.degree, 2);
    }

    #[test]
    fn validation_rejects_bad_atoms() {
        let r = SemiAlgRelation::new(vec![1, 1], vec![], Formula::atom(0), 1);
        assert!(matches!(r, Err(Error::IndexOutOfRange { .. })));
    }
}
