//! Exact dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geometry::{OrientedHyperplane, Point, Sign};
use crate::rational::Rational;

/// Multiplies a rational row by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for q in row {
        l = l.lcm(q.denom());
    }
    let ints = row.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    (ints, l)
}

/// Fraction-free Gaussian elimination; returns the determinant of a square
/// integer matrix.
pub fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Exact determinant of a square rational matrix.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let mut scale = BigInt::one();
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let (ints, l) = integer_row(r);
            scale *= l;
            ints
        })
        .collect();
    Rational::new(bareiss(ints), scale)
}

/// Sign of the determinant; row scaling by positive factors keeps it intact.
pub fn determinant_sign(rows: &[Vec<Rational>]) -> Sign {
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r).0).collect();
    Sign::of_int(&bareiss(ints))
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..m[i].len() {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Unique solution of `A x = b`, or `None` when the system is inconsistent
/// or underdetermined. Overdetermined consistent systems are accepted.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, cols + 1);
    if pivots.len() != cols || pivots.last() == Some(&cols) {
        return None;
    }
    Some((0..cols).map(|i| m[i][cols].clone()).collect())
}

/// Vector orthogonal to the `d - 1` rows of a `(d-1) x d` matrix, given by
/// signed maximal minors. Zero exactly when the rows are dependent.
pub fn cofactor_normal(rows: &[Vec<Rational>], d: usize) -> Vec<Rational> {
    if d == 1 {
        return vec![Rational::one()];
    }
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let det = determinant(&minor);
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

/// Scales a nonzero vector to a primitive integer vector with the same
/// direction.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let (ints, _) = integer_row(v);
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

/// Lcm of the denominators of all coordinates.
pub fn common_denominator<'a>(points: impl IntoIterator<Item = &'a Point>) -> BigInt {
    let mut l = BigInt::one();
    for p in points {
        for c in p.coords() {
            if !c.denom().is_one() {
                l = l.lcm(c.denom());
            }
        }
    }
    l
}

/// Coordinates of `p` multiplied by `scale` (which must clear them).
pub fn scaled(p: &Point, scale: &BigInt) -> Vec<BigInt> {
    p.coords().iter().map(|c| c.numer() * (scale / c.denom())).collect()
}

/// Integer determinant with closed forms for small sizes.
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        3 => {
            &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
        }
        _ => bareiss(m.to_vec()),
    }
}

fn differences(pts: &[&[BigInt]]) -> Vec<Vec<BigInt>> {
    pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect())
        .collect()
}

/// Orientation of `d + 1` integer points; equals the rational orientation
/// of the unscaled points.
pub fn int_orientation(pts: &[&[BigInt]]) -> Sign {
    Sign::of_int(&int_det(&differences(pts)))
}

/// `{X : normal . X = offset}` in scaled integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntHyperplane {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl IntHyperplane {
    /// Hyperplane through `d` integer points, `None` when they are dependent.
    pub fn through(support: &[&[BigInt]]) -> Option<Self> {
        let d = support[0].len();
        let diffs = differences(support);
        let normal: Vec<BigInt> = if d == 1 {
            vec![BigInt::one()]
        } else {
            (0..d)
                .map(|j| {
                    let minor: Vec<Vec<BigInt>> = diffs
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, x)| x.clone())
                                .collect()
                        })
                        .collect();
                    let det = int_det(&minor);
                    if j % 2 == 0 {
                        det
                    } else {
                        -det
                    }
                })
                .collect()
        };
        if normal.iter().all(Zero::is_zero) {
            return None;
        }
        let offset = int_dot(&normal, support[0]);
        Some(IntHyperplane { normal, offset })
    }

    pub fn value(&self, x: &[BigInt]) -> BigInt {
        int_dot(&self.normal, x) - &self.offset
    }

    pub fn side(&self, x: &[BigInt]) -> Sign {
        Sign::of_int(&self.value(x))
    }

    pub fn flipped(&self) -> Self {
        IntHyperplane {
            normal: self.normal.iter().map(|a| -a).collect(),
            offset: -&self.offset,
        }
    }

    /// The same hyperplane in unscaled coordinates, with a primitive normal.
    pub fn unscale(&self, scale: &BigInt) -> OrientedHyperplane {
        let g = self.normal.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let normal = self.normal.iter().map(|a| Rational::from_integer(a / &g)).collect();
        OrientedHyperplane { normal, offset: Rational::new(self.offset.clone(), scale * &g) }
    }
}

pub fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = m(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2(3*-2 - 4*5) + 1(1*-2 - 0) = -52 - 2
        assert_eq!(determinant(&a), int(-54));
        let z = m(&[&[0, 1], &[0, 2]]);
        assert_eq!(determinant(&z), int(0));
        let f = vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(1, 4), ratio(1, 5)]];
        assert_eq!(determinant(&f), ratio(1, 10) - ratio(1, 12));
    }

    #[test]
    fn pivoting_tracks_sign() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&a), int(-1));
        assert_eq!(determinant_sign(&a), Sign::Negative);
    }

    #[test]
    fn solve_detects_singular_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[int(3), int(1)]), Some(vec![int(2), int(1)]));
        let s = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&s, &[int(1), int(2)]), None);
        let over = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve(&over, &[int(1), int(2), int(3)]), Some(vec![int(1), int(2)]));
        assert_eq!(solve(&over, &[int(1), int(2), int(4)]), None);
    }

    #[test]
    fn cofactor_normal_is_orthogonal() {
        let rows = m(&[&[1, 2, 3], &[0, 1, 4]]);
        let n = cofactor_normal(&rows, 3);
        for r in &rows {
            assert!(dot(r, &n).is_zero());
        }
        assert!(n.iter().any(|x| !x.is_zero()));
    }
}
