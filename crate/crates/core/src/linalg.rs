//! Exact linear algebra over the rationals.
//!
//! Ranks use fraction-free (Bareiss) elimination over arbitrary-precision
//! integers; kernels use reduced row echelon form over `BigRational`.

use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(invalid("ragged rows"));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(invalid(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..self.rows).map(|r| integer_row(self.row(r))).collect();
        bareiss_rank(rows)
    }

    /// A basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form with the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let x = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let x = out.get(r, c) + a * rhs.get(k, c);
                    out.set(r, c, x);
                }
            }
        }
        out
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Clears denominators of a rational row (rank-preserving scaling).
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
///
/// After processing pivot `k`, every remaining entry is a `(k+1)`-minor of
/// the input, so each division by the previous pivot is exact.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "inexact Bareiss division");
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    r
}

/// Rank of a 0/±1 (or any small integer) matrix given as rows.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    bareiss_rank(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}

/// Scales a nonzero rational vector to the primitive integer vector with a
/// positive leading nonzero entry.
pub fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<BigInt>> {
    let ints = integer_row(v);
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() {
        return None;
    }
    let lead_negative = ints.iter().find(|x| !x.is_zero())?.is_negative();
    let content = if lead_negative { -content } else { content };
    Some(ints.into_iter().map(|x| x / &content).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rank by plain rational elimination, independent of the Bareiss path.
    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        let m = RationalMatrix::from_integer_rows(rows).unwrap();
        m.rref().1.len()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(integer_rank(&[]), 0);
        assert_eq!(integer_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(integer_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(
            integer_rank(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]),
            3
        );
        // skipped pivot column
        assert_eq!(
            integer_rank(&[vec![0, 1, 0], vec![0, 2, 1], vec![0, 0, 3]]),
            2
        );
    }

    #[test]
    fn kernel_of_a_rank_one_matrix() {
        let m = RationalMatrix::from_integer_rows(&[vec![1, 1, 1]]).unwrap();
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn primitive_normalization() {
        let v = vec![ratio(0, 1), ratio(-1, 2), ratio(1, 2), ratio(3, 4)];
        let p = primitive_integer_vector(&v).unwrap();
        assert_eq!(
            p,
            vec![0, 2, -2, -3]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );
        assert!(primitive_integer_vector(&[rational(0)]).is_none());
    }

    #[test]
    fn matrix_product_and_transpose() {
        let a = RationalMatrix::from_integer_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        let prod = &a * &a.transpose();
        assert_eq!(
            prod,
            RationalMatrix::from_integer_rows(&[vec![5, 11], vec![11, 25]]).unwrap()
        );
        assert!(RationalMatrix::identity(3).is_identity());
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_elimination(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..7)
        ) {
            prop_assert_eq!(integer_rank(&rows), rational_rank(&rows));
        }

        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 1..6)) {
            let m = RationalMatrix::from_integer_rows(&rows).unwrap();
            let kernel = m.kernel();
            prop_assert_eq!(m.rank() + kernel.len(), 6);
            for v in &kernel {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}
