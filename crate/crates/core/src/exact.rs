//! Exact rational helpers and a small dense rational matrix.

use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use num_rational::BigRational as Rational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `2^e` for any signed exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `(-1)^e`.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: fall back to shifted division.
        let n = q.numer();
        let d = q.denom();
        let shift = n.bits() as i64 - d.bits() as i64;
        let scaled = if shift > 0 {
            Rational::new(n.clone(), d.clone() << shift as u64)
        } else {
            Rational::new(n.clone() << (-shift) as u64, d.clone())
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

/// Exact rational in the `{"num": "...", "den": "..."}` wire form.
///
/// `den > 0` and `gcd(num, den) = 1`; both are decimal strings so that no
/// JSON consumer loses precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(q: &Rational) -> Self {
        // BigRational is always kept reduced with a positive denominator.
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl RationalJson {
    pub fn parse(&self) -> Option<Rational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if !den.is_positive() || !num.gcd(&den).is_one() {
            return None;
        }
        Some(Rational::new(num, den))
    }
}

/// Dense row-major matrix of exact rationals, indexed from zero.
///
/// Modules that follow the 1-based convention wrap this type and translate
/// indices at their boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { Rational::zero() })
    }

    /// Builds a matrix from integer rows scaled by `1/den`.
    pub fn from_scaled_rows(den: i64, rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        Self::from_fn(n, m, |r, c| ratio(rows[r][c], den))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// `Trace(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &RationalMatrix) -> Rational {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                acc += a * &other[(k, i)];
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = &self[(r, c)];
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(to_f64).collect())
            .collect()
    }

    pub fn to_json(&self) -> Vec<Vec<RationalJson>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(RationalJson::from).collect())
            .collect()
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            for k in 0..m.cols {
                m.data.swap(p * m.cols + k, rank * m.cols + k);
            }
            let pivot = m[(rank, c)].clone();
            for r in rank + 1..m.rows {
                let f = &m[(r, c)] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let d = &f * &m[(rank, k)];
                    m[(r, k)] -= d;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-2), ratio(1, 4));
        assert_eq!(pow2(0), int(1));
    }

    #[test]
    fn json_encoding_is_reduced() {
        let q = ratio(6, -8);
        let j = RationalJson::from(&q);
        assert_eq!(j.num, "-3");
        assert_eq!(j.den, "4");
        assert_eq!(j.parse(), Some(q));
        let bad = RationalJson {
            num: "2".into(),
            den: "4".into(),
        };
        assert_eq!(bad.parse(), None);
    }

    #[test]
    fn huge_rationals_convert_to_float() {
        let big = Rational::new(factorial(400), factorial(399));
        assert!((to_f64(&big) - 400.0).abs() < 1e-9);
    }

    #[test]
    fn matrix_product_and_rank() {
        let a = RationalMatrix::from_scaled_rows(1, &[&[1, 2], &[3, 4]]);
        let b = RationalMatrix::from_scaled_rows(2, &[&[-4, 2], &[3, -1]]);
        assert!((&a * &b).is_identity());
        assert_eq!(a.trace_of_product(&b), int(2));
        let ones = RationalMatrix::from_fn(3, 3, |_, _| int(1));
        assert_eq!(ones.rank(), 1);
        assert_eq!(a.rank(), 2);
    }
}
