//! Central factorial numbers of the first kind, `t(m, n)`.
//!
//! They are the coefficients of the central factorial polynomials
//!
//! ```text
//! x² (x² − 1²) (x² − 2²) ⋯ (x² − (a−1)²)              = Σ_k t(2a, 2k) x^{2k}
//! x (x² − (1/2)²) (x² − (3/2)²) ⋯ (x² − (a−1/2)²)     = Σ_k t(2a+1, 2k+1) x^{2k+1}
//! ```
//!
//! with `t(0, 0) = 1` (empty product) and `t(m, n) = 0` for mixed parity.
//! Values are produced by expanding these products directly; the
//! three-term recurrence is kept as an independent check.

use num_traits::{One, Signed, Zero};

use crate::exact::{factorial, int, pow2, ratio, Rational};

/// Coefficients of `Π (y − r_l)` in powers of `y`, lowest first.
fn expand_product(roots: impl IntoIterator<Item = Rational>) -> Vec<Rational> {
    let mut poly = vec![Rational::one()];
    for root in roots {
        poly = multiply_by_linear(&poly, &root);
    }
    poly
}

/// `poly · (y − root)`.
fn multiply_by_linear(poly: &[Rational], root: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); poly.len() + 1];
    for (i, c) in poly.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * root;
    }
    out
}

/// Square of the `l`-th node of the product for row parity `odd`:
/// `l²` for even rows, `(l + 1/2)²` for odd rows.
fn node_square(l: u32, odd: bool) -> Rational {
    if odd {
        let t = 2 * i64::from(l) + 1;
        ratio(t * t, 4)
    } else {
        int(i64::from(l) * i64::from(l))
    }
}

/// Scatters the `y = x²` coefficients of a row into `t(m, 0..=m)`.
fn scatter_row(m: u32, y_coeffs: &[Rational]) -> Vec<Rational> {
    let odd = m % 2 == 1;
    let mut row = vec![Rational::zero(); m as usize + 1];
    for (k, c) in y_coeffs.iter().enumerate() {
        let n = 2 * k + usize::from(odd);
        row[n] = c.clone();
    }
    row
}

/// The full row `t(m, 0), ..., t(m, m)`.
pub fn central_factorial_row(m: u32) -> Vec<Rational> {
    let odd = m % 2 == 1;
    let a = m / 2;
    scatter_row(m, &expand_product((0..a).map(|l| node_square(l, odd))))
}

/// `t(m, n)` for any non-negative pair.
pub fn cfn(m: u32, n: u32) -> Rational {
    if n > m || (m + n) % 2 == 1 {
        return Rational::zero();
    }
    central_factorial_row(m).swap_remove(n as usize)
}

/// All `t(m, n)` with `m ≤ max_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralFactorialTable {
    max_m: u32,
    rows: Vec<Vec<Rational>>,
}

impl CentralFactorialTable {
    pub fn new(max_m: u32) -> Self {
        let mut rows = Vec::with_capacity(max_m as usize + 1);
        // Two running products, one per parity, each extended by one factor
        // every other row.
        let mut even = vec![Rational::one()];
        let mut odd = vec![Rational::one()];
        for m in 0..=max_m {
            let a = m / 2;
            let poly = if m % 2 == 0 { &mut even } else { &mut odd };
            if a > 0 {
                *poly = multiply_by_linear(poly, &node_square(a - 1, m % 2 == 1));
            }
            rows.push(scatter_row(m, poly));
        }
        CentralFactorialTable { max_m, rows }
    }

    pub fn max_m(&self) -> u32 {
        self.max_m
    }

    /// `t(m, n)`; zero outside `n ≤ m`.
    ///
    /// # Panics
    ///
    /// If `m > max_m`.
    pub fn get(&self, m: u32, n: u32) -> Rational {
        assert!(m <= self.max_m, "t({m}, {n}) beyond table size {}", self.max_m);
        self.rows[m as usize]
            .get(n as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, m: u32) -> &[Rational] {
        &self.rows[m as usize]
    }

    /// Overwrites one entry. Only meant for fault-injection checks.
    pub fn set(&mut self, m: u32, n: u32, value: Rational) {
        self.rows[m as usize][n as usize] = value;
    }

    /// Checks `t(m, 2k−2) = t(m+2, 2k) + (m²/4)·t(m, 2k)` for every even
    /// `m ≤ max_m − 2` and every `k` with `2k ≤ m + 2`.
    pub fn satisfies_recurrence(&self) -> bool {
        if self.max_m < 2 {
            return true;
        }
        let top = self.max_m - 2;
        (0..=top).step_by(2).all(|m| {
            let m2 = ratio(i64::from(m) * i64::from(m), 4);
            (1..=m / 2 + 1).all(|k| {
                let lhs = self.get(m, 2 * k - 2);
                let rhs = self.get(m + 2, 2 * k) + &m2 * self.get(m, 2 * k);
                lhs == rhs
            })
        })
    }

    /// Diagonal, parity and sign-pattern invariants over the whole table.
    pub fn satisfies_structure(&self) -> bool {
        (0..=self.max_m).all(|m| {
            (0..=m).all(|n| {
                let t = self.get(m, n);
                if (m + n) % 2 == 1 || (n == 0 && m > 0) {
                    return t.is_zero();
                }
                if n == m && !t.is_one() {
                    return false;
                }
                let expected_negative = ((m - n) / 2) % 2 == 1;
                !t.is_zero() && t.is_negative() == expected_negative
            })
        })
    }
}

/// Memoized table of every `t(m, n)` with `m ≤ max_m`.
pub fn cfn_table(max_m: u32) -> CentralFactorialTable {
    CentralFactorialTable::new(max_m)
}

/// Exhaustive exact check of the central factorial recurrence for even
/// `m ≤ max_m`.
pub fn verify_cfn_recurrence(max_m: u32) -> bool {
    cfn_table(max_m + 2).satisfies_recurrence()
}

/// Taylor coefficients of `(arcsin z)^n` through `z^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcsinSeries {
    pub power: u32,
    pub order: u32,
    /// Indexed by the exponent of `z`; length `order + 1`.
    pub coeffs: Vec<Rational>,
}

impl ArcsinSeries {
    pub fn coeff(&self, m: u32) -> Rational {
        self.coeffs.get(m as usize).cloned().unwrap_or_else(Rational::zero)
    }
}

/// `(arcsin z)^n = (n!/2^n) Σ_{m≥n} |t(m,n)| (2z)^m / m!`.
pub fn arcsin_power_series(n: u32, order: u32) -> ArcsinSeries {
    let table = cfn_table(order.max(n));
    arcsin_power_series_from(&table, n, order)
}

pub(crate) fn arcsin_power_series_from(table: &CentralFactorialTable, n: u32, order: u32) -> ArcsinSeries {
    let prefactor = Rational::from_integer(factorial(n)) * pow2(-i64::from(n));
    let coeffs = (0..=order)
        .map(|m| {
            if m < n || (m + n) % 2 == 1 {
                return Rational::zero();
            }
            let t = table.get(m, n).abs();
            &prefactor * t * pow2(i64::from(m)) / Rational::from_integer(factorial(m))
        })
        .collect();
    ArcsinSeries {
        power: n,
        order,
        coeffs,
    }
}
