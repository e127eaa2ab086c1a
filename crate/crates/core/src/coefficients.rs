//! The angle-dependent coefficients `A_k^[j](θ)` of the rotation polynomial
//!
//! ```text
//! exp(iθ n̂·J) = Σ_{k=0}^{2j} A_k^[j](θ) (2i n̂·J)^k / k!
//! ```
//!
//! Each coefficient is `cos(θ/2)^ε · Σ_m c_m sin^m(θ/2)` with `ε = (2j − k) mod 2`
//! and exact non-negative `c_m`. Two independent constructions are provided:
//! the central-factorial sum (plus one θ-derivative for odd `2j − k`), and the
//! truncated Taylor series of `(1−x)^{−ε/2} (arcsin√x/√x)^k` in `x = sin²(θ/2)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::central_factorials::{cfn_table, CentralFactorialTable};
use crate::exact::{binomial, factorial, int, pow2, ratio, sign_pow, to_f64, Rational};
use crate::{Error, HalfInteger, Result};

/// Finite series `Σ_m c_m sin^m(θ/2)` with exact coefficients; zero terms are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SineSeries {
    terms: BTreeMap<u32, Rational>,
}

impl SineSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(power: u32, coeff: Rational) -> Self {
        let mut s = Self::new();
        s.add_term(power, coeff);
        s
    }

    pub fn add_term(&mut self, power: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(power).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&power);
        }
    }

    pub fn coeff(&self, power: u32) -> Rational {
        self.terms.get(&power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(&p, c)| (p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_power(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_power(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = Self::new();
        for (p, c) in self.iter() {
            out.add_term(p, c * factor);
        }
        out
    }

    pub fn plus(&self, other: &SineSeries) -> Self {
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_term(p, c.clone());
        }
        out
    }

    pub fn minus(&self, other: &SineSeries) -> Self {
        self.plus(&other.scaled(&int(-1)))
    }

    /// `d²/dθ²` of a pure sine series, again a pure sine series:
    /// `(s^m)'' = m(m−1)/4 · s^{m−2} − m²/4 · s^m`, using `cos² = 1 − sin²`.
    pub fn second_derivative(&self) -> Self {
        let mut out = Self::new();
        for (m, c) in self.iter() {
            let mi = i64::from(m);
            if m >= 2 {
                out.add_term(m - 2, c * ratio(mi * (mi - 1), 4));
            }
            out.add_term(m, -(c * ratio(mi * mi, 4)));
        }
        out
    }

    /// Evaluates at `s = sin(θ/2)` in double precision.
    pub fn evaluate(&self, s: f64) -> f64 {
        self.iter().map(|(p, c)| to_f64(c) * s.powi(p as i32)).sum()
    }
}

impl FromIterator<(u32, Rational)> for SineSeries {
    fn from_iter<I: IntoIterator<Item = (u32, Rational)>>(iter: I) -> Self {
        let mut s = SineSeries::new();
        for (p, c) in iter {
            s.add_term(p, c);
        }
        s
    }
}

/// `A_k^[j](θ) = cos(θ/2)^ε · Σ_m sine_coeffs(m) · sin^m(θ/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientPolynomial {
    pub spin: HalfInteger,
    pub k: u32,
    pub epsilon: u8,
    pub sine_coeffs: SineSeries,
}

/// Wire form of a single term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub power: u32,
    pub num: String,
    pub den: String,
}

/// Wire form: `{"two_j", "k", "epsilon", "terms": [{"power", "num", "den"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientJson {
    pub two_j: u32,
    pub k: u32,
    pub epsilon: u8,
    pub terms: Vec<TermJson>,
}

impl CoefficientPolynomial {
    /// `a_{k,n}` in the notation `A_k = Σ_n a_{k,n} sin^{2n}(θ/2)`.
    pub fn sine_coefficient(&self, power: u32) -> Rational {
        self.sine_coeffs.coeff(power)
    }

    pub fn to_json(&self) -> CoefficientJson {
        CoefficientJson {
            two_j: self.spin.two_j(),
            k: self.k,
            epsilon: self.epsilon,
            terms: self
                .sine_coeffs
                .iter()
                .map(|(power, c)| TermJson {
                    power,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &CoefficientJson) -> Result<Self> {
        let mut sine_coeffs = SineSeries::new();
        for t in &json.terms {
            let num: BigInt = t
                .num
                .parse()
                .map_err(|_| Error::InvalidRequest(format!("bad numerator {:?}", t.num)))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|_| Error::InvalidRequest(format!("bad denominator {:?}", t.den)))?;
            if den.is_zero() {
                return Err(Error::InvalidRequest("zero denominator".into()));
            }
            sine_coeffs.add_term(t.power, Rational::new(num, den));
        }
        Ok(CoefficientPolynomial {
            spin: HalfInteger::from_two_j(json.two_j),
            k: json.k,
            epsilon: json.epsilon,
            sine_coeffs,
        })
    }

    /// Double-precision evaluator with the coefficients rounded once.
    pub fn evaluator(&self) -> CoefficientEvaluator {
        let lowest = self.sine_coeffs.min_power().unwrap_or(0);
        let highest = self.sine_coeffs.max_power().unwrap_or(0);
        // Every power shares the parity of `lowest`, so the series is
        // s^lowest · P(s²) with P having non-negative coefficients.
        let in_squares = (lowest..=highest)
            .step_by(2)
            .map(|p| to_f64(&self.sine_coeffs.coeff(p)))
            .collect();
        CoefficientEvaluator {
            epsilon: self.epsilon,
            lowest,
            in_squares,
        }
    }

    pub fn evaluate(&self, theta: f64) -> f64 {
        self.evaluator().evaluate(theta)
    }
}

/// Rounded copy of a [`CoefficientPolynomial`] for repeated evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientEvaluator {
    epsilon: u8,
    lowest: u32,
    in_squares: Vec<f64>,
}

impl CoefficientEvaluator {
    pub fn evaluate(&self, theta: f64) -> f64 {
        let (s, c) = (0.5 * theta).sin_cos();
        let x = s * s;
        let poly = self.in_squares.iter().rev().fold(0.0, |acc, &a| acc * x + a);
        let value = poly * s.powi(self.lowest as i32);
        if self.epsilon == 1 {
            value * c
        } else {
            value
        }
    }
}

fn check_k(spin: HalfInteger, k: u32) -> Result<()> {
    if k > spin.two_j() {
        return Err(Error::Domain(format!(
            "coefficient index k = {k} exceeds 2j = {}",
            spin.two_j()
        )));
    }
    Ok(())
}

/// `ε(j, k) = (1 − (−1)^{2j−k}) / 2`.
pub fn epsilon(spin: HalfInteger, k: u32) -> Result<u8> {
    check_k(spin, k)?;
    Ok(((spin.two_j() - k) % 2) as u8)
}

/// `A_k = (k!/2^k) Σ_{m=k}^{2j} (2^m/m!) |t(m,k)| sin^m(θ/2)` for even `2j − k`.
pub fn coefficient_cfn_route(spin: HalfInteger, k: u32) -> Result<CoefficientPolynomial> {
    check_k(spin, k)?;
    let table = cfn_table(spin.two_j());
    cfn_route_with(&table, spin, k)
}

fn cfn_route_with(table: &CentralFactorialTable, spin: HalfInteger, k: u32) -> Result<CoefficientPolynomial> {
    check_k(spin, k)?;
    let two_j = spin.two_j();
    if (two_j - k) % 2 == 1 {
        return Err(Error::Parity { two_j, k });
    }
    let prefactor = Rational::from_integer(factorial(k)) * pow2(-i64::from(k));
    let sine_coeffs = (k..=two_j)
        .step_by(2)
        .map(|m| {
            let c = &prefactor * pow2(i64::from(m)) * table.get(m, k).abs() / Rational::from_integer(factorial(m));
            (m, c)
        })
        .collect();
    Ok(CoefficientPolynomial {
        spin,
        k,
        epsilon: 0,
        sine_coeffs,
    })
}

/// `A_{k−1} = (2/k) dA_k/dθ`, applied to an even-case coefficient.
///
/// With `d/dθ sin^m(θ/2) = (m/2) sin^{m−1}(θ/2) cos(θ/2)` this maps
/// `c_m → (m/k) c_m` at power `m − 1` and attaches one cosine factor.
pub fn differentiate_coefficient(poly: &CoefficientPolynomial) -> Result<CoefficientPolynomial> {
    if poly.epsilon != 0 {
        return Err(Error::Unsupported(
            "derivative relation only applies to coefficients without a cosine factor".into(),
        ));
    }
    if poly.k == 0 {
        return Err(Error::Domain("A_{-1} does not exist".into()));
    }
    let k = i64::from(poly.k);
    let sine_coeffs = poly
        .sine_coeffs
        .iter()
        .filter(|(m, _)| *m > 0)
        .map(|(m, c)| (m - 1, c * ratio(i64::from(m), k)))
        .collect();
    Ok(CoefficientPolynomial {
        spin: poly.spin,
        k: poly.k - 1,
        epsilon: 1,
        sine_coeffs,
    })
}

/// `A_k^[j]` for any `0 ≤ k ≤ 2j`, choosing the direct or derivative route
/// by the parity of `2j − k`.
pub fn coefficient(spin: HalfInteger, k: u32) -> Result<CoefficientPolynomial> {
    check_k(spin, k)?;
    let table = cfn_table(spin.two_j());
    coefficient_with(&table, spin, k)
}

fn coefficient_with(table: &CentralFactorialTable, spin: HalfInteger, k: u32) -> Result<CoefficientPolynomial> {
    if (spin.two_j() - k).is_multiple_of(2) {
        cfn_route_with(table, spin, k)
    } else {
        differentiate_coefficient(&cfn_route_with(table, spin, k + 1)?)
    }
}

/// `A_0, ..., A_{2j}` sharing one central factorial table.
pub fn all_coefficients(spin: HalfInteger) -> Vec<CoefficientPolynomial> {
    let table = cfn_table(spin.two_j());
    (0..=spin.two_j())
        .map(|k| coefficient_with(&table, spin, k).expect("k ≤ 2j"))
        .collect()
}

/// Truncated product of two power series in `x`, through `x^order`.
fn series_product(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `arcsin(√x)/√x = Σ_i C(2i,i) / (4^i (2i+1)) x^i`.
fn arcsin_over_identity(order: usize) -> Vec<Rational> {
    (0..=order as u32)
        .map(|i| Rational::new(binomial(2 * i, i), BigInt::from(4).pow(i) * (2 * i + 1)))
        .collect()
}

/// `(1 − x)^{−1/2} = Σ_i C(2i,i) / 4^i x^i`.
fn inverse_sqrt_one_minus(order: usize) -> Vec<Rational> {
    (0..=order as u32)
        .map(|i| Rational::new(binomial(2 * i, i), BigInt::from(4).pow(i)))
        .collect()
}

/// `A_k` from the truncated Taylor series
/// `sin^k(θ/2) cos^ε(θ/2) · Trunc_{⌊j−k/2⌋}[(1−x)^{−ε/2} (arcsin√x/√x)^k]`,
/// with `x = sin²(θ/2)`. Built from the classical arcsin series, not from
/// central factorial numbers.
pub fn coefficient_truncation_route(spin: HalfInteger, k: u32) -> Result<CoefficientPolynomial> {
    let eps = epsilon(spin, k)?;
    let order = ((spin.two_j() - k) / 2) as usize;

    let base = arcsin_over_identity(order);
    let mut series = vec![Rational::zero(); order + 1];
    series[0] = int(1);
    for _ in 0..k {
        series = series_product(&series, &base, order);
    }
    if eps == 1 {
        series = series_product(&series, &inverse_sqrt_one_minus(order), order);
    }

    let sine_coeffs = series
        .into_iter()
        .enumerate()
        .map(|(i, c)| (k + 2 * i as u32, c))
        .collect();
    Ok(CoefficientPolynomial {
        spin,
        k,
        epsilon: eps,
        sine_coeffs,
    })
}

/// `a_{k,n} = 2^{2n−k} k!/(2n)! |t(2n,k)|`, the coefficient of `sin^{2n}(θ/2)`
/// in `A_k` for integer `j` and even `k`; independent of `j`.
pub fn closed_form_sine_coefficient(k: u32, n: u32) -> Rational {
    if 2 * n < k {
        return Rational::zero();
    }
    let t = crate::central_factorials::cfn(2 * n, k).abs();
    pow2(2 * i64::from(n) - i64::from(k)) * Rational::from_integer(factorial(k)) * t
        / Rational::from_integer(factorial(2 * n))
}

/// Evaluates `A_k(θ)` in double precision.
pub fn evaluate_coefficient(poly: &CoefficientPolynomial, theta: f64) -> f64 {
    poly.evaluate(theta)
}

/// Difference `RHS − LHS` of the second-order relation between even-index
/// coefficients of an integer spin:
///
/// ```text
/// A_{2k−2} = 4/(2k(2k−1)) · A_{2k}'' + (−4)^{j−k+1} t(2+2j, 2k) (2k−2)!/(2j)! · A_{2j}
/// ```
///
/// evaluated exactly as sine series.
pub fn second_order_ode_residual(spin: HalfInteger, k: u32) -> Result<SineSeries> {
    if !spin.is_integer() {
        return Err(Error::Domain(format!(
            "second-order relation needs integer spin, got j = {spin}"
        )));
    }
    let j = spin.floor();
    if k == 0 || k > j {
        return Err(Error::Domain(format!("k = {k} outside 1..={j}")));
    }
    let table = cfn_table(spin.two_j() + 2);
    let lower = cfn_route_with(&table, spin, 2 * k - 2)?;
    let upper = cfn_route_with(&table, spin, 2 * k)?;
    let top = cfn_route_with(&table, spin, spin.two_j())?;

    let k2 = i64::from(2 * k);
    let derivative_term = upper.sine_coeffs.second_derivative().scaled(&ratio(4, k2 * (k2 - 1)));

    let exponent = i64::from(j) - i64::from(k) + 1;
    let power_of_minus_four = int(sign_pow(exponent)) * pow2(2 * exponent);
    let top_factor =
        power_of_minus_four * table.get(spin.two_j() + 2, 2 * k) * Rational::from_integer(factorial(2 * k - 2))
            / Rational::from_integer(factorial(spin.two_j()));
    let rhs = derivative_term.plus(&top.sine_coeffs.scaled(&top_factor));
    Ok(rhs.minus(&lower.sine_coeffs))
}

/// Exact check of the second-order relation for `A_{2k−2}`.
pub fn verify_second_order_ode(spin: HalfInteger, k: u32) -> Result<bool> {
    Ok(second_order_ode_residual(spin, k)?.is_zero())
}
