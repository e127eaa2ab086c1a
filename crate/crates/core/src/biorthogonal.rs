//! Finite biorthogonal systems built from powers of `sin(θ/2)` and their
//! cosine-harmonic duals, with exact pairings over `[−π, π]`.
//!
//! Integer `j` uses the even system `f_n = sin^{2n}(θ/2)`, `n = 0..=j`.
//! Half-odd `j` uses the odd system `f_n = sin^{2n−1}(θ/2)`, `n = 1..=j+½`,
//! whose duals carry one extra factor `sin(θ/2)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::Complex;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coefficients::SineSeries;
use crate::exact::{binomial, factorial, int, ratio, sign_pow, to_f64, Rational, RationalMatrix};
use crate::vandermonde::{build_vandermonde, VandermondeData};
use crate::{Error, HalfInteger, Result};

/// Trapezoidal sample count for the numeric cross-check.
pub const QUADRATURE_POINTS: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisFunction {
    pub spin: HalfInteger,
    pub n: u32,
    /// Exponent of `sin(θ/2)`.
    pub power: u32,
}

impl BasisFunction {
    pub fn evaluate(&self, theta: f64) -> f64 {
        (theta / 2.0).sin().powi(self.power as i32)
    }
}

fn index_range(spin: HalfInteger) -> (u32, u32) {
    if spin.is_integer() {
        (0, spin.floor())
    } else {
        (1, spin.ceil())
    }
}

fn check_index(spin: HalfInteger, n: u32) -> Result<()> {
    let (lo, hi) = index_range(spin);
    if n < lo || n > hi {
        return Err(Error::Domain(format!(
            "index n = {n} outside {lo}..={hi} for j = {spin}"
        )));
    }
    Ok(())
}

pub fn basis_function(spin: HalfInteger, n: u32) -> Result<BasisFunction> {
    check_index(spin, n)?;
    let power = if spin.is_integer() { 2 * n } else { 2 * n - 1 };
    Ok(BasisFunction { spin, n, power })
}

pub fn basis(spin: HalfInteger) -> Vec<BasisFunction> {
    let (lo, hi) = index_range(spin);
    (lo..=hi)
        .map(|n| basis_function(spin, n).expect("index in range"))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualFunction {
    pub spin: HalfInteger,
    pub n: u32,
    /// Harmonic `k` of `cos(kθ)` to its full coefficient, `(−4)^n` included.
    pub cos_coeffs: BTreeMap<u32, Rational>,
    pub half_sine_factor: bool,
}

/// `(k/n) C(k+n−1, 2n−1)`, or `1, 2, 2, ...` when `n = 0`.
fn bracket_weight(n: u32, k: u32) -> Rational {
    if n == 0 {
        return if k == 0 { int(1) } else { int(2) };
    }
    Rational::new(BigInt::from(k) * binomial(k + n - 1, 2 * n - 1), BigInt::from(n))
}

fn minus_four_pow(n: u32) -> Rational {
    Rational::from_integer(BigInt::from(-4).pow(n))
}

fn dual_with_cap(spin: HalfInteger, n: u32, cap: u32, half_sine_factor: bool) -> DualFunction {
    let scale = minus_four_pow(n);
    let cos_coeffs = (n..=cap).map(|k| (k, &scale * bracket_weight(n, k))).collect();
    DualFunction {
        spin,
        n,
        cos_coeffs,
        half_sine_factor,
    }
}

impl DualFunction {
    /// Highest harmonic present.
    pub fn cap(&self) -> u32 {
        self.cos_coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// Coefficient of `cos(kθ)` with `(−4)^n` divided out.
    pub fn bracket_coefficient(&self, k: u32) -> Rational {
        self.cos_coeffs
            .get(&k)
            .map_or_else(Rational::zero, |c| c / minus_four_pow(self.n))
    }

    pub fn evaluate(&self, theta: f64) -> f64 {
        let sum: f64 = self
            .cos_coeffs
            .iter()
            .map(|(&k, c)| to_f64(c) * (f64::from(k) * theta).cos())
            .sum();
        if self.half_sine_factor {
            sum * (theta / 2.0).sin()
        } else {
            sum
        }
    }

    /// `(1/2π) ∫ g(θ) sin^q(θ/2) dθ` over `[−π, π]`, exactly.
    pub fn pair_with_sine_power(&self, q: u32) -> Rational {
        let total = q + u32::from(self.half_sine_factor);
        if total % 2 == 1 {
            // Odd in θ.
            return Rational::zero();
        }
        self.cos_coeffs
            .iter()
            .map(|(&k, c)| c * cos_sine_integral(k, total / 2))
            .sum()
    }

    pub fn pair(&self, f: &BasisFunction) -> Rational {
        self.pair_with_sine_power(f.power)
    }

    /// Pairs with `Σ c_m sin^m(θ/2)`; by biorthonormality this extracts one
    /// coefficient of the series.
    pub fn pair_with_series(&self, series: &SineSeries) -> Rational {
        series.iter().map(|(m, c)| c * self.pair_with_sine_power(m)).sum()
    }

    /// Doubled-frequency exponential form: `g(θ) = Σ_a c_a e^{iaθ/2}`.
    fn exponential_form(&self) -> BTreeMap<i64, Complex<Rational>> {
        let half = ratio(1, 2);
        let mut out: BTreeMap<i64, Complex<Rational>> = BTreeMap::new();
        for (&k, c) in &self.cos_coeffs {
            let a = 2 * i64::from(k);
            let term = Complex::new(c * &half, Rational::zero());
            if a == 0 {
                add_to(&mut out, 0, Complex::new(c.clone(), Rational::zero()));
            } else {
                add_to(&mut out, a, term.clone());
                add_to(&mut out, -a, term);
            }
        }
        if !self.half_sine_factor {
            return out;
        }
        // sin(θ/2) = (−i/2) e^{iθ/2} + (i/2) e^{−iθ/2}
        let up = Complex::new(Rational::zero(), -half.clone());
        let down = Complex::new(Rational::zero(), half);
        let mut shifted = BTreeMap::new();
        for (a, c) in out {
            add_to(&mut shifted, a + 1, &c * &up);
            add_to(&mut shifted, a - 1, &c * &down);
        }
        shifted
    }
}

fn add_to(map: &mut BTreeMap<i64, Complex<Rational>>, key: i64, value: Complex<Rational>) {
    let slot = map.entry(key).or_insert_with(Complex::zero);
    *slot = &*slot + value;
}

pub fn dual_function(spin: HalfInteger, n: u32) -> Result<DualFunction> {
    check_index(spin, n)?;
    let (_, cap) = index_range(spin);
    Ok(dual_with_cap(spin, n, cap, !spin.is_integer()))
}

pub fn duals(spin: HalfInteger) -> Vec<DualFunction> {
    let (lo, hi) = index_range(spin);
    (lo..=hi)
        .map(|n| dual_function(spin, n).expect("index in range"))
        .collect()
}

/// Taylor coefficients of `(1+x)/(1−x)^{2n+1}` through `x^order`, built by
/// applying the prefix-sum operator `1/(1−x)` to `1+x` repeatedly.
pub fn dual_truncation_series(n: u32, order: u32) -> Vec<Rational> {
    let len = order as usize + 1;
    let mut coeffs = vec![BigInt::zero(); len];
    coeffs[0] = BigInt::one();
    if len > 1 {
        coeffs[1] = BigInt::one();
    }
    for _ in 0..(2 * n + 1) {
        for i in 1..len {
            let prev = coeffs[i - 1].clone();
            coeffs[i] += prev;
        }
    }
    coeffs.into_iter().map(Rational::from_integer).collect()
}

/// `r` with `∫_{−π}^{π} cos(mθ) sin^{2p}(θ/2) dθ = 2π r`.
pub fn cos_sine_integral(m: u32, p: u32) -> Rational {
    if m > p {
        return Rational::zero();
    }
    Rational::new(
        BigInt::from(sign_pow(i64::from(m))) * binomial(2 * p, p + m),
        BigInt::from(4).pow(p),
    )
}

/// Matrix of pairings `⟨g_m, f_n⟩` over the spin's own system.
pub fn pairing_matrix(spin: HalfInteger) -> RationalMatrix {
    let f = basis(spin);
    let g = duals(spin);
    RationalMatrix::from_fn(g.len(), f.len(), |r, c| g[r].pair(&f[c]))
}

/// Basis and duals of the combined system holding every power `0..=2j`:
/// even powers take the even duals capped at `⌊j⌋`, odd powers the odd duals
/// capped at `⌈j⌉`.
pub fn interlaced_system(spin: HalfInteger) -> (Vec<BasisFunction>, Vec<DualFunction>) {
    let even_cap = spin.floor();
    let odd_cap = spin.ceil();
    (0..=spin.two_j())
        .map(|q| {
            let n = q.div_ceil(2);
            let f = BasisFunction { spin, n, power: q };
            let g = if q % 2 == 0 {
                dual_with_cap(spin, n, even_cap, false)
            } else {
                dual_with_cap(spin, n, odd_cap, true)
            };
            (f, g)
        })
        .unzip()
}

pub fn interlaced_pairing_matrix(spin: HalfInteger) -> RationalMatrix {
    let (f, g) = interlaced_system(spin);
    RationalMatrix::from_fn(g.len(), f.len(), |r, c| g[r].pair(&f[c]))
}

pub fn verify_biorthonormality(spin: HalfInteger) -> bool {
    pairing_matrix(spin).is_identity() && interlaced_pairing_matrix(spin).is_identity()
}

/// Trapezoidal estimate of `(1/2π) ∫_{−π}^{π} g f dθ`.
pub fn quadrature_pairing(g: &DualFunction, f: &BasisFunction, points: usize) -> f64 {
    let h = 2.0 * PI / points as f64;
    let mut acc = 0.0;
    for i in 0..=points {
        let theta = -PI + h * i as f64;
        let w = if i == 0 || i == points { 0.5 } else { 1.0 };
        acc += w * g.evaluate(theta) * f.evaluate(theta);
    }
    acc / points as f64
}

/// Largest gap between quadrature and exact pairings over the own and the
/// interlaced systems.
pub fn quadrature_deviation(spin: HalfInteger) -> f64 {
    let own = (basis(spin), duals(spin));
    let mixed = interlaced_system(spin);
    [own, mixed]
        .iter()
        .flat_map(|(fs, gs)| {
            gs.iter().flat_map(move |g| {
                fs.iter()
                    .map(move |f| (quadrature_pairing(g, f, QUADRATURE_POINTS) - to_f64(&g.pair(f))).abs())
            })
        })
        .fold(0.0, f64::max)
}

/// `a_{k,n}`, the coefficient of `sin^{2n}(θ/2)` in `A_k`, recovered by
/// pairing `g_n` with the trace `k!(−i)^k Trace(T_k e^{iθJ_z})`:
///
/// `a_{k,n} = (−4)^n (−1)^{k/2} k! Σ_{ℓ=n}^{j} w_ℓ (V⁻¹)_{k+1, j−ℓ+1}`
///
/// where `w_ℓ` is the bracket weight of `g_n`; for `n = 0` the sum is the
/// full row sum of `V⁻¹`.
pub fn extract_coefficient_fourier(spin: HalfInteger, k: u32, n: u32) -> Result<Rational> {
    extract_coefficient_fourier_with(&build_vandermonde(spin), k, n)
}

pub fn extract_coefficient_fourier_with(data: &VandermondeData, k: u32, n: u32) -> Result<Rational> {
    let spin = data.spin;
    if !spin.is_integer() {
        return Err(Error::Domain(format!(
            "even-system extraction needs integer spin, got j = {spin}"
        )));
    }
    if k % 2 == 1 {
        return Err(Error::Parity { two_j: spin.two_j(), k });
    }
    let j = spin.floor();
    if k > spin.two_j() || n > j {
        return Err(Error::Domain(format!(
            "need k ≤ 2j and n ≤ j, got k = {k}, n = {n}, j = {spin}"
        )));
    }
    let row = k as usize + 1;
    let sum: Rational = if n == 0 {
        data.v_inv.row(row - 1).iter().sum()
    } else {
        (n..=j)
            .map(|l| bracket_weight(n, l) * data.v_inv_at(row, (j - l + 1) as usize))
            .sum()
    };
    let prefactor = minus_four_pow(n) * int(sign_pow(i64::from(k / 2))) * Rational::from_integer(factorial(k));
    Ok(prefactor * sum)
}

/// Odd-system counterpart for half-odd `j` and odd `k`: the coefficient of
/// `sin^{2n−1}(θ/2)` in `A_k`.
///
/// Antisymmetry of even rows of `V⁻¹` turns the trace into a sine series at
/// half-integer frequencies `a`, and `sin(θ/2) cos(ℓθ)` splits into
/// frequencies `ℓ ± ½`, giving
///
/// `a_{k,n} = (−4)^n (−1)^{(k−1)/2} k! Σ_{ℓ=n}^{j+½} w_ℓ [v(ℓ+½) − v(ℓ−½)] / 2`
///
/// with `v(a) = (V⁻¹)_{k+1, j−a+1}` for `0 < a ≤ j` and zero otherwise.
pub fn extract_coefficient_fourier_odd(spin: HalfInteger, k: u32, n: u32) -> Result<Rational> {
    extract_coefficient_fourier_odd_with(&build_vandermonde(spin), k, n)
}

pub fn extract_coefficient_fourier_odd_with(data: &VandermondeData, k: u32, n: u32) -> Result<Rational> {
    let spin = data.spin;
    if spin.is_integer() {
        return Err(Error::Domain(format!(
            "odd-system extraction needs half-odd spin, got j = {spin}"
        )));
    }
    if k.is_multiple_of(2) {
        return Err(Error::Parity { two_j: spin.two_j(), k });
    }
    let cap = spin.ceil();
    if k > spin.two_j() || n == 0 || n > cap {
        return Err(Error::Domain(format!(
            "need k ≤ 2j and 1 ≤ n ≤ j+½, got k = {k}, n = {n}, j = {spin}"
        )));
    }
    let two_j = i64::from(spin.two_j());
    let row = k as usize + 1;
    // Doubled frequency 2a → column j − a + 1.
    let v = |doubled: i64| -> Rational {
        if doubled <= 0 || doubled > two_j {
            Rational::zero()
        } else {
            data.v_inv_at(row, ((two_j - doubled) / 2 + 1) as usize).clone()
        }
    };
    let sum: Rational = (n..=cap)
        .map(|l| {
            let l2 = 2 * i64::from(l);
            bracket_weight(n, l) * (v(l2 + 1) - v(l2 - 1))
        })
        .sum();
    let prefactor =
        minus_four_pow(n) * int(sign_pow(i64::from((k - 1) / 2))) * Rational::from_integer(factorial(k)) / int(2);
    Ok(prefactor * sum)
}

/// The same projection carried out with no parity shortcuts: `A_k` is
/// written as `k!(−i)^k Σ_c (V⁻¹)_{k+1,c} e^{iθλ_c/2}`, the dual as complex
/// exponentials in doubled frequencies, and each product integrated term by
/// term. Works for either parity; returns the coefficient of the basis
/// function `f_n` of the spin's own system.
pub fn trace_projection(spin: HalfInteger, k: u32, n: u32) -> Result<Rational> {
    let data = build_vandermonde(spin);
    trace_projection_with(&data, k, n)
}

pub fn trace_projection_with(data: &VandermondeData, k: u32, n: u32) -> Result<Rational> {
    let spin = data.spin;
    if k > spin.two_j() {
        return Err(Error::Domain(format!("k = {k} exceeds 2j = {}", spin.two_j())));
    }
    if (spin.two_j() - k) % 2 == 1 {
        // A_k carries cos(θ/2) and lies outside the system.
        return Err(Error::Parity { two_j: spin.two_j(), k });
    }
    let dual = dual_function(spin, n)?;
    // (−i)^k k!
    let phase = match k % 4 {
        0 => Complex::new(int(1), int(0)),
        1 => Complex::new(int(0), int(-1)),
        2 => Complex::new(int(-1), int(0)),
        _ => Complex::new(int(0), int(1)),
    };
    let scale = phase * Complex::new(Rational::from_integer(factorial(k)), Rational::zero());
    let row = data.v_inv.row(k as usize);
    let two_j = i64::from(spin.two_j());

    let mut total: Complex<Rational> = Complex::zero();
    for (a, g) in dual.exponential_form() {
        for (c, v) in row.iter().enumerate() {
            let lambda = two_j - 2 * c as i64;
            let net = a + lambda;
            if net == 0 {
                total += &g * Complex::new(v.clone(), Rational::zero());
            } else if net % 2 != 0 {
                return Err(Error::Unsupported(format!(
                    "half-integer net frequency {net}/2 in projection for j = {spin}, k = {k}"
                )));
            }
        }
    }
    let value = total * scale;
    if !value.im.is_zero() {
        return Err(Error::Unsupported(format!(
            "projection left an imaginary part {} for j = {spin}, k = {k}, n = {n}",
            value.im
        )));
    }
    Ok(value.re)
}

/// Checks the even-system extraction against the closed form over the full
/// domain for integer `j`.
pub fn verify_fourier_extraction(spin: HalfInteger) -> bool {
    use crate::coefficients::closed_form_sine_coefficient;
    if !spin.is_integer() {
        return false;
    }
    let data = build_vandermonde(spin);
    (0..=spin.two_j()).step_by(2).all(|k| {
        (0..=spin.floor())
            .all(|n| extract_coefficient_fourier_with(&data, k, n).ok() == Some(closed_form_sine_coefficient(k, n)))
    })
}

/// Checks the odd-system extraction and the generic projection against the
/// sine coefficients of `A_k` for half-odd `j`.
pub fn verify_odd_extraction(spin: HalfInteger) -> bool {
    if spin.is_integer() {
        return false;
    }
    let data = build_vandermonde(spin);
    (1..=spin.two_j()).step_by(2).all(|k| {
        let a = crate::coefficients::coefficient(spin, k).expect("valid k");
        (1..=spin.ceil()).all(|n| {
            let expected = a.sine_coefficient(2 * n - 1);
            extract_coefficient_fourier_odd_with(&data, k, n).ok().as_ref() == Some(&expected)
                && trace_projection_with(&data, k, n).ok().as_ref() == Some(&expected)
        })
    })
}
