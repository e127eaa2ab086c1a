//! Assembly of `exp(iθ n̂·J)` from the coefficient polynomials, and an
//! independent eigendecomposition oracle.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::coefficients::{all_coefficients, CoefficientEvaluator};
use crate::spin_algebra::{axis_dot_j, Axis};
use crate::{CMatrix, Complex64, Error, HalfInteger, Result};

/// Largest phase `j·|θ|` evaluated directly by Horner's scheme. Larger
/// angles are halved until below it and the result is squared back up.
pub const MAX_DIRECT_PHASE: f64 = 2.0;

/// Eigenvalues further than this from `{j, ..., −j}` make the oracle fail.
pub const SNAP_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct RotationResult {
    pub spin: HalfInteger,
    pub axis: Axis,
    pub theta: f64,
    pub matrix: CMatrix,
}

impl RotationResult {
    /// `max |U†U − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        let d = self.matrix.adjoint() * &self.matrix - CMatrix::identity(n, n);
        max_abs(&d)
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.clone().determinant()
    }
}

pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max-abs entrywise difference.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

/// The rotation polynomial of one spin, with every coefficient rounded once.
#[derive(Debug, Clone)]
pub struct RotationPolynomial {
    spin: HalfInteger,
    /// `A_k / k!` evaluators, `k = 0..=2j`.
    coefficients: Vec<CoefficientEvaluator>,
    inverse_factorials: Vec<f64>,
}

impl RotationPolynomial {
    pub fn new(spin: HalfInteger) -> Self {
        let coefficients = all_coefficients(spin).iter().map(|a| a.evaluator()).collect();
        let mut inverse_factorials = Vec::with_capacity(spin.dim());
        let mut f = 1.0;
        for k in 0..spin.dim() {
            if k > 0 {
                f /= k as f64;
            }
            inverse_factorials.push(f);
        }
        RotationPolynomial {
            spin,
            coefficients,
            inverse_factorials,
        }
    }

    pub fn spin(&self) -> HalfInteger {
        self.spin
    }

    /// Scalar weights `A_k(θ)/k!`.
    pub fn weights(&self, theta: f64) -> Vec<f64> {
        self.coefficients
            .iter()
            .zip(&self.inverse_factorials)
            .map(|(a, f)| a.evaluate(theta) * f)
            .collect()
    }

    /// `Σ_k (A_k(θ)/k!) X^k` with `X = 2i n̂·J`, by Horner's scheme.
    pub fn evaluate_direct(&self, generator: &CMatrix, theta: f64) -> CMatrix {
        let n = generator.nrows();
        let x = generator * Complex64::new(0.0, 2.0);
        let weights = self.weights(theta);
        let mut acc = CMatrix::identity(n, n) * Complex64::new(weights[weights.len() - 1], 0.0);
        for &w in weights.iter().rev().skip(1) {
            acc = &acc * &x;
            for i in 0..n {
                acc[(i, i)] += w;
            }
        }
        acc
    }

    /// Number of angle halvings used for `θ`.
    pub fn halvings(&self, theta: f64) -> u32 {
        let phase = self.spin.to_f64() * theta.abs();
        if phase.is_nan() || phase <= MAX_DIRECT_PHASE {
            return 0;
        }
        (phase / MAX_DIRECT_PHASE).log2().ceil().max(0.0) as u32
    }

    /// Rotation through `θ` about the axis of `generator = n̂·J`.
    ///
    /// The polynomial identity holds for every `θ`, so `R(θ) = R(θ/2^s)^{2^s}`
    /// exactly; halving keeps the Horner terms of order one and avoids the
    /// cancellation that grows like `e^{j|θ|}` for large spins.
    pub fn evaluate(&self, generator: &CMatrix, theta: f64) -> CMatrix {
        let s = self.halvings(theta);
        let mut u = self.evaluate_direct(generator, theta / f64::from(1u32 << s.min(31)));
        for _ in 0..s {
            u = &u * &u;
        }
        u
    }
}

/// `exp(iθ n̂·J) = Σ_{k=0}^{2j} A_k(θ) (2i n̂·J)^k / k!`.
pub fn rotation_polynomial(spin: HalfInteger, axis: &Axis, theta: f64) -> Result<RotationResult> {
    let generator = axis_dot_j(spin, axis)?;
    let matrix = RotationPolynomial::new(spin).evaluate(&generator.entries, theta);
    Ok(RotationResult {
        spin,
        axis: *axis,
        theta,
        matrix,
    })
}

/// `Q diag(e^{iθm}) Q†` from a Hermitian eigendecomposition of `n̂·J`, with
/// the computed eigenvalues snapped to the exact spectrum.
pub fn rotation_reference(spin: HalfInteger, axis: &Axis, theta: f64) -> Result<RotationResult> {
    let generator = axis_dot_j(spin, axis)?;
    let n = spin.dim();
    let eig = SymmetricEigen::new(generator.entries);

    let mut used = vec![false; n];
    let mut phases = Vec::with_capacity(n);
    for &lambda in eig.eigenvalues.iter() {
        // Nearest admissible 2m has the parity of 2j and |2m| ≤ 2j.
        let two_j = i64::from(spin.two_j());
        let mut two_m = (2.0 * lambda).round() as i64;
        if (two_m - two_j).rem_euclid(2) != 0 {
            two_m += if 2.0 * lambda > two_m as f64 { 1 } else { -1 };
        }
        let m = two_m as f64 / 2.0;
        let distance = (lambda - m).abs();
        let slot = (two_j - two_m) / 2;
        if distance > SNAP_TOLERANCE || !(0..n as i64).contains(&slot) || used[slot as usize] {
            return Err(Error::OracleFailure {
                found: lambda,
                distance,
            });
        }
        used[slot as usize] = true;
        phases.push(Complex64::from_polar(1.0, theta * m));
    }

    let q = eig.eigenvectors;
    let mut scaled = q.clone();
    for (c, phase) in phases.iter().enumerate() {
        for r in 0..n {
            scaled[(r, c)] *= phase;
        }
    }
    Ok(RotationResult {
        spin,
        axis: *axis,
        theta,
        matrix: scaled * q.adjoint(),
    })
}

/// Max-abs difference between the polynomial assembly and the oracle.
pub fn compare_rotation(spin: HalfInteger, axis: &Axis, theta: f64) -> Result<f64> {
    let poly = rotation_polynomial(spin, axis, theta)?;
    let reference = rotation_reference(spin, axis, theta)?;
    Ok(max_abs_diff(&poly.matrix, &reference.matrix))
}

/// Generic Padé scaling-and-squaring `exp(iθ n̂·J)`; a third reference that
/// uses neither the polynomial nor the known spectrum.
pub fn rotation_expm(spin: HalfInteger, axis: &Axis, theta: f64) -> Result<RotationResult> {
    let generator = axis_dot_j(spin, axis)?;
    let matrix = (generator.entries * Complex64::new(0.0, theta)).exp();
    Ok(RotationResult {
        spin,
        axis: *axis,
        theta,
        matrix,
    })
}

/// Serializable matrix as separate real and imaginary row arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&CMatrix> for ComplexMatrixJson {
    fn from(m: &CMatrix) -> Self {
        let rows = |f: fn(&Complex64) -> f64| {
            (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| f(&m[(r, c)])).collect())
                .collect()
        };
        ComplexMatrixJson {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }
}
