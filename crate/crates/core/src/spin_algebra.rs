//! Spin matrices `J_x, J_y, J_z` for arbitrary `j`, the generator `n̂·J`, and
//! the degree-`(2j+1)` power-reduction identity
//!
//! ```text
//! (2 n̂·J)^{2j+1} = −Σ_{m=0}^{2j} 2^{1+2j−m} t(2+2j, 1+m) (2 n̂·J)^m
//! ```
//!
//! Basis order is `m = +j, j−1, ..., −j`.

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::central_factorials::cfn_table;
use crate::exact::{int, pow2, to_f64, Rational};
use crate::{CMatrix, Complex64, Error, HalfInteger, Result};

/// Unit rotation axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Axis {
    /// Allowed deviation of `x² + y² + z²` from one.
    pub const TOLERANCE: f64 = 1e-12;

    pub const X: Axis = Axis { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Axis = Axis { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Axis = Axis { x: 0.0, y: 0.0, z: 1.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm2 = x * x + y * y + z * z;
        if !norm2.is_finite() || (norm2 - 1.0).abs() > Self::TOLERANCE {
            return Err(Error::NonUnitAxis { x, y, z });
        }
        Ok(Axis { x, y, z })
    }

    /// Rescales any non-zero finite vector to unit length.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NonUnitAxis { x, y, z });
        }
        Axis::new(x / norm, y / norm, z / norm)
    }

    /// Uniformly distributed direction.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 3] = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            if (0.01..=1.0).contains(&n2) {
                if let Ok(a) = Axis::normalized(v[0], v[1], v[2]) {
                    return a;
                }
            }
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// Dense complex `(2j+1) × (2j+1)` spin-space matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinMatrix {
    pub spin: HalfInteger,
    pub entries: CMatrix,
}

impl SpinMatrix {
    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    /// `max |M − M†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = &self.entries - self.entries.adjoint();
        d.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `J_x, J_y, J_z` from the ladder operators
/// `J_± |m⟩ = √(j(j+1) − m(m±1)) |m±1⟩`.
pub fn spin_triple(spin: HalfInteger) -> (SpinMatrix, SpinMatrix, SpinMatrix) {
    let n = spin.dim();
    let two_j = i64::from(spin.two_j());
    let weights: Vec<i64> = spin.doubled_weights().collect();

    // J_+ has entries one above the diagonal: row r−1, column r raises m = j − r.
    let mut raise = CMatrix::zeros(n, n);
    for r in 1..n {
        let tm = weights[r];
        // 4(j(j+1) − m(m+1)) = 2j(2j+2) − 2m(2m+2)
        let four_times = two_j * (two_j + 2) - tm * (tm + 2);
        raise[(r - 1, r)] = Complex64::new((four_times as f64).sqrt() / 2.0, 0.0);
    }
    let lower = raise.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let minus_half_i = Complex64::new(0.0, -0.5);
    let jx = (&raise + &lower) * half;
    let jy = (&raise - &lower) * minus_half_i;
    let jz = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        weights.iter().map(|&w| Complex64::new(w as f64 / 2.0, 0.0)),
    ));
    let wrap = |entries| SpinMatrix { spin, entries };
    (wrap(jx), wrap(jy), wrap(jz))
}

/// `n̂·J = n_x J_x + n_y J_y + n_z J_z`.
pub fn axis_dot_j(spin: HalfInteger, axis: &Axis) -> Result<SpinMatrix> {
    let axis = Axis::new(axis.x, axis.y, axis.z)?;
    let (jx, jy, jz) = spin_triple(spin);
    let c = |v: f64| Complex64::new(v, 0.0);
    let entries = jx.entries * c(axis.x) + jy.entries * c(axis.y) + jz.entries * c(axis.z);
    Ok(SpinMatrix { spin, entries })
}

/// Diagonal of `S = 2J_z`: the integers `2j, 2j−2, ..., −2j`.
pub fn exact_s_diagonal(spin: HalfInteger) -> Vec<Rational> {
    spin.doubled_weights().map(int).collect()
}

/// Coefficients `c_m` with `S^{2j+1} = Σ_{m=0}^{2j} c_m S^m`, i.e.
/// `c_m = −2^{1+2j−m} t(2+2j, 1+m)`.
pub fn power_reduction_coefficients(spin: HalfInteger) -> Vec<Rational> {
    let two_j = spin.two_j();
    let table = cfn_table(two_j + 2);
    (0..=two_j)
        .map(|m| -(pow2(1 + i64::from(two_j) - i64::from(m)) * table.get(two_j + 2, m + 1)))
        .collect()
}

/// Exact check on the diagonal representation `S = 2J_z`.
pub fn verify_power_reduction_exact(spin: HalfInteger) -> bool {
    let coeffs = power_reduction_coefficients(spin);
    let top = spin.two_j() as usize + 1;
    exact_s_diagonal(spin).iter().all(|node| {
        // Horner on the right-hand side; plain power on the left.
        let lhs = (0..top).fold(int(1), |acc, _| acc * node);
        let rhs = coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * node + c);
        lhs == rhs
    })
}

/// Relative max-norm deviation `‖S^{2j+1} − Σ c_m S^m‖ / max(1, ‖S^{2j+1}‖)`
/// for `S = 2 n̂·J` in double precision.
pub fn power_reduction_deviation(spin: HalfInteger, axis: &Axis) -> Result<f64> {
    let gen = axis_dot_j(spin, axis)?;
    let s = gen.entries * Complex64::new(2.0, 0.0);
    let n = spin.dim();
    let coeffs = power_reduction_coefficients(spin);

    let mut power = CMatrix::identity(n, n);
    let mut rhs = CMatrix::zeros(n, n);
    for c in &coeffs {
        rhs += &power * Complex64::new(to_f64(c), 0.0);
        power = &power * &s;
    }
    let scale = power.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let diff = (&power - &rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(diff / scale)
}

/// Exact identity on `2J_z` plus a floating-point spot check on a fixed
/// pseudo-random axis (relative deviation ≤ 1e−9).
pub fn verify_power_reduction(spin: HalfInteger) -> bool {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0000 + u64::from(spin.two_j()));
    let axis = Axis::random(&mut rng);
    verify_power_reduction_exact(spin) && power_reduction_deviation(spin, &axis).is_ok_and(|d| d <= 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn sj(two_j: u32) -> HalfInteger {
        HalfInteger::from_two_j(two_j)
    }

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn spin_half_matrices() {
        let (jx, _, jz) = spin_triple(sj(1));
        let expect_z = CMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5].map(|v| Complex64::new(v, 0.0)));
        let expect_x = CMatrix::from_row_slice(2, 2, &[0.0, 0.5, 0.5, 0.0].map(|v| Complex64::new(v, 0.0)));
        assert!(max_abs(&(jz.entries - expect_z)) < 1e-15);
        assert!(max_abs(&(jx.entries - expect_x)) < 1e-15);
    }

    #[test]
    fn spin_one_jz() {
        let (_, _, jz) = spin_triple(sj(2));
        let diag: Vec<f64> = (0..3).map(|i| jz.entries[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 0.0, -1.0]);
    }

    #[test]
    fn commutation_relations() {
        let i = Complex64::new(0.0, 1.0);
        for two_j in 0..=8 {
            let (jx, jy, jz) = spin_triple(sj(two_j));
            let xy = &jx.entries * &jy.entries - &jy.entries * &jx.entries - &jz.entries * i;
            let yz = &jy.entries * &jz.entries - &jz.entries * &jy.entries - &jx.entries * i;
            let zx = &jz.entries * &jx.entries - &jx.entries * &jz.entries - &jy.entries * i;
            assert!(max_abs(&xy) < 1e-13, "two_j={two_j}");
            assert!(max_abs(&yz) < 1e-13, "two_j={two_j}");
            assert!(max_abs(&zx) < 1e-13, "two_j={two_j}");
            // Casimir j(j+1).
            let j = sj(two_j).to_f64();
            let c = &jx.entries * &jx.entries + &jy.entries * &jy.entries + &jz.entries * &jz.entries;
            let target = CMatrix::identity(two_j as usize + 1, two_j as usize + 1) * Complex64::new(j * (j + 1.0), 0.0);
            assert!(max_abs(&(c - target)) < 1e-12);
        }
    }

    #[test]
    fn axis_projection_examples() {
        let z = axis_dot_j(sj(1), &Axis::Z).unwrap();
        assert_eq!(z.entries[(0, 0)].re, 0.5);
        assert_eq!(z.entries[(1, 1)].re, -0.5);
        let x = axis_dot_j(sj(1), &Axis::X).unwrap();
        assert_eq!(x.entries[(0, 1)].re, 0.5);
        assert_eq!(x.entries[(1, 0)].re, 0.5);

        let axis = Axis::normalized(0.3, -0.4, 0.7).unwrap();
        let m = axis_dot_j(sj(4), &axis).unwrap();
        assert!(m.hermiticity_defect() < 1e-15);
        assert!(m.entries.trace().norm() < 1e-14);
    }

    #[test]
    fn rejects_non_unit_axis() {
        assert!(matches!(Axis::new(1.0, 1.0, 0.0), Err(Error::NonUnitAxis { .. })));
        assert!(Axis::normalized(0.0, 0.0, 0.0).is_err());
        assert!(Axis::new(f64::NAN, 0.0, 0.0).is_err());
        let sneaky = Axis { x: 2.0, y: 0.0, z: 0.0 };
        assert!(axis_dot_j(sj(2), &sneaky).is_err());
    }

    #[test]
    fn power_reduction_small_spins() {
        // Spin 1/2: S² = −(4 t(3,1) I + 2 t(3,2) S) = I.
        assert_eq!(power_reduction_coefficients(sj(1)), vec![int(1), int(0)]);
        // Spin 1: S³ = 4S.
        assert_eq!(power_reduction_coefficients(sj(2)), vec![int(0), int(4), int(0)]);
        assert_eq!(power_reduction_coefficients(sj(0)), vec![int(0)]);
        for two_j in 0..=3 {
            assert!(verify_power_reduction(sj(two_j)), "two_j={two_j}");
        }
        assert_eq!(exact_s_diagonal(sj(3)), vec![int(3), int(1), int(-1), int(-3)]);
        let _ = ratio(1, 2);
    }
}
