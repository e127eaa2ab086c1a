//! Timing and accuracy of the polynomial assembly and the eigendecomposition
//! oracle, both measured against the generic Padé matrix exponential.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::rotation::{max_abs_diff, rotation_expm, rotation_reference, RotationPolynomial};
use crate::spin_algebra::{axis_dot_j, Axis};
use crate::{Error, HalfInteger, Result};

pub const DEFAULT_SEED: u64 = 0xbe4c_2024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodStats {
    pub method: String,
    pub median_seconds: f64,
    /// Max-abs entrywise distance from the matrix exponential.
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchEntry {
    pub two_j: u32,
    pub repetitions: usize,
    /// One-off exact construction of the coefficient polynomials.
    pub polynomial_setup_seconds: f64,
    pub methods: Vec<MethodStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub reference: String,
    pub seed: u64,
    pub entries: Vec<BenchEntry>,
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        0.5 * (xs[mid - 1] + xs[mid])
    }
}

/// Each repetition draws a fresh axis and `θ ∈ [−4π, 4π]`; runs are
/// sequential so that timings are not disturbed by each other.
pub fn run_bench(two_j_list: &[u32], repetitions: usize, seed: u64) -> Result<BenchReport> {
    if repetitions == 0 {
        return Err(Error::InvalidRequest("repetitions must be at least 1".into()));
    }
    let mut entries = Vec::with_capacity(two_j_list.len());
    for &two_j in two_j_list {
        let spin = HalfInteger::from_two_j(two_j);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(two_j));

        let start = Instant::now();
        let poly = RotationPolynomial::new(spin);
        let setup = start.elapsed().as_secs_f64();

        let (mut poly_times, mut eig_times) = (Vec::new(), Vec::new());
        let (mut poly_dev, mut eig_dev) = (0.0f64, 0.0f64);
        for _ in 0..repetitions {
            let axis = Axis::random(&mut rng);
            let theta = rng.gen_range(-4.0 * PI..=4.0 * PI);
            let reference = rotation_expm(spin, &axis, theta)?.matrix;

            let start = Instant::now();
            let generator = axis_dot_j(spin, &axis)?;
            let m = poly.evaluate(&generator.entries, theta);
            poly_times.push(start.elapsed().as_secs_f64());
            poly_dev = poly_dev.max(max_abs_diff(&m, &reference));

            let start = Instant::now();
            let m = rotation_reference(spin, &axis, theta)?.matrix;
            eig_times.push(start.elapsed().as_secs_f64());
            eig_dev = eig_dev.max(max_abs_diff(&m, &reference));
        }
        entries.push(BenchEntry {
            two_j,
            repetitions,
            polynomial_setup_seconds: setup,
            methods: vec![
                MethodStats {
                    method: "polynomial".into(),
                    median_seconds: median(poly_times),
                    max_deviation: poly_dev,
                },
                MethodStats {
                    method: "eigen".into(),
                    median_seconds: median(eig_times),
                    max_deviation: eig_dev,
                },
            ],
        });
    }
    Ok(BenchReport {
        reference: "expm".into(),
        seed,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_list() {
        let report = run_bench(&[], 3, DEFAULT_SEED).unwrap();
        assert!(report.entries.is_empty());
    }

    #[test]
    fn zero_repetitions_rejected() {
        assert!(run_bench(&[2], 0, DEFAULT_SEED).is_err());
    }

    #[test]
    fn trivial_spin() {
        let report = run_bench(&[0], 2, DEFAULT_SEED).unwrap();
        for m in &report.entries[0].methods {
            assert_eq!(m.max_deviation, 0.0, "{}", m.method);
        }
    }

    #[test]
    fn spin_six() {
        let report = run_bench(&[12], 10, DEFAULT_SEED).unwrap();
        let entry = &report.entries[0];
        assert_eq!(entry.methods.len(), 2);
        for m in &entry.methods {
            assert!(m.max_deviation <= 1e-9 * 13.0, "{} {}", m.method, m.max_deviation);
        }
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
