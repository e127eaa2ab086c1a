//! Cross-checks against constructions that share no code with the library.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinpoly::central_factorials::{arcsin_power_series, cfn};
use spinpoly::coefficients::{all_coefficients, closed_form_sine_coefficient};
use spinpoly::exact::{int, ratio, to_f64, Rational};
use spinpoly::rotation::{max_abs_diff, rotation_expm, rotation_polynomial, rotation_reference};
use spinpoly::spin_algebra::{exact_s_diagonal, power_reduction_coefficients, Axis};
use spinpoly::vandermonde::cfn_from_vandermonde;
use spinpoly::{CMatrix, Complex64, HalfInteger};

fn sj(two_j: u32) -> HalfInteger {
    HalfInteger::from_two_j(two_j)
}

/// Rows of t(m, n) from `P_m = P_{m−2} · (x² − ((m−2)/2)²)`.
fn cfn_by_recurrence(max_m: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = vec![vec![int(1)], vec![int(0), int(1)]];
    for m in 2..=max_m {
        let prev = &rows[m - 2];
        let shift = ratio((m as i64 - 2) * (m as i64 - 2), 4);
        let mut row = vec![Rational::zero(); m + 1];
        for (n, c) in prev.iter().enumerate() {
            row[n + 2] += c;
            row[n] -= c * &shift;
        }
        rows.push(row);
    }
    rows
}

#[test]
fn central_factorials_match_recurrence() {
    let rows = cfn_by_recurrence(40);
    for (m, row) in rows.iter().enumerate() {
        for (n, c) in row.iter().enumerate() {
            assert_eq!(cfn(m as u32, n as u32), *c, "m={m} n={n}");
        }
    }
}

#[test]
fn arcsin_square_series_matches_float_taylor() {
    // arcsin²(x) has coefficient 2^{2i−1} ((i−1)!)² / (2i)! at x^{2i}.
    let s = arcsin_power_series(2, 16);
    for i in 1..=8u32 {
        let mut f = 1.0f64;
        for q in 1..i {
            f *= q as f64;
        }
        let mut g = 1.0f64;
        for q in 1..=2 * i {
            g *= q as f64;
        }
        let expect = 2f64.powi(2 * i as i32 - 1) * f * f / g;
        assert!(
            (to_f64(&s.coeff(2 * i)) - expect).abs() < 1e-14 * expect.max(1.0),
            "i={i}"
        );
    }
}

/// `A_k(θ) = k! (−i)^k [V⁻¹ e]_k` with `V` inverted in floating point.
fn coefficients_by_float_solve(two_j: u32, theta: f64) -> Vec<f64> {
    let n = two_j as usize + 1;
    let nodes: Vec<f64> = (0..n).map(|r| f64::from(two_j) - 2.0 * r as f64).collect();
    let v = DMatrix::from_fn(n, n, |r, c| Complex64::new(nodes[r].powi(c as i32), 0.0));
    let rhs = DVector::from_fn(n, |r, _| Complex64::from_polar(1.0, theta * nodes[r] / 2.0));
    let w = v.lu().solve(&rhs).expect("distinct nodes");
    let mut fact = 1.0;
    (0..n)
        .map(|k| {
            if k > 0 {
                fact *= k as f64;
            }
            let phase = Complex64::new(0.0, -1.0).powu(k as u32);
            let value = w[k] * phase * fact;
            assert!(value.im.abs() < 1e-8, "imaginary part {} at k={k}", value.im);
            value.re
        })
        .collect()
}

#[test]
fn coefficients_match_float_interpolation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for two_j in 0..=8 {
        let polys = all_coefficients(sj(two_j));
        for _ in 0..5 {
            let theta = rng.gen_range(-2.0 * PI..2.0 * PI);
            let oracle = coefficients_by_float_solve(two_j, theta);
            for (a, o) in polys.iter().zip(&oracle) {
                assert!(
                    (a.evaluate(theta) - o).abs() < 1e-8,
                    "two_j={two_j} k={} θ={theta}",
                    a.k
                );
            }
        }
    }
}

#[test]
fn power_reduction_matches_characteristic_polynomial() {
    for two_j in 0..=24 {
        let mut poly = vec![Rational::one()];
        for root in exact_s_diagonal(sj(two_j)) {
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &root;
            }
            poly = next;
        }
        let expect: Vec<Rational> = poly[..poly.len() - 1].iter().map(|c| -c.clone()).collect();
        assert_eq!(power_reduction_coefficients(sj(two_j)), expect, "two_j={two_j}");
    }
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

/// `⟨j m'| exp(−iβ J_y) |j m⟩` by the explicit factorial sum.
fn wigner_small_d(two_j: i64, two_mp: i64, two_m: i64, beta: f64) -> f64 {
    let (jp, jm, mp_, m_) = (
        (two_j + two_mp) / 2,
        (two_j - two_mp) / 2,
        (two_j + two_m) / 2,
        (two_j - two_m) / 2,
    );
    let pref = (factorial(jp) * factorial(jm) * factorial(mp_) * factorial(m_)).sqrt();
    let dm = (two_mp - two_m) / 2;
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let mut sum = 0.0;
    for k in 0..=two_j {
        let a = mp_ - k;
        let b = jm - k;
        let d = dm + k;
        if a < 0 || b < 0 || d < 0 {
            continue;
        }
        let sign = if (dm + k) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * c.powi((two_j - 2 * k - dm) as i32) * s.powi((dm + 2 * k) as i32)
            / (factorial(a) * factorial(k) * factorial(d) * factorial(b));
    }
    pref * sum
}

#[test]
fn rotation_about_y_matches_wigner_formula() {
    let y = Axis::Y;
    for two_j in 0..=10u32 {
        for &theta in &[0.3, -1.7, 2.9, 5.5, -11.0] {
            let r = rotation_polynomial(sj(two_j), &y, theta).unwrap().matrix;
            let n = two_j as usize + 1;
            // exp(+iθJ_y) = d(−θ); row r carries 2m = 2j − 2r.
            let oracle = CMatrix::from_fn(n, n, |row, col| {
                let two_mp = i64::from(two_j) - 2 * row as i64;
                let two_m = i64::from(two_j) - 2 * col as i64;
                Complex64::new(wigner_small_d(i64::from(two_j), two_mp, two_m, -theta), 0.0)
            });
            assert!(max_abs_diff(&r, &oracle) < 1e-11, "two_j={two_j} θ={theta}");
        }
    }
}

#[test]
fn three_references_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for two_j in [1u32, 5, 12, 20] {
        for _ in 0..4 {
            let axis = Axis::random(&mut rng);
            let theta = rng.gen_range(-4.0 * PI..4.0 * PI);
            let a = rotation_polynomial(sj(two_j), &axis, theta).unwrap().matrix;
            let b = rotation_reference(sj(two_j), &axis, theta).unwrap().matrix;
            let c = rotation_expm(sj(two_j), &axis, theta).unwrap().matrix;
            let tol = 1e-9 * f64::from(two_j + 1);
            assert!(max_abs_diff(&a, &b) < tol && max_abs_diff(&a, &c) < tol && max_abs_diff(&b, &c) < tol);
        }
    }
}

#[test]
fn inverse_route_matches_central_factorials_by_recurrence() {
    let rows = cfn_by_recurrence(16);
    for two_j in (2..=12).step_by(2) {
        let j = two_j / 2;
        for n in 1..=j {
            for l in 1..=n {
                assert_eq!(
                    cfn_from_vandermonde(sj(two_j), n, l).unwrap(),
                    rows[2 * n as usize][2 * l as usize]
                );
            }
        }
    }
}

#[test]
fn closed_form_matches_float_taylor_of_powers() {
    // A_k tends to (θ/2)^k = arcsin^k(s); expand arcsin^k(s)/k! numerically
    // by repeated multiplication of the arcsin Taylor series.
    let order = 12usize;
    let mut arcsin = vec![0.0; order + 1];
    let mut c = 1.0;
    for i in 0..=order / 2 {
        if 2 * i < order {
            arcsin[2 * i + 1] = c / (2 * i + 1) as f64;
        }
        c *= (2 * i + 1) as f64 / (2 * i + 2) as f64;
    }
    let mut power = vec![0.0; order + 1];
    power[0] = 1.0;
    for k in 0..=order {
        if k > 0 {
            let mut next = vec![0.0; order + 1];
            for (i, a) in power.iter().enumerate() {
                for (l, b) in arcsin.iter().enumerate() {
                    if i + l <= order {
                        next[i + l] += a * b;
                    }
                }
            }
            power = next.iter().map(|x| x / k as f64).collect();
        }
        if k % 2 == 0 {
            for n in 0..=order / 2 {
                let expect = power[2 * n] * factorial(k as i64);
                let got = to_f64(&closed_form_sine_coefficient(k as u32, n as u32));
                assert!((got - expect).abs() < 1e-9 * expect.abs().max(1.0), "k={k} n={n}");
            }
        }
    }
}
