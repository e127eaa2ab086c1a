//! Named verification suites that sweep every identity up to a maximum spin
//! and summarize the outcome as a serializable report.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::biorthogonal::{
    dual_truncation_series, duals, quadrature_deviation, verify_biorthonormality, verify_fourier_extraction,
    verify_odd_extraction,
};
use crate::central_factorials::{cfn, cfn_table, verify_cfn_recurrence};
use crate::coefficients::{
    all_coefficients, coefficient_cfn_route, coefficient_truncation_route, verify_second_order_ode,
};
use crate::exact::int;
use crate::rotation::{max_abs_diff, rotation_reference, RotationPolynomial};
use crate::spin_algebra::{axis_dot_j, power_reduction_deviation, verify_power_reduction_exact, Axis};
use crate::vandermonde::{
    build_vandermonde, central_product, central_product_piecewise, cfn_from_vandermonde_with, tabulated,
};
use crate::{CMatrix, Error, HalfInteger};

pub const ROTATION_SAMPLES: usize = 25;
pub const POWER_REDUCTION_AXES: usize = 5;
pub const POWER_REDUCTION_FLOAT_MAX_TWO_J: u32 = 10;
pub const QUADRATURE_MAX_TWO_J: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Cfn,
    LemmaB,
    LemmaC,
    Ode,
    Duals,
    Biortho,
    Rotation,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 7] = [
        Suite::Cfn,
        Suite::LemmaB,
        Suite::LemmaC,
        Suite::Ode,
        Suite::Duals,
        Suite::Biortho,
        Suite::Rotation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cfn => "cfn",
            Suite::LemmaB => "lemmaB",
            Suite::LemmaC => "lemmaC",
            Suite::Ode => "ode",
            Suite::Duals => "duals",
            Suite::Biortho => "biortho",
            Suite::Rotation => "rotation",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidRequest(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn exact(name: impl Into<String>, passed: bool) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            deviation: None,
            tolerance: None,
            detail: None,
        }
    }

    fn numeric(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.into(),
            passed: deviation <= tolerance,
            deviation: Some(deviation),
            tolerance: Some(tolerance),
            detail: None,
        }
    }

    fn error(name: impl Into<String>, err: &Error) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            deviation: None,
            tolerance: None,
            detail: Some(err.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub max_two_j: u32,
    pub passed: bool,
    pub total: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    fn from_checks(suite: Suite, max_two_j: u32, checks: Vec<CheckResult>) -> Self {
        let failures = checks.iter().filter(|c| !c.passed).count();
        let max_deviation = checks.iter().filter_map(|c| c.deviation).reduce(f64::max);
        VerifyReport {
            suite: suite.name().to_string(),
            max_two_j,
            passed: failures == 0,
            total: checks.len(),
            failures,
            max_deviation,
            checks,
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs one suite (or all) for every spin up to `max_two_j`. Work items run
/// in parallel; the check order in the report is fixed.
pub fn run_verify(suite: Suite, max_two_j: u32) -> VerifyReport {
    let checks = match suite {
        Suite::All => Suite::INDIVIDUAL
            .iter()
            .flat_map(|&s| suite_checks(s, max_two_j))
            .collect(),
        single => suite_checks(single, max_two_j),
    };
    VerifyReport::from_checks(suite, max_two_j, checks)
}

fn per_spin(spins: Vec<u32>, f: impl Fn(HalfInteger) -> Vec<CheckResult> + Sync + Send) -> Vec<CheckResult> {
    spins
        .into_par_iter()
        .map(|two_j| f(HalfInteger::from_two_j(two_j)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn suite_checks(suite: Suite, max_two_j: u32) -> Vec<CheckResult> {
    let all: Vec<u32> = (0..=max_two_j).collect();
    let even: Vec<u32> = (2..=max_two_j).step_by(2).collect();
    match suite {
        Suite::Cfn => cfn_checks(max_two_j),
        Suite::LemmaB => per_spin(all, power_reduction_checks),
        Suite::LemmaC => {
            let mut checks = per_spin(even, inverse_cfn_checks);
            checks.extend(product_checks(max_two_j / 2));
            checks
        }
        Suite::Ode => per_spin(even, ode_checks),
        Suite::Duals => per_spin(all, duals_checks),
        Suite::Biortho => per_spin(all, biortho_checks),
        Suite::Rotation => per_spin(all, rotation_checks),
        Suite::All => unreachable!("expanded by run_verify"),
    }
}

fn cfn_checks(max_two_j: u32) -> Vec<CheckResult> {
    let top = max_two_j.max(2);
    let table = cfn_table(top);
    let mut checks = vec![
        CheckResult::exact(format!("cfn recurrence m<={top}"), verify_cfn_recurrence(top)),
        CheckResult::exact(format!("cfn structure m<={top}"), table.satisfies_structure()),
        CheckResult::exact(
            format!("cfn table matches products m<={top}"),
            (0..=top).all(|m| (0..=m).all(|n| table.get(m, n) == cfn(m, n))),
        ),
    ];
    checks.extend(per_spin((0..=max_two_j).collect(), |spin| {
        let agree =
            (0..=spin.two_j()).all(
                |k| match (coefficient_cfn_route(spin, k), coefficient_truncation_route(spin, k)) {
                    (Ok(a), Ok(b)) => a == b,
                    (Err(Error::Parity { .. }), Ok(_)) => true,
                    _ => false,
                },
            );
        vec![CheckResult::exact(format!("routes two_j={}", spin.two_j()), agree)]
    }));
    checks
}

fn power_reduction_checks(spin: HalfInteger) -> Vec<CheckResult> {
    let two_j = spin.two_j();
    let mut checks = vec![CheckResult::exact(
        format!("power reduction exact two_j={two_j}"),
        verify_power_reduction_exact(spin),
    )];
    if two_j <= POWER_REDUCTION_FLOAT_MAX_TWO_J {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1e44_ab00 + u64::from(two_j));
        let name = format!("power reduction float two_j={two_j}");
        let deviation = (0..POWER_REDUCTION_AXES)
            .map(|_| power_reduction_deviation(spin, &Axis::random(&mut rng)))
            .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)));
        checks.push(match deviation {
            Ok(d) => CheckResult::numeric(name, d, 1e-9),
            Err(e) => CheckResult::error(name, &e),
        });
    }
    checks
}

fn inverse_cfn_checks(spin: HalfInteger) -> Vec<CheckResult> {
    let data = build_vandermonde(spin);
    let j = spin.floor();
    let ok =
        (1..=j).all(|n| (1..=n).all(|l| cfn_from_vandermonde_with(&data, n, l).is_ok_and(|v| v == cfn(2 * n, 2 * l))));
    vec![CheckResult::exact(
        format!("cfn from inverse two_j={}", spin.two_j()),
        ok,
    )]
}

fn product_checks(max_j: u32) -> Vec<CheckResult> {
    (1..=max_j)
        .map(|j| {
            let ok = (1..=j)
                .all(|n| (1..=2 * j + 1).all(|m| central_product(j, n, m) == central_product_piecewise(j, n, m)));
            CheckResult::exact(format!("central product j={j}"), ok)
        })
        .collect()
}

fn ode_checks(spin: HalfInteger) -> Vec<CheckResult> {
    let name = format!("ode two_j={}", spin.two_j());
    let result: Result<bool, Error> =
        (1..=spin.floor()).try_fold(true, |acc, k| Ok(acc && verify_second_order_ode(spin, k)?));
    vec![match result {
        Ok(ok) => CheckResult::exact(name, ok),
        Err(e) => CheckResult::error(name, &e),
    }]
}

fn duals_checks(spin: HalfInteger) -> Vec<CheckResult> {
    let two_j = spin.two_j();
    let data = build_vandermonde(spin);
    let mut checks = vec![
        CheckResult::exact(format!("inverse two_j={two_j}"), data.inverse_holds()),
        CheckResult::exact(
            format!("inverse rows two_j={two_j}"),
            data.row_sums_hold() && data.row_symmetry_holds(),
        ),
        CheckResult::exact(format!("metric symmetric two_j={two_j}"), data.g.is_symmetric()),
        CheckResult::exact(format!("dual traces two_j={two_j}"), data.dual_orthonormality_holds()),
        CheckResult::exact(
            format!("metric orthonormality two_j={two_j}"),
            data.metric_orthonormality_holds(),
        ),
        CheckResult::exact(format!("projector two_j={two_j}"), data.projector_identities_hold()),
        CheckResult::exact(format!("trace forms two_j={two_j}"), data.trace_identities_hold()),
    ];
    if let Some(matches) = tabulated::matches(&data) {
        checks.push(CheckResult::exact(format!("tabulated matrices two_j={two_j}"), matches));
    }
    if two_j > 0 {
        let extraction = if spin.is_integer() {
            verify_fourier_extraction(spin)
        } else {
            verify_odd_extraction(spin)
        };
        checks.push(CheckResult::exact(
            format!("fourier extraction two_j={two_j}"),
            extraction,
        ));
    }
    checks
}

fn biortho_checks(spin: HalfInteger) -> Vec<CheckResult> {
    let two_j = spin.two_j();
    let generating = duals(spin).iter().all(|g| {
        let cap = g.cap();
        let series = dual_truncation_series(g.n, cap - g.n);
        (g.n..=cap).all(|k| g.bracket_coefficient(k) == series[(k - g.n) as usize])
    });
    let mut checks = vec![
        CheckResult::exact(format!("biorthonormality two_j={two_j}"), verify_biorthonormality(spin)),
        CheckResult::exact(format!("generating functions two_j={two_j}"), generating),
    ];
    if two_j <= QUADRATURE_MAX_TWO_J {
        checks.push(CheckResult::numeric(
            format!("quadrature two_j={two_j}"),
            quadrature_deviation(spin),
            1e-8,
        ));
    }
    checks
}

fn rotation_checks(spin: HalfInteger) -> Vec<CheckResult> {
    let two_j = spin.two_j();
    let n = spin.dim();
    let tolerance = 1e-9 * n as f64;
    let poly = RotationPolynomial::new(spin);
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a7e_0000 + u64::from(two_j));

    let name = format!("rotation vs oracle two_j={two_j}");
    let mut deviation = 0.0f64;
    let mut period = 0.0f64;
    for _ in 0..ROTATION_SAMPLES {
        let axis = Axis::random(&mut rng);
        let theta = rng.gen_range(-4.0 * PI..=4.0 * PI);
        let generator = match axis_dot_j(spin, &axis) {
            Ok(g) => g.entries,
            Err(e) => return vec![CheckResult::error(name, &e)],
        };
        let reference = match rotation_reference(spin, &axis, theta) {
            Ok(r) => r.matrix,
            Err(e) => return vec![CheckResult::error(name, &e)],
        };
        deviation = deviation.max(max_abs_diff(&poly.evaluate(&generator, theta), &reference));
        period = period.max(max_abs_diff(
            &poly.evaluate(&generator, 4.0 * PI),
            &CMatrix::identity(n, n),
        ));
    }

    let coefficients = all_coefficients(spin);
    let sign = if spin.is_integer() { 1.0 } else { -1.0 };
    let endpoint = coefficients
        .iter()
        .map(|a| {
            let target = if a.k == 0 { sign } else { 0.0 };
            (a.evaluate(2.0 * PI) - target).abs()
        })
        .fold(0.0, f64::max);
    // At θ = 2π: s = 0, so A_0 = cos(π)^ε times its constant term.
    let a0 = &coefficients[0];
    let exact_endpoint = a0.sine_coefficient(0) == int(1) && u32::from(a0.epsilon) == two_j % 2;

    vec![
        CheckResult::numeric(name, deviation, tolerance),
        CheckResult::numeric(format!("full period R(4pi)=I two_j={two_j}"), period, 1e-9),
        CheckResult::numeric(format!("coefficients at 2pi two_j={two_j}"), endpoint, 1e-12),
        CheckResult::exact(format!("A_0(2pi) closed form two_j={two_j}"), exact_endpoint),
    ]
}
