//! The Vandermonde matrix on the doubled spin spectrum `{2j, 2j−2, ..., −2j}`,
//! its exact inverse, the trace-dual diagonal matrices `T_n`, the metric
//! `G = (V⁻¹)ᵀ V⁻¹`, and the all-ones / projector pair `B`, `P`.
//!
//! Rows and columns are numbered `1 ..= 2j+1` at every public accessor that
//! takes an index; storage underneath is zero-based.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{binomial, factorial, int, pow2, Rational, RationalJson, RationalMatrix};
use crate::spin_algebra::exact_s_diagonal;
use crate::{Error, HalfInteger, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeData {
    pub spin: HalfInteger,
    /// `V_{r,c} = λ_r^{c−1}` with `λ_r = 2j − 2(r−1)`.
    pub v: RationalMatrix,
    pub v_inv: RationalMatrix,
    /// Diagonals of `T_0, ..., T_{2j}`; `(T_{n−1})_{kk} = (V⁻¹)_{n,k}`.
    pub t: Vec<Vec<Rational>>,
    pub g: RationalMatrix,
}

/// `B` (all ones) and `P` (single one in slot (1,1)).
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorPair {
    pub b: RationalMatrix,
    pub p: RationalMatrix,
}

impl ProjectorPair {
    pub fn new(dim: usize) -> Self {
        ProjectorPair {
            b: RationalMatrix::from_fn(dim, dim, |_, _| int(1)),
            p: RationalMatrix::from_fn(dim, dim, |r, c| if r == 0 && c == 0 { int(1) } else { int(0) }),
        }
    }
}

/// Expands `Π_i (x − r_i)`, lowest power first.
fn poly_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut poly = vec![Rational::one()];
    for r in roots {
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        poly = next;
    }
    poly
}

/// `poly / (x − root)` for an exact root, by synthetic division.
fn deflate(poly: &[Rational], root: &Rational) -> Vec<Rational> {
    let deg = poly.len() - 1;
    let mut out = vec![Rational::zero(); deg];
    let mut carry = Rational::zero();
    for i in (1..=deg).rev() {
        carry = &poly[i] + carry * root;
        out[i - 1] = carry.clone();
    }
    out
}

impl VandermondeData {
    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    /// Nodes `λ_r = 2j − 2(r−1)`, `r = 1 ..= 2j+1`.
    pub fn nodes(&self) -> Vec<Rational> {
        exact_s_diagonal(self.spin)
    }

    fn check(&self, r: usize, c: usize) {
        let n = self.dim();
        assert!(
            (1..=n).contains(&r) && (1..=n).contains(&c),
            "index ({r}, {c}) outside 1..={n}"
        );
    }

    /// `V_{r,c}`, 1-based.
    pub fn v_at(&self, r: usize, c: usize) -> &Rational {
        self.check(r, c);
        &self.v[(r - 1, c - 1)]
    }

    /// `(V⁻¹)_{r,c}`, 1-based.
    pub fn v_inv_at(&self, r: usize, c: usize) -> &Rational {
        self.check(r, c);
        &self.v_inv[(r - 1, c - 1)]
    }

    /// `G_{k,l}`, 1-based.
    pub fn g_at(&self, k: usize, l: usize) -> &Rational {
        self.check(k, l);
        &self.g[(k - 1, l - 1)]
    }

    /// `S^m` as a full diagonal matrix, `S = 2J_z`.
    pub fn s_power(&self, m: u32) -> RationalMatrix {
        let diag: Vec<Rational> = self
            .nodes()
            .iter()
            .map(|x| num_traits::pow(x.clone(), m as usize))
            .collect();
        RationalMatrix::diagonal(&diag)
    }

    pub fn inverse_holds(&self) -> bool {
        (&self.v * &self.v_inv).is_identity() && (&self.v_inv * &self.v).is_identity()
    }

    /// Row sums of `V⁻¹` are `δ_{r,1}`.
    pub fn row_sums_hold(&self) -> bool {
        (0..self.dim()).all(|r| {
            let s: Rational = self.v_inv.row(r).iter().sum();
            if r == 0 {
                s.is_one()
            } else {
                s.is_zero()
            }
        })
    }

    /// Odd rows (1-based) of `V⁻¹` are mirror-symmetric, even rows antisymmetric.
    pub fn row_symmetry_holds(&self) -> bool {
        let n = self.dim();
        (0..n).all(|r| {
            let row = self.v_inv.row(r);
            // 1-based row r+1 is odd when r is even.
            let symmetric = r % 2 == 0;
            (0..n).all(|c| {
                let mirror = &row[n - 1 - c];
                if symmetric {
                    row[c] == *mirror
                } else {
                    row[c] == -mirror.clone()
                }
            })
        })
    }

    /// `Trace(T_n S^m) = δ_{n,m}`.
    pub fn dual_orthonormality_holds(&self) -> bool {
        let nodes = self.nodes();
        let top = self.spin.two_j();
        (0..=top).all(|n| {
            (0..=top).all(|m| {
                let tr: Rational = self.t[n as usize]
                    .iter()
                    .zip(&nodes)
                    .map(|(t, x)| t * num_traits::pow(x.clone(), m as usize))
                    .sum();
                tr == if n == m { Rational::one() } else { Rational::zero() }
            })
        })
    }

    /// `Σ_{k,l} (S^m)_{kk} G_{kl} (S^n)_{ll} = δ_{m,n}`.
    pub fn metric_orthonormality_holds(&self) -> bool {
        let top = self.spin.two_j();
        let nodes = self.nodes();
        let powers: Vec<Vec<Rational>> = (0..=top)
            .map(|m| nodes.iter().map(|x| num_traits::pow(x.clone(), m as usize)).collect())
            .collect();
        let n = self.dim();
        (0..=top as usize).all(|a| {
            (0..=top as usize).all(|b| {
                let mut acc = Rational::zero();
                for k in 0..n {
                    for l in 0..n {
                        acc += &powers[a][k] * &self.g[(k, l)] * &powers[b][l];
                    }
                }
                acc == if a == b { Rational::one() } else { Rational::zero() }
            })
        })
    }

    /// `B = V P Vᵀ`, `P = V⁻¹ B V⁻ᵀ`, `P² = P`, `rank B = 1`.
    pub fn projector_identities_hold(&self) -> bool {
        let ProjectorPair { b, p } = ProjectorPair::new(self.dim());
        let b_from_p = &(&self.v * &p) * &self.v.transpose();
        let p_from_b = &(&self.v_inv * &b) * &self.v_inv.transpose();
        b_from_p == b && p_from_b == p && &p * &p == p && b.rank() == 1
    }

    /// `Trace(B S^m G S^n) = δ_{m,n}` and
    /// `Trace[(V⁻¹ S^n V) P (V⁻¹ S^m V)ᵀ] = δ_{m,n}` for all `m, n ≤ 2j`.
    pub fn trace_identities_hold(&self) -> bool {
        let dim = self.dim();
        let top = self.spin.two_j();
        let ProjectorPair { b, p } = ProjectorPair::new(dim);
        let s_pows: Vec<RationalMatrix> = (0..=top).map(|m| self.s_power(m)).collect();
        let delta = |a: usize, c: usize| if a == c { Rational::one() } else { Rational::zero() };

        let left: Vec<RationalMatrix> = s_pows.iter().map(|s| &b * s).collect();
        let right: Vec<RationalMatrix> = s_pows.iter().map(|s| &self.g * s).collect();
        let metric_form =
            (0..left.len()).all(|m| (0..right.len()).all(|n| left[m].trace_of_product(&right[n]) == delta(m, n)));
        if !metric_form {
            return false;
        }

        let conjugated: Vec<RationalMatrix> = s_pows.iter().map(|s| &(&self.v_inv * s) * &self.v).collect();
        let with_projector: Vec<RationalMatrix> = conjugated.iter().map(|c| c * &p).collect();
        let transposed: Vec<RationalMatrix> = conjugated.iter().map(|c| c.transpose()).collect();
        (0..conjugated.len())
            .all(|n| (0..conjugated.len()).all(|m| with_projector[n].trace_of_product(&transposed[m]) == delta(m, n)))
    }

    pub fn to_json(&self) -> VandermondeJson {
        VandermondeJson {
            two_j: self.spin.two_j(),
            v: self.v.to_json(),
            v_inv: self.v_inv.to_json(),
            t: self
                .t
                .iter()
                .map(|d| d.iter().map(RationalJson::from).collect())
                .collect(),
            g: self.g.to_json(),
        }
    }
}

/// Wire form of [`VandermondeData`]; every entry is an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VandermondeJson {
    pub two_j: u32,
    pub v: Vec<Vec<RationalJson>>,
    pub v_inv: Vec<Vec<RationalJson>>,
    /// Diagonals of `T_0 ... T_{2j}`.
    pub t: Vec<Vec<RationalJson>>,
    pub g: Vec<Vec<RationalJson>>,
}

/// Builds `V`, inverts it through Lagrange basis polynomials on the distinct
/// integer nodes, and derives `T_n` and `G`.
///
/// Column `c` of `V⁻¹` holds the monomial coefficients of
/// `L_c(x) = Π_{i≠c} (x − λ_i)/(λ_c − λ_i)`, since `Σ_r λ_a^{r−1} [x^{r−1}] L_c = L_c(λ_a) = δ_{a,c}`.
pub fn build_vandermonde(spin: HalfInteger) -> VandermondeData {
    let nodes = exact_s_diagonal(spin);
    let n = nodes.len();
    let v = RationalMatrix::from_fn(n, n, |r, c| num_traits::pow(nodes[r].clone(), c));

    let full = poly_from_roots(&nodes);
    let mut v_inv = RationalMatrix::zeros(n, n);
    for (c, node) in nodes.iter().enumerate() {
        let numerator = deflate(&full, node);
        let denominator: Rational = nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != c)
            .map(|(_, other)| node - other)
            .product();
        for (r, coeff) in numerator.iter().enumerate() {
            v_inv[(r, c)] = coeff / &denominator;
        }
    }

    let t = (0..n).map(|r| v_inv.row(r).to_vec()).collect();
    let g = &v_inv.transpose() * &v_inv;
    VandermondeData { spin, v, v_inv, t, g }
}

/// Diagonals of the trace duals `T_0, ..., T_{2j}` of `S = 2J_z`.
pub fn dual_matrices(spin: HalfInteger) -> Vec<Vec<Rational>> {
    build_vandermonde(spin).t
}

/// `G = (V⁻¹)ᵀ V⁻¹`.
pub fn metric(spin: HalfInteger) -> RationalMatrix {
    build_vandermonde(spin).g
}

pub fn verify_trace_identities(spin: HalfInteger) -> bool {
    build_vandermonde(spin).trace_identities_hold()
}

/// `t(2n, 2l) = (2n)! 2^{2l} Σ_{m=1}^{j+1−n} (V⁻¹)_{2l+1,m} ((j+1−m)/n) C(j+n−m, 2n−1)`
/// for integer `j`, `1 ≤ l ≤ n ≤ j`.
pub fn cfn_from_vandermonde(spin: HalfInteger, n: u32, l: u32) -> Result<Rational> {
    let data = build_vandermonde(spin);
    cfn_from_vandermonde_with(&data, n, l)
}

pub fn cfn_from_vandermonde_with(data: &VandermondeData, n: u32, l: u32) -> Result<Rational> {
    let spin = data.spin;
    if !spin.is_integer() {
        return Err(Error::Domain(format!("needs integer spin, got j = {spin}")));
    }
    let j = spin.floor();
    if l == 0 || l > n || n > j {
        return Err(Error::Domain(format!(
            "need 1 ≤ l ≤ n ≤ j, got l = {l}, n = {n}, j = {j}"
        )));
    }
    let mut acc = Rational::zero();
    for m in 1..=(j + 1 - n) {
        let weight = Rational::new(
            BigInt::from(j + 1 - m) * binomial(j + n - m, 2 * n - 1),
            BigInt::from(n),
        );
        acc += data.v_inv_at(2 * l as usize + 1, m as usize) * weight;
    }
    Ok(acc * Rational::from_integer(factorial(2 * n)) * pow2(2 * i64::from(l)))
}

/// `Π_{k=0}^{n−1} ((j+1−m)² − k²)` by direct multiplication.
pub fn central_product(j: u32, n: u32, m: u32) -> BigInt {
    let x = i64::from(j) + 1 - i64::from(m);
    (0..i64::from(n)).map(|k| BigInt::from(x * x - k * k)).product()
}

/// Factorial-ratio form of [`central_product`], piecewise in `m ∈ 1..=2j+1`.
pub fn central_product_piecewise(j: u32, n: u32, m: u32) -> BigInt {
    let (j, n, m) = (i64::from(j), i64::from(n), i64::from(m));
    let fact = |v: i64| factorial(u32::try_from(v).expect("non-negative factorial argument"));
    if m <= j + 1 - n {
        BigInt::from(j + 1 - m) * fact(j + n - m) / fact(j + 1 - n - m)
    } else if m <= j + n {
        BigInt::zero()
    } else {
        BigInt::from(m - 1 - j) * fact(m + n - j - 2) / fact(m - n - j - 1)
    }
}

/// Hand-tabulated `V⁻¹`, `T_n` and `G` for `2j ∈ {1, 2, 3, 4}`, used as
/// literal golden data.
pub mod tabulated {
    use super::*;

    fn scaled(den: i64, rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_scaled_rows(den, rows)
    }

    fn diag(den: i64, entries: &[i64]) -> Vec<Rational> {
        entries.iter().map(|&e| crate::exact::ratio(e, den)).collect()
    }

    pub fn inverse(two_j: u32) -> Option<RationalMatrix> {
        Some(match two_j {
            1 => scaled(2, &[&[1, 1], &[1, -1]]),
            2 => scaled(8, &[&[0, 8, 0], &[2, 0, -2], &[1, -2, 1]]),
            3 => scaled(
                48,
                &[&[-3, 27, 27, -3], &[-1, 27, -27, 1], &[3, -3, -3, 3], &[1, -3, 3, -1]],
            ),
            4 => scaled(
                384,
                &[
                    &[0, 0, 384, 0, 0],
                    &[-16, 128, 0, -128, 16],
                    &[-4, 64, -120, 64, -4],
                    &[4, -8, 0, 8, -4],
                    &[1, -4, 6, -4, 1],
                ],
            ),
            _ => return None,
        })
    }

    pub fn duals(two_j: u32) -> Option<Vec<Vec<Rational>>> {
        Some(match two_j {
            1 => vec![diag(2, &[1, 1]), diag(2, &[1, -1])],
            2 => vec![diag(1, &[0, 1, 0]), diag(4, &[1, 0, -1]), diag(8, &[1, -2, 1])],
            3 => vec![
                diag(16, &[-1, 9, 9, -1]),
                diag(48, &[-1, 27, -27, 1]),
                diag(16, &[1, -1, -1, 1]),
                diag(48, &[1, -3, 3, -1]),
            ],
            4 => vec![
                diag(1, &[0, 0, 1, 0, 0]),
                diag(24, &[-1, 8, 0, -8, 1]),
                diag(96, &[-1, 16, -30, 16, -1]),
                diag(96, &[1, -2, 0, 2, -1]),
                diag(384, &[1, -4, 6, -4, 1]),
            ],
            _ => return None,
        })
    }

    pub fn metric(two_j: u32) -> Option<RationalMatrix> {
        Some(match two_j {
            1 => scaled(2, &[&[1, 0], &[0, 1]]),
            2 => scaled(64, &[&[5, -2, -3], &[-2, 68, -2], &[-3, -2, 5]]),
            3 => scaled(
                48 * 48,
                &[
                    &[20, -120, -60, 16],
                    &[-120, 1476, 0, -60],
                    &[-60, 0, 1476, -120],
                    &[16, -60, -120, 20],
                ],
            ),
            4 => scaled(
                384 * 384,
                &[
                    &[289, -2340, 486, 1820, -255],
                    &[-2340, 20560, -7704, -12336, 1820],
                    &[486, -7704, 161892, -7704, 486],
                    &[1820, -12336, -7704, 20560, -2340],
                    &[-255, 1820, 486, -2340, 289],
                ],
            ),
            _ => return None,
        })
    }

    /// Whether the computed data reproduces every tabulated entry; `None`
    /// when nothing is tabulated for this spin.
    pub fn matches(data: &VandermondeData) -> Option<bool> {
        let two_j = data.spin.two_j();
        Some(inverse(two_j)? == data.v_inv && duals(two_j)? == data.t && metric(two_j)? == data.g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::central_factorials::cfn;
    use crate::exact::ratio;

    fn sj(two_j: u32) -> HalfInteger {
        HalfInteger::from_two_j(two_j)
    }

    #[test]
    fn small_inverses_match_tables() {
        for two_j in 1..=4 {
            let data = build_vandermonde(sj(two_j));
            assert_eq!(tabulated::matches(&data), Some(true), "two_j={two_j}");
        }
        assert_eq!(tabulated::matches(&build_vandermonde(sj(5))), None);
    }

    #[test]
    fn named_duals() {
        assert_eq!(dual_matrices(sj(2))[1], vec![ratio(1, 4), int(0), ratio(-1, 4)]);
        assert_eq!(
            dual_matrices(sj(4))[4],
            [1, -4, 6, -4, 1].iter().map(|&e| ratio(e, 384)).collect::<Vec<_>>()
        );
        assert_eq!(
            dual_matrices(sj(3))[0],
            [-1, 9, 9, -1].iter().map(|&e| ratio(e, 16)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn named_metrics() {
        assert_eq!(metric(sj(2)), tabulated::metric(2).unwrap());
        assert_eq!(metric(sj(1)), RationalMatrix::from_scaled_rows(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(metric(sj(3))[(1, 1)], ratio(1476, 2304));
    }

    #[test]
    fn one_based_accessors() {
        let data = build_vandermonde(sj(4));
        assert_eq!(*data.v_at(1, 2), int(4));
        assert_eq!(*data.v_at(5, 3), int(16));
        assert_eq!(*data.v_inv_at(3, 1), ratio(-4, 384));
        assert_eq!(*data.g_at(3, 3), ratio(161892, 384 * 384));
    }

    #[test]
    #[should_panic]
    fn zero_index_is_rejected() {
        let data = build_vandermonde(sj(2));
        let _ = data.v_at(0, 1);
    }

    #[test]
    fn structural_facts_small() {
        for two_j in 0..=10 {
            let data = build_vandermonde(sj(two_j));
            assert!(data.inverse_holds(), "two_j={two_j}");
            assert!(data.row_sums_hold(), "two_j={two_j}");
            assert!(data.row_symmetry_holds(), "two_j={two_j}");
            assert!(data.g.is_symmetric());
            assert!(data.dual_orthonormality_holds());
            assert!(data.metric_orthonormality_holds());
            assert!(data.projector_identities_hold());
        }
    }

    #[test]
    fn trace_identities_and_fault_detection() {
        assert!(verify_trace_identities(sj(2)));
        assert!(verify_trace_identities(sj(3)));
        let data = build_vandermonde(sj(2));
        // Trace(T_1 S) over diag(2, 0, −2).
        let tr: Rational = data.t[1].iter().zip(data.nodes()).map(|(t, x)| t * x).sum();
        assert_eq!(tr, int(1));

        let ProjectorPair { b, .. } = ProjectorPair::new(4);
        let ones = RationalMatrix::from_fn(4, 1, |_, _| int(1));
        assert_eq!(&b * &ones, RationalMatrix::from_fn(4, 1, |_, _| int(4)));

        let mut bad = build_vandermonde(sj(1));
        bad.v_inv[(1, 1)] = int(7);
        assert!(!bad.trace_identities_hold());
    }

    #[test]
    fn cfn_from_inverse_examples() {
        assert_eq!(cfn_from_vandermonde(sj(4), 2, 1).unwrap(), int(-1));
        assert_eq!(cfn_from_vandermonde(sj(4), 1, 1).unwrap(), int(1));
        assert_eq!(cfn_from_vandermonde(sj(6), 3, 2).unwrap(), int(-5));
        assert_eq!(cfn(6, 4), int(-5));
        assert!(cfn_from_vandermonde(sj(3), 1, 1).is_err());
        assert!(cfn_from_vandermonde(sj(4), 1, 2).is_err());
        assert!(cfn_from_vandermonde(sj(4), 3, 1).is_err());
        assert!(cfn_from_vandermonde(sj(4), 1, 0).is_err());
    }

    #[test]
    fn piecewise_product() {
        for j in 1..=8 {
            for n in 1..=j {
                for m in 1..=2 * j + 1 {
                    assert_eq!(
                        central_product(j, n, m),
                        central_product_piecewise(j, n, m),
                        "j={j} n={n} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(build_vandermonde(sj(1)).to_json()).unwrap();
        assert_eq!(json["v_inv"][1][1]["num"], "-1");
        assert_eq!(json["v_inv"][1][1]["den"], "2");
        assert_eq!(json["t"].as_array().unwrap().len(), 2);
    }
}
