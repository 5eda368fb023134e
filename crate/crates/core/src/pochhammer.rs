//! q-Pochhammer symbols `(a;q)_n`, `(a;q)_∞`, their multi-argument shorthand
//! and q-binomial coefficients.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};

/// A factor `1 - x` with `|1 - x|` at or below this (relative to `max(1, |x|)`)
/// is treated as an exact zero.
pub const ZERO_FACTOR_TOL: f64 = 64.0 * f64::EPSILON;

/// Subscript of a Pochhammer symbol: any integer, or the distinguished
/// infinite index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PochhammerIndex {
    Finite(i64),
    Infinity,
}

impl From<i64> for PochhammerIndex {
    fn from(n: i64) -> Self {
        PochhammerIndex::Finite(n)
    }
}

impl std::str::FromStr for PochhammerIndex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "INFINITY" | "∞" => Ok(PochhammerIndex::Infinity),
            t => t
                .parse::<i64>()
                .map(PochhammerIndex::Finite)
                .map_err(|e| format!("bad Pochhammer index {t:?}: {e}")),
        }
    }
}

#[inline]
pub(crate) fn is_zero_factor(factor: Complex64, x: Complex64) -> bool {
    factor.norm() <= ZERO_FACTOR_TOL * x.norm().max(1.0)
}

/// Finite q-Pochhammer symbol `(a;q)_n` for any integer `n`.
///
/// Negative indices follow `(a;q)_{-m} = 1/(a q^{-m};q)_m`; the reciprocal's
/// factors are formed as `1 - a/q^j` so that exact poles stay exact.
pub fn qpoch(a: Complex64, q: Complex64, n: i64) -> Result<Complex64> {
    if n >= 0 {
        let mut prod = Complex64::new(1.0, 0.0);
        let mut qk = Complex64::new(1.0, 0.0);
        for _ in 0..n {
            prod *= 1.0 - a * qk;
            qk *= q;
        }
        return Ok(prod);
    }
    if q == Complex64::new(0.0, 0.0) {
        return Err(QError::domain("(a;q)_n with n < 0 needs q != 0"));
    }
    let m = n.unsigned_abs();
    let mut denom = Complex64::new(1.0, 0.0);
    let mut qj = Complex64::new(1.0, 0.0);
    for j in 1..=m {
        qj *= q;
        let x = a / qj;
        let factor = 1.0 - x;
        if is_zero_factor(factor, x) {
            return Err(QError::pole(format!(
                "({a};{q})_{n}: factor 1 - a q^-{j} vanishes"
            )));
        }
        denom *= factor;
    }
    Ok(1.0 / denom)
}

/// Number of factors needed for `(a;q)_∞` under the tail bound
/// `|a| |q|^N / (1 - |q|) < eps_product`.
fn product_length(a: Complex64, ctx: &QContext) -> Result<usize> {
    let abs_a = a.norm();
    let abs_q = ctx.q().norm();
    let eps = ctx.eps_product();
    let scale = abs_a / (1.0 - abs_q);
    let mut bound = scale;
    let mut n = 0usize;
    while !(bound < eps) {
        if n >= ctx.max_product_terms() {
            return Err(QError::convergence(format!(
                "({a};q)_inf needs more than {} factors (|q| = {abs_q})",
                ctx.max_product_terms()
            )));
        }
        n += 1;
        bound *= abs_q;
    }
    Ok(n)
}

/// Infinite q-Pochhammer symbol `(a;q)_∞` with `q = ctx.q()`.
///
/// The product is truncated after the first `N` factors where
/// `|a| |q|^N / (1 - |q|) < eps_product`; the relative truncation error is
/// then at most twice that quantity.
pub fn qpoch_infinite(a: Complex64, ctx: &QContext) -> Result<Complex64> {
    let n = product_length(a, ctx)?;
    let q = ctx.q();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut aqk = a;
    for _ in 0..n {
        prod *= 1.0 - aqk;
        aqk *= q;
    }
    Ok(prod)
}

/// Index `k` of the first factor `1 - a q^k` of `(a;q)_∞` that vanishes, if any.
pub fn vanishing_factor(a: Complex64, q: Complex64) -> Option<usize> {
    let mut x = a;
    let mut k = 0;
    // |a q^k| decreases monotonically, so no zero factor once it drops below 1/2.
    while x.norm() >= 0.5 {
        if is_zero_factor(1.0 - x, x) {
            return Some(k);
        }
        x *= q;
        k += 1;
        if q.norm() == 0.0 {
            break;
        }
    }
    None
}

/// `(a_1, ..., a_k; q)_n`, the product of the individual symbols, with
/// `q = ctx.q()`.
pub fn qpoch_multi(args: &[Complex64], n: PochhammerIndex, ctx: &QContext) -> Result<Complex64> {
    if args.is_empty() {
        return Err(QError::domain("multi-argument Pochhammer symbol needs at least one argument"));
    }
    args.iter().try_fold(Complex64::new(1.0, 0.0), |acc, &a| {
        let v = match n {
            PochhammerIndex::Finite(n) => qpoch(a, ctx.q(), n)?,
            PochhammerIndex::Infinity => qpoch_infinite(a, ctx)?,
        };
        Ok(acc * v)
    })
}

/// `(num_1, ..., num_j; q)_∞ / (den_1, ..., den_k; q)_∞`, signalling a pole
/// when a denominator factor vanishes.
pub fn infinite_ratio(num: &[Complex64], den: &[Complex64], ctx: &QContext) -> Result<Complex64> {
    let mut value = Complex64::new(1.0, 0.0);
    for &d in den {
        if let Some(k) = vanishing_factor(d, ctx.q()) {
            return Err(QError::pole(format!("denominator ({d};q)_inf vanishes at factor k = {k}")));
        }
        value /= qpoch_infinite(d, ctx)?;
    }
    for &a in num {
        value *= qpoch_infinite(a, ctx)?;
    }
    Ok(value)
}

/// `b^k (a/b; q)_k` written as `prod_{j<k} (b - a q^j)`, which stays finite
/// at `b = 0`.
pub fn scaled_qpoch(b: Complex64, a: Complex64, q: Complex64, k: usize) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut aqj = a;
    for _ in 0..k {
        prod *= b - aqj;
        aqj *= q;
    }
    prod
}

/// Gaussian binomial coefficient `[n, k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k})`,
/// zero outside `0 <= k <= n`.
///
/// Evaluated as `prod_{j=1}^{k} (1 - q^{n-k+j}) / (1 - q^j)`; at `q = 1` the
/// ordinary binomial coefficient (the limit) is returned.
pub fn qbinom(n: u64, k: i64, q: Complex64) -> Complex64 {
    if k < 0 || k as u64 > n {
        return Complex64::new(0.0, 0.0);
    }
    let k = (k as u64).min(n - k as u64);
    let one = Complex64::new(1.0, 0.0);
    if q == one {
        let mut b = 1.0;
        for j in 1..=k {
            b = b * (n - k + j) as f64 / j as f64;
        }
        return Complex64::new(b, 0.0);
    }
    let mut value = one;
    for j in 1..=k {
        value *= (one - q.powu((n - k + j) as u32)) / (one - q.powu(j as u32));
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{c, cx};
    use proptest::prelude::*;

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn finite_examples() {
        assert_eq!(qpoch(c(0.7), c(0.3), 0).unwrap(), c(1.0));
        let v = qpoch(c(0.5), c(0.3), 2).unwrap();
        assert!((v - c(0.425)).norm() < 1e-15);
    }

    #[test]
    fn negative_index_pole() {
        let err = qpoch(c(0.3), c(0.3), -1).unwrap_err();
        assert!(matches!(err, QError::Pole(_)));
        // (q;q)_{-k} always contains the factor 1 - q^0.
        for k in 1..6 {
            assert!(matches!(qpoch(c(0.4), c(0.4), -k), Err(QError::Pole(_))));
        }
    }

    #[test]
    fn negative_index_needs_nonzero_q() {
        assert!(matches!(qpoch(c(0.5), c(0.0), -2), Err(QError::Domain(_))));
        assert_eq!(qpoch(c(0.5), c(0.0), 3).unwrap(), c(0.5));
    }

    #[test]
    fn negative_index_value() {
        // (a;q)_{-1} = 1/(1 - a/q)
        let v = qpoch(c(0.2), c(0.5), -1).unwrap();
        assert!((v - c(1.0 / (1.0 - 0.4))).norm() < 1e-15);
    }

    #[test]
    fn infinite_examples() {
        let cx_ = ctx(0.5);
        assert_eq!(qpoch_infinite(c(0.0), &cx_).unwrap(), c(1.0));
        assert_eq!(qpoch_infinite(c(1.0), &cx_).unwrap(), c(0.0));
        // 200-factor brute force
        let mut brute = 1.0;
        for k in 0..200 {
            brute *= 1.0 - 0.5 * 0.5f64.powi(k);
        }
        let v = qpoch_infinite(c(0.5), &cx_).unwrap();
        assert!((v.re - brute).abs() <= 1e-15 * brute.abs() * 4.0, "{v} vs {brute}");
    }

    #[test]
    fn infinite_cap_is_reported() {
        let settings = crate::ContextSettings { max_product_terms: 16, ..Default::default() };
        let ctx = QContext::with_settings(0.99, settings).unwrap();
        assert!(matches!(qpoch_infinite(c(0.5), &ctx), Err(QError::Convergence(_))));
    }

    #[test]
    fn multi_examples() {
        let cx_ = ctx(0.3);
        assert!(matches!(qpoch_multi(&[], PochhammerIndex::Finite(1), &cx_), Err(QError::Domain(_))));
        let single = qpoch_multi(&[c(0.4)], PochhammerIndex::Infinity, &cx_).unwrap();
        assert_eq!(single, qpoch_infinite(c(0.4), &cx_).unwrap());
        let v = qpoch_multi(&[c(0.2), c(0.4)], PochhammerIndex::Finite(1), &cx_).unwrap();
        assert!((v - c(0.48)).norm() < 1e-15);
    }

    #[test]
    fn qbinom_examples() {
        let q = c(0.3);
        assert_eq!(qbinom(5, 0, q), c(1.0));
        assert!((qbinom(2, 1, q) - (1.0 + q)).norm() < 1e-15);
        assert!((qbinom(4, 1, c(0.2)) - qbinom(4, 3, c(0.2))).norm() < 1e-15);
        assert_eq!(qbinom(4, -1, q), c(0.0));
        assert_eq!(qbinom(4, 5, q), c(0.0));
        assert_eq!(qbinom(6, 2, c(1.0)), c(15.0));
    }

    #[test]
    fn qbinom_pascal_recurrence() {
        for &q in &[c(0.3), c(-0.7), cx(0.2, 0.5)] {
            for n in 1..=30u64 {
                for k in 0..=n as i64 {
                    let lhs = qbinom(n, k, q);
                    let rhs = qbinom(n - 1, k - 1, q) + q.powi(k as i32) * qbinom(n - 1, k, q);
                    assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()), "n={n} k={k} q={q}");
                }
            }
        }
    }

    #[test]
    fn scaled_matches_definition() {
        let (b, a, q) = (cx(0.4, 0.1), c(0.7), c(0.3));
        for k in 0..8 {
            let direct = b.powi(k as i32) * qpoch(a / b, q, k as i64).unwrap();
            assert!((scaled_qpoch(b, a, q, k) - direct).norm() < 1e-14);
        }
        assert_eq!(scaled_qpoch(c(0.0), c(0.5), q, 2), c(0.5 * 0.15));
    }

    #[test]
    fn infinite_ratio_flags_pole() {
        let cx_ = ctx(0.5);
        // 4 * 0.5^2 = 1: third factor of (4;q)_inf vanishes
        assert!(matches!(infinite_ratio(&[c(0.1)], &[c(4.0)], &cx_), Err(QError::Pole(_))));
        assert_eq!(vanishing_factor(c(4.0), c(0.5)), Some(2));
        assert_eq!(vanishing_factor(c(0.3), c(0.5)), None);
    }

    fn small_complex() -> impl Strategy<Value = Complex64> {
        (0.0..0.9f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn finite_split(a in small_complex(), q in small_complex(), m in 0i64..25, n in 0i64..25) {
            let lhs = qpoch(a, q, m + n).unwrap();
            let rhs = qpoch(a, q, m).unwrap() * qpoch(a * q.powi(m as i32), q, n).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1e-300));
        }

        #[test]
        fn infinite_split(a in small_complex(), q in small_complex(), n in 0i64..=50) {
            let ctx = QContext::new(q).unwrap();
            let lhs = qpoch_infinite(a, &ctx).unwrap();
            let rhs = qpoch(a, q, n).unwrap() * qpoch_infinite(a * q.powi(n as i32), &ctx).unwrap();
            prop_assert!(rel(rhs, lhs) <= 1e-10);
        }

        #[test]
        fn negative_index_inverse(a in small_complex(), q in (0.2..0.9f64, 0.0..std::f64::consts::TAU), n in 1i64..12) {
            let q = Complex64::from_polar(q.0, q.1);
            if let Ok(neg) = qpoch(a, q, -n) {
                let pos = qpoch(a / q.powi(n as i32), q, n).unwrap();
                prop_assert!((neg * pos - 1.0).norm() <= 1e-9);
            }
        }
    }
}
