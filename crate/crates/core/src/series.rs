//! Truncated power series in a formal variable `t` and numeric evaluation of
//! basic hypergeometric (`_{r+1}phi_r`) and very-well-poised (`_{r+1}W_r`)
//! series.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::pochhammer::{infinite_ratio, is_zero_factor, vanishing_factor};

/// Default degree cap for generating-function oracles.
pub const DEFAULT_DEGREE: usize = 24;

/// Coefficients `c_0..=c_D` of a power series known up to `t^D`.
///
/// Binary operations truncate to the smaller of the two caps.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedPowerSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedPowerSeries {
    /// Series from explicit coefficients; `coeffs` must be non-empty and its
    /// length fixes the degree cap.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(QError::domain("a truncated power series needs at least the constant coefficient"));
        }
        Ok(TruncatedPowerSeries { coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        TruncatedPowerSeries { coeffs: vec![Complex64::new(0.0, 0.0); degree + 1] }
    }

    pub fn constant(value: Complex64, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = value;
        s
    }

    pub fn one(degree: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), degree)
    }

    /// Polynomial `sum_j coeffs[j] t^j`, padded with zeros or truncated to
    /// `degree`.
    pub fn from_polynomial(coeffs: &[Complex64], degree: usize) -> Self {
        let mut s = Self::zero(degree);
        for (dst, &src) in s.coeffs.iter_mut().zip(coeffs) {
            *dst = src;
        }
        s
    }

    #[inline]
    pub fn degree_cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `t^j`; zero past the cap is not implied, so this panics
    /// when `j > degree_cap()`.
    #[inline]
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs[j]
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let d = degree.min(self.degree_cap());
        TruncatedPowerSeries { coeffs: self.coeffs[..=d].to_vec() }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        TruncatedPowerSeries { coeffs: self.coeffs.iter().map(|&c| c * factor).collect() }
    }

    /// Cauchy product truncated to the smaller cap.
    pub fn mul_series(&self, other: &Self) -> Self {
        let d = self.degree_cap().min(other.degree_cap());
        let mut out = Self::zero(d);
        for (j, slot) in out.coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..=j {
                acc += self.coeffs[i] * other.coeffs[j - i];
            }
            *slot = acc;
        }
        out
    }

    /// Multiplicative inverse up to the same cap.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0 == Complex64::new(0.0, 0.0) {
            return Err(QError::domain("reciprocal of a series with zero constant term"));
        }
        let d = self.degree_cap();
        let mut b = vec![Complex64::new(0.0, 0.0); d + 1];
        b[0] = 1.0 / a0;
        for j in 1..=d {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 1..=j {
                acc += self.coeffs[i] * b[j - i];
            }
            b[j] = -acc / a0;
        }
        Ok(TruncatedPowerSeries { coeffs: b })
    }

    /// Multiply in place by the linear factor `1 - c t`.
    fn mul_linear(&mut self, c: Complex64) {
        for j in (1..self.coeffs.len()).rev() {
            let prev = self.coeffs[j - 1];
            self.coeffs[j] -= c * prev;
        }
    }

    /// Divide in place by the linear factor `1 - c t`, i.e. multiply by the
    /// geometric series `sum_j c^j t^j`.
    fn div_linear(&mut self, c: Complex64) {
        for j in 1..self.coeffs.len() {
            let prev = self.coeffs[j - 1];
            self.coeffs[j] += c * prev;
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let d = self.degree_cap().min(other.degree_cap());
        TruncatedPowerSeries {
            coeffs: (0..=d).map(|j| f(self.coeffs[j], other.coeffs[j])).collect(),
        }
    }
}

impl Mul for &TruncatedPowerSeries {
    type Output = TruncatedPowerSeries;

    fn mul(self, rhs: Self) -> TruncatedPowerSeries {
        self.mul_series(rhs)
    }
}

impl Add for &TruncatedPowerSeries {
    type Output = TruncatedPowerSeries;

    fn add(self, rhs: Self) -> TruncatedPowerSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedPowerSeries {
    type Output = TruncatedPowerSeries;

    fn sub(self, rhs: Self) -> TruncatedPowerSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Number of leading factors `1 - c q^k t` of `(c t; q)_∞` kept in an
/// expansion: the first `K` with `|c| |q|^K < eps_product`.
fn factor_count(c: Complex64, ctx: &QContext) -> Result<usize> {
    let abs_q = ctx.q().norm();
    let mut x = c.norm();
    let mut k = 0usize;
    while !(x < ctx.eps_product()) {
        if k >= ctx.max_product_terms() {
            return Err(QError::convergence(format!(
                "expanding ({c} t;q)_inf needs more than {} factors",
                ctx.max_product_terms()
            )));
        }
        x *= abs_q;
        k += 1;
    }
    Ok(k)
}

/// Expansion of the infinite product `(c t; q)_∞` in `t` to degree `degree`.
pub fn product_series(c: Complex64, degree: usize, ctx: &QContext) -> Result<TruncatedPowerSeries> {
    let mut s = TruncatedPowerSeries::one(degree);
    let mut cqk = c;
    for _ in 0..factor_count(c, ctx)? {
        s.mul_linear(cqk);
        cqk *= ctx.q();
    }
    Ok(s)
}

/// Expansion of `1 / (c t; q)_∞` in `t` to degree `degree`, as the product of
/// the geometric-series reciprocals of its linear factors.
pub fn reciprocal_product_series(c: Complex64, degree: usize, ctx: &QContext) -> Result<TruncatedPowerSeries> {
    let mut s = TruncatedPowerSeries::one(degree);
    let mut cqk = c;
    for _ in 0..factor_count(c, ctx)? {
        s.div_linear(cqk);
        cqk *= ctx.q();
    }
    Ok(s)
}

/// Coefficients of `prod_i (num_i t; q)_∞ / prod_j (den_j t; q)_∞` up to `t^degree`.
///
/// Each product keeps its factors `1 - c q^k t` while `|c| |q|^k >= eps_product`.
/// Factors are applied level by level in `k`, numerators first, and each
/// denominator factor is inverted through its geometric series. The running
/// series then stays close to a ratio of bounded products, which avoids the
/// cancellation of expanding numerator and denominator separately.
pub fn gf_expand(
    numerator: &[Complex64],
    denominator: &[Complex64],
    degree: usize,
    ctx: &QContext,
) -> Result<TruncatedPowerSeries> {
    let num_counts = numerator.iter().map(|&c| factor_count(c, ctx)).collect::<Result<Vec<_>>>()?;
    let den_counts = denominator.iter().map(|&c| factor_count(c, ctx)).collect::<Result<Vec<_>>>()?;
    let levels = num_counts.iter().chain(&den_counts).copied().max().unwrap_or(0);
    let mut num: Vec<Complex64> = numerator.to_vec();
    let mut den: Vec<Complex64> = denominator.to_vec();
    let mut s = TruncatedPowerSeries::one(degree);
    for k in 0..levels {
        for (c, &count) in num.iter_mut().zip(&num_counts) {
            if k < count {
                s.mul_linear(*c);
                *c *= ctx.q();
            }
        }
        for (c, &count) in den.iter_mut().zip(&den_counts) {
            if k < count {
                s.div_linear(*c);
                *c *= ctx.q();
            }
        }
    }
    Ok(s)
}

/// Parameters of `_{r+1}phi_r(a_1..a_{r+1}; b_1..b_r; q, z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricSpec {
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
    pub z: Complex64,
}

impl HypergeometricSpec {
    pub fn new(upper: Vec<Complex64>, lower: Vec<Complex64>, z: Complex64) -> Result<Self> {
        if upper.len() != lower.len() + 1 {
            return Err(QError::domain(format!(
                "_(r+1)phi_r needs one more upper than lower parameter, got {} and {}",
                upper.len(),
                lower.len()
            )));
        }
        Ok(HypergeometricSpec { upper, lower, z })
    }
}

/// Smallest `m >= 0` with `a q^m = 1`, i.e. `a = q^{-m}` terminates the series.
fn termination_index(upper: &[Complex64], q: Complex64) -> Option<usize> {
    upper.iter().filter_map(|&a| vanishing_factor(a, q)).min()
}

/// Result of a summation together with the tail certificate it stopped on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    /// Bound on the absolute value of the omitted tail (zero for a
    /// terminating series).
    pub tail_bound: f64,
    /// Number of terms added.
    pub terms: usize,
}

/// Numeric value of a basic hypergeometric series.
pub fn phi_series(spec: &HypergeometricSpec, ctx: &QContext) -> Result<Complex64> {
    phi_series_certified(spec, ctx).map(|s| s.value)
}

/// [`phi_series`] with its stopping certificate.
///
/// Terms follow the running ratio
/// `t_{n+1}/t_n = z prod(1 - a_i q^n) / ((1 - q^{n+1}) prod(1 - b_j q^n))`.
/// For `k >= n` every later ratio is bounded in modulus by
/// `rho_n = |z| prod(1 + |a_i||q|^n) / ((1 - |q|^{n+1}) prod(1 - |b_j||q|^n))`,
/// so once `rho_n < 1` the tail after `t_n` is at most `|t_n| rho_n/(1 - rho_n)`.
pub fn phi_series_certified(spec: &HypergeometricSpec, ctx: &QContext) -> Result<SeriesSum> {
    if spec.upper.len() != spec.lower.len() + 1 {
        return Err(QError::domain("malformed hypergeometric spec"));
    }
    let q = ctx.q();
    let abs_q = q.norm();
    let z = spec.z;
    let zero = Complex64::new(0.0, 0.0);
    if z == zero {
        return Ok(SeriesSum { value: Complex64::new(1.0, 0.0), tail_bound: 0.0, terms: 1 });
    }
    let stop_at = termination_index(&spec.upper, q);
    if stop_at.is_none() && !(z.norm() < 1.0) {
        return Err(QError::domain(format!("non-terminating series with |z| = {} >= 1 diverges", z.norm())));
    }

    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut qn = Complex64::new(1.0, 0.0);
    let mut abs_qn = 1.0;
    for n in 0..ctx.max_series_terms() {
        if Some(n) == stop_at {
            return Ok(SeriesSum { value: sum, tail_bound: 0.0, terms: n + 1 });
        }
        let mut num = z;
        for &a in &spec.upper {
            num *= 1.0 - a * qn;
        }
        let mut den = 1.0 - qn * q;
        for &b in &spec.lower {
            let x = b * qn;
            let f = 1.0 - x;
            if is_zero_factor(f, x) {
                return Err(QError::domain(format!("lower parameter {b} = q^-{n} makes term {} infinite", n + 1)));
            }
            den *= f;
        }

        // certificate for the tail after the current term
        if stop_at.is_none() {
            let mut rho = z.norm() / (1.0 - abs_qn * abs_q);
            let mut admissible = true;
            for a in &spec.upper {
                rho *= 1.0 + a.norm() * abs_qn;
            }
            for b in &spec.lower {
                let d = 1.0 - b.norm() * abs_qn;
                if d <= 0.0 {
                    admissible = false;
                    break;
                }
                rho /= d;
            }
            if admissible && rho < 1.0 {
                let tail = term.norm() * rho / (1.0 - rho);
                if tail <= ctx.eps_series() * sum.norm() {
                    return Ok(SeriesSum { value: sum, tail_bound: tail, terms: n + 1 });
                }
            }
        }

        term *= num / den;
        sum += term;
        if !sum.is_finite() {
            return Err(QError::convergence("basic hypergeometric partial sum overflowed"));
        }
        qn *= q;
        abs_qn *= abs_q;
    }
    Err(QError::convergence(format!(
        "basic hypergeometric series did not meet its tail bound within {} terms",
        ctx.max_series_terms()
    )))
}

/// Parameter substitution defining the very-well-poised series
/// `_{r+1}W_r(a1; rest; q, z)`: upper `a1, q sqrt(a1), -q sqrt(a1), rest..`,
/// lower `sqrt(a1), -sqrt(a1), q a1 / rest_i..`, principal square root.
pub fn very_well_poised_spec(a1: Complex64, rest: &[Complex64], z: Complex64, q: Complex64) -> Result<HypergeometricSpec> {
    let root = a1.sqrt();
    let mut upper = vec![a1, q * root, -q * root];
    let mut lower = vec![root, -root];
    for &a in rest {
        if a == Complex64::new(0.0, 0.0) {
            return Err(QError::domain("very-well-poised parameter must be nonzero (q a1 / a_i)"));
        }
        upper.push(a);
        lower.push(q * a1 / a);
    }
    HypergeometricSpec::new(upper, lower, z)
}

/// `_{r+1}W_r(a1; a_2, ..., a_{r-1}; q, z)` with `q = ctx.q()`.
pub fn w_series(a1: Complex64, rest: &[Complex64], z: Complex64, ctx: &QContext) -> Result<Complex64> {
    phi_series(&very_well_poised_spec(a1, rest, z, ctx.q())?, ctx)
}

/// Product side of Rogers' `_6phi_5` summation,
/// `(aq, aq/bc, aq/cd, aq/bd; q)_∞ / (aq/b, aq/c, aq/d, aq/bcd; q)_∞`,
/// which equals `_6W_5(a; b, c, d; q, aq/bcd)` for `|aq/bcd| < 1`.
pub fn rogers_6w5_rhs(a: Complex64, b: Complex64, c: Complex64, d: Complex64, ctx: &QContext) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    if b == zero || c == zero || d == zero {
        return Err(QError::domain("Rogers 6phi5 parameters b, c, d must be nonzero"));
    }
    let aq = a * ctx.q();
    let z = aq / (b * c * d);
    if !(z.norm() < 1.0) {
        return Err(QError::domain(format!("Rogers 6phi5 needs |aq/bcd| < 1, got {}", z.norm())));
    }
    infinite_ratio(
        &[aq, aq / (b * c), aq / (c * d), aq / (b * d)],
        &[aq / b, aq / c, aq / d, z],
        ctx,
    )
}
