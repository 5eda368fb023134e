//! Integration engines: the Jackson q-integral and the periodic trapezoid rule
//! with node doubling, plus the two circle weights `omega_beta` and
//! `omega^(alpha,beta)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::pochhammer::qpoch_infinite;

/// First node count of the doubling schedule.
pub const INITIAL_NODES: usize = 64;

/// Outcome of a periodic quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub nodes_used: usize,
    /// `|T_{2N} - T_N|` of the last doubling.
    pub error_estimate: f64,
    /// Set iff `error_estimate <= eps_quad * (1 + |value|)`.
    pub converged: bool,
}

impl QuadratureResult {
    /// The result scaled by a real factor, e.g. `0.5` for a half period.
    pub fn scaled(self, factor: f64) -> Self {
        QuadratureResult {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }
}

/// Neumaier-compensated complex accumulator; summation order is the call order.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

impl CompensatedSum {
    fn add_part(acc: &mut (f64, f64), x: f64) {
        let (s, c) = *acc;
        let t = s + x;
        let c = if s.abs() >= x.abs() { c + ((s - t) + x) } else { c + ((x - t) + s) };
        *acc = (t, c);
    }

    fn add(&mut self, z: Complex64) {
        Self::add_part(&mut self.re, z.re);
        Self::add_part(&mut self.im, z.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

fn node_sum<F>(f: &mut F, start: usize, step: usize, count: usize, total: usize) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut acc = CompensatedSum::default();
    for j in 0..count {
        let theta = TAU * (start + j * step) as f64 / total as f64;
        let v = f(theta)?;
        if !v.is_finite() {
            return Err(QError::convergence(format!("integrand is not finite at theta = {theta}")));
        }
        acc.add(v);
    }
    Ok(acc.value())
}

/// Trapezoid values `T_N = (2 pi / N) sum_j f(2 pi j / N)` for `N = 64, 128, ...`,
/// stopping at the first `|T_{2N} - T_N| <= eps_quad (1 + |T_{2N}|)` or at the
/// node cap. Never fails on non-convergence; check `converged`.
pub fn trapezoid_doubling<F>(mut f: F, ctx: &QContext) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut n = INITIAL_NODES;
    let mut sum = node_sum(&mut f, 0, 1, n, n)?;
    let mut value = sum * (TAU / n as f64);
    let mut error_estimate = f64::INFINITY;
    while 2 * n <= ctx.max_quad_nodes() {
        // the new nodes of the 2N grid are the odd ones
        let odd = node_sum(&mut f, 1, 2, n, 2 * n)?;
        sum += odd;
        n *= 2;
        let next = sum * (TAU / n as f64);
        error_estimate = (next - value).norm();
        value = next;
        if error_estimate <= ctx.eps_quad() * (1.0 + value.norm()) {
            return Ok(QuadratureResult { value, nodes_used: n, error_estimate, converged: true });
        }
    }
    Ok(QuadratureResult { value, nodes_used: n, error_estimate, converged: false })
}

/// `int_0^{2 pi} f(theta) d theta` for a 2π-periodic integrand.
///
/// For analytic integrands the trapezoid rule converges geometrically, so the
/// doubling difference is a sharp error surrogate.
pub fn periodic_quadrature<F>(f: F, ctx: &QContext) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let r = trapezoid_doubling(f, ctx)?;
    if r.converged {
        Ok(r)
    } else {
        Err(QError::convergence(format!(
            "trapezoid rule not converged at {} nodes (last doubling difference {:e})",
            r.nodes_used, r.error_estimate
        )))
    }
}

/// `int_0^pi f(theta) d theta` for an even 2π-periodic integrand, as half the
/// full-period integral.
pub fn half_period_quadrature<F>(f: F, ctx: &QContext) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    periodic_quadrature(f, ctx).map(|r| r.scaled(0.5))
}

/// `(1 - q) b sum_{n>=0} q^n f(b q^n)`.
fn jackson_one_sided<F>(f: &mut F, b: Complex64, ctx: &QContext) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let zero = Complex64::new(0.0, 0.0);
    if b == zero {
        return Ok(zero);
    }
    let q = ctx.q();
    let abs_q = q.norm();
    let mut acc = CompensatedSum::default();
    let mut qn = Complex64::new(1.0, 0.0);
    let mut abs_qn = 1.0;
    // |f| over the last few nodes, standing in for sup |f| on the remaining ones
    let mut recent = [0.0f64; 4];
    for n in 0..ctx.max_series_terms() {
        let fx = f(b * qn)?;
        if !fx.is_finite() {
            return Err(QError::convergence(format!("Jackson integrand is not finite at z = {}", b * qn)));
        }
        acc.add(qn * fx);
        recent[n % recent.len()] = fx.norm();
        let local_max = recent.iter().copied().fold(0.0, f64::max);
        abs_qn *= abs_q;
        let tail = local_max * abs_qn / (1.0 - abs_q);
        if (n + 1 >= recent.len() || abs_q == 0.0) && tail <= ctx.eps_series() * acc.value().norm() {
            return Ok(acc.value() * b * (1.0 - q));
        }
        qn *= q;
    }
    Err(QError::convergence(format!(
        "Jackson sum from 0 to {b} did not meet its tail bound within {} terms",
        ctx.max_series_terms()
    )))
}

/// Jackson q-integral
/// `int_a^b f(z) d_q z = (1 - q) b sum q^n f(b q^n) - (1 - q) a sum q^n f(a q^n)`,
/// with `q = ctx.q()`.
///
/// Each one-sided sum stops once the geometric tail, estimated with the
/// largest `|f|` among the last four nodes, falls below `eps_series` times the
/// partial sum.
pub fn jackson_q_integral<F>(mut f: F, a: Complex64, b: Complex64, ctx: &QContext) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let upper = jackson_one_sided(&mut f, b, ctx)?;
    let lower = jackson_one_sided(&mut f, a, ctx)?;
    Ok(upper - lower)
}

/// One of the two circle weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightSpec {
    OmegaBeta { beta: Complex64 },
    OmegaAB { alpha: Complex64, beta: Complex64 },
}

impl WeightSpec {
    pub fn eval(&self, theta: f64, ctx: &QContext) -> Result<Complex64> {
        match *self {
            WeightSpec::OmegaBeta { beta } => weight_omega_beta(theta, beta, ctx),
            WeightSpec::OmegaAB { alpha, beta } => weight_omega_ab(theta, alpha, beta, ctx),
        }
    }
}

fn check_unit(name: &str, p: Complex64) -> Result<()> {
    if p.norm() < 1.0 {
        Ok(())
    } else {
        Err(QError::domain(format!("weight parameter {name} needs modulus < 1, got {p}")))
    }
}

/// `omega_beta(cos theta|q) = (e^{2i theta}, e^{-2i theta}; q)_∞ / (beta e^{2i theta}, beta e^{-2i theta}; q)_∞`.
pub fn weight_omega_beta(theta: f64, beta: Complex64, ctx: &QContext) -> Result<Complex64> {
    weight_omega_ab(theta, beta, beta, ctx)
}

/// `omega^(alpha,beta)(cos theta|q) = (e^{2i theta}, e^{-2i theta}; q)_∞ / (alpha e^{2i theta}, beta e^{-2i theta}; q)_∞`.
pub fn weight_omega_ab(theta: f64, alpha: Complex64, beta: Complex64, ctx: &QContext) -> Result<Complex64> {
    check_unit("alpha", alpha)?;
    check_unit("beta", beta)?;
    let e2 = Complex64::from_polar(1.0, 2.0 * theta);
    let num = qpoch_infinite(e2, ctx)? * qpoch_infinite(e2.conj(), ctx)?;
    let den = qpoch_infinite(alpha * e2, ctx)? * qpoch_infinite(beta * e2.conj(), ctx)?;
    Ok(num / den)
}


#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use crate::{c, cx};
    use proptest::prelude::*;

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    #[test]
    fn constant_integrand() {
        let r = periodic_quadrature(|_| Ok(c(1.0)), &ctx(0.3)).unwrap();
        assert!((r.value - c(TAU)).norm() < 1e-15);
        assert!(r.converged);
        assert_eq!(r.nodes_used, 2 * INITIAL_NODES);
    }

    #[test]
    fn trigonometric_monomial_vanishes() {
        let r = periodic_quadrature(|t| Ok(Complex64::from_polar(1.0, 3.0 * t)), &ctx(0.3)).unwrap();
        assert!(r.value.norm() < 1e-14);
    }

    #[test]
    fn omega_beta_at_beta_zero() {
        let cx_ = ctx(0.3);
        let r = periodic_quadrature(|t| weight_omega_beta(t, c(0.0), &cx_), &cx_).unwrap();
        let expect = 4.0 * PI / qpoch_infinite(cx_.q(), &cx_).unwrap();
        assert!((r.value - expect).norm() <= 1e-10 * expect.norm());
        let half = half_period_quadrature(|t| weight_omega_beta(t, c(0.0), &cx_), &cx_).unwrap();
        assert!((half.value * 2.0 - r.value).norm() < 1e-15);
    }

    #[test]
    fn cap_without_convergence_is_an_error() {
        let settings = crate::ContextSettings { max_quad_nodes: 64, ..Default::default() };
        let cx_ = QContext::with_settings(0.3, settings).unwrap();
        let r = trapezoid_doubling(|t| Ok(c(t.cos().abs())), &cx_).unwrap();
        assert!(!r.converged);
        assert!(matches!(periodic_quadrature(|t| Ok(c(t.cos().abs())), &cx_), Err(QError::Convergence(_))));
        let nan = periodic_quadrature(|_| Ok(c(f64::NAN)), &ctx(0.3));
        assert!(matches!(nan, Err(QError::Convergence(_))));
    }

    #[test]
    fn converged_flag_matches_invariant() {
        let cx_ = ctx(0.5);
        let r = periodic_quadrature(|t| Ok(c((t.cos()).exp())), &cx_).unwrap();
        assert!(r.error_estimate <= cx_.eps_quad() * (1.0 + r.value.norm()));
    }

    #[test]
    fn spectral_convergence_of_orthogonality_integrand() {
        use crate::poly::{ultraspherical_c_angle, Method};
        let cx_ = ctx(0.3);
        let beta = c(0.5);
        let f = |t: f64| -> Complex64 {
            let cc = ultraspherical_c_angle(3, t, beta, Method::Explicit, &cx_).unwrap();
            cc * cc * weight_omega_beta(t, beta, &cx_).unwrap()
        };
        let trap = |n: usize| -> Complex64 { (0..n).map(|j| f(TAU * j as f64 / n as f64)).sum::<Complex64>() * (TAU / n as f64) };
        let (t128, t256) = (trap(128), trap(256));
        assert!((t256 - t128).norm() < 1e-12 * t256.norm());
    }

    #[test]
    fn jackson_examples() {
        let cx_ = ctx(0.4);
        let b = cx(0.7, 0.2);
        let one = jackson_q_integral(|_| Ok(c(1.0)), c(0.0), b, &cx_).unwrap();
        assert!((one - b).norm() < 1e-14);
        let lin = jackson_q_integral(Ok, c(0.0), b, &cx_).unwrap();
        assert!((lin - b * b / 1.4).norm() < 1e-14);
    }

    #[test]
    fn jackson_zero_q() {
        // q = 0 collapses the sum to its first node
        let cx_ = ctx(0.0);
        let v = jackson_q_integral(|z| Ok(z * z), c(0.0), c(0.5), &cx_).unwrap();
        assert!((v - c(0.125)).norm() < 1e-16);
    }

    #[test]
    fn jackson_growth_is_reported() {
        let settings = crate::ContextSettings { max_series_terms: 200, ..Default::default() };
        let cx_ = QContext::with_settings(0.5, settings).unwrap();
        let r = jackson_q_integral(|z| Ok(1.0 / (z * z)), c(0.0), c(1.0), &cx_);
        assert!(matches!(r, Err(QError::Convergence(_))));
    }

    #[test]
    fn weights() {
        let cx_ = ctx(0.5);
        assert_eq!(weight_omega_beta(0.0, c(0.3), &cx_).unwrap(), c(0.0));
        assert_eq!(weight_omega_ab(0.0, c(0.3), c(-0.2), &cx_).unwrap(), c(0.0));
        for &t in &[0.3, 1.2, 2.9] {
            let a = weight_omega_beta(t, c(0.4), &cx_).unwrap();
            let b = weight_omega_beta(-t, c(0.4), &cx_).unwrap();
            assert!((a - b).norm() < 1e-13);
            assert_eq!(weight_omega_ab(t, c(0.4), c(0.4), &cx_).unwrap(), a);
            let s = weight_omega_ab(-t, c(0.4), c(-0.3), &cx_).unwrap();
            let r = weight_omega_ab(t, c(-0.3), c(0.4), &cx_).unwrap();
            assert!((s - r).norm() < 1e-13);
        }
        // theta = pi/2, beta = 0: (-1;q)_∞^2
        let v = weight_omega_beta(PI / 2.0, c(0.0), &cx_).unwrap();
        let mut direct = 1.0;
        for k in 0..200 {
            direct *= 1.0 + 0.5f64.powi(k);
        }
        assert!((v - c(direct * direct)).norm() < 1e-13 * direct * direct);
        assert!(weight_omega_beta(0.3, c(1.0), &cx_).is_err());
        let spec = WeightSpec::OmegaAB { alpha: c(0.2), beta: c(0.1) };
        assert_eq!(spec.eval(0.7, &cx_).unwrap(), weight_omega_ab(0.7, c(0.2), c(0.1), &cx_).unwrap());
    }

    proptest! {
        #[test]
        fn jackson_polynomial_closed_form(
            coeffs in proptest::collection::vec(-2.0..2.0f64, 1..6),
            a in -1.0..1.0f64, b in -1.0..1.0f64, q in 0.05..0.9f64,
        ) {
            let cx_ = ctx(q);
            let poly = |z: Complex64| -> Complex64 {
                coeffs.iter().rev().fold(c(0.0), |acc, &cf| acc * z + cf)
            };
            let got = jackson_q_integral(|z| Ok(poly(z)), c(a), c(b), &cx_).unwrap();
            let closed = |x: f64| -> f64 {
                coeffs.iter().enumerate().map(|(j, &cf)| cf * x.powi(j as i32 + 1) * (1.0 - q) / (1.0 - q.powi(j as i32 + 1))).sum()
            };
            let expect = closed(b) - closed(a);
            let scale: f64 = coeffs.iter().map(|v| v.abs()).sum::<f64>() + 1.0;
            prop_assert!((got - c(expect)).norm() <= 1e-12 * scale, "{} vs {}", got, expect);
            // additivity
            let zb = jackson_q_integral(|z| Ok(poly(z)), c(0.0), c(b), &cx_).unwrap();
            let za = jackson_q_integral(|z| Ok(poly(z)), c(0.0), c(a), &cx_).unwrap();
            prop_assert!((got - (zb - za)).norm() <= 1e-12 * scale);
        }
    }
}
