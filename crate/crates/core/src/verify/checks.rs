//! One function per identity: evaluate both sides, compare, report.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::closed_form as cf;
use super::report::{ParamValue, VerificationReport};
use crate::error::{QError, Result};
use crate::integrate::{half_period_quadrature, jackson_q_integral, periodic_quadrature, weight_omega_ab, weight_omega_beta};
use crate::pochhammer::infinite_ratio;
use crate::poly::{chebyshev_t_angle, connection_coeffs, gasper_c, phi_poly, ultraspherical_c_angle, Method};
use crate::series::{gf_expand, phi_series, rogers_6w5_rhs, w_series, HypergeometricSpec, TruncatedPowerSeries};
use crate::QContext;

/// Identifier of a checkable identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckId {
    /// Orthogonality of `C_n(x; beta|q)` on `[0, pi]`.
    #[serde(rename = "thm-1.1")]
    UltrasphericalOrthogonality,
    /// Integral of `C_m(.; gamma) C_n(.; beta)` against `omega_beta`.
    #[serde(rename = "thm-1.2")]
    MixedParameterIntegral,
    /// Orthogonality of the Gasper functions on `[0, 2 pi]`.
    #[serde(rename = "thm-1.3")]
    GasperOrthogonality,
    /// The five-parameter q-beta integral.
    #[serde(rename = "thm-1.4")]
    FiveParameterBeta,
    /// Nonterminating q-Saalschütz summation as a Jackson integral.
    #[serde(rename = "prop-3.1")]
    Saalschutz,
    /// Jackson integral representation of `Phi_n`.
    #[serde(rename = "prop-3.2")]
    PhiPolyIntegral,
    #[serde(rename = "rogers-connection")]
    RogersConnection,
    /// Chebyshev projection of `C_n` against `omega_beta`.
    #[serde(rename = "askey-ismail")]
    AskeyIsmail,
    /// Generating function of `(1 - beta q^n) C_n`.
    #[serde(rename = "gf-4.1")]
    WeightedGeneratingFunction,
    /// Expansion of the `gamma` generating function in `beta` polynomials.
    #[serde(rename = "prop-4.2")]
    ConnectionExpansion,
    /// `|C_n^(alpha,beta)(e^{i theta})| <= C_n^(alpha,beta)(1)`.
    #[serde(rename = "uniform-bound")]
    UniformBound,
    /// The q-binomial theorem.
    #[serde(rename = "qbinomial")]
    QBinomial,
    /// Rogers' summation of the very-well-poised 6phi5.
    #[serde(rename = "rogers-6phi5")]
    Rogers6phi5,
}

impl CheckId {
    pub const ALL: [CheckId; 13] = [
        CheckId::UltrasphericalOrthogonality,
        CheckId::MixedParameterIntegral,
        CheckId::GasperOrthogonality,
        CheckId::FiveParameterBeta,
        CheckId::Saalschutz,
        CheckId::PhiPolyIntegral,
        CheckId::RogersConnection,
        CheckId::AskeyIsmail,
        CheckId::WeightedGeneratingFunction,
        CheckId::ConnectionExpansion,
        CheckId::UniformBound,
        CheckId::QBinomial,
        CheckId::Rogers6phi5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::UltrasphericalOrthogonality => "thm-1.1",
            CheckId::MixedParameterIntegral => "thm-1.2",
            CheckId::GasperOrthogonality => "thm-1.3",
            CheckId::FiveParameterBeta => "thm-1.4",
            CheckId::Saalschutz => "prop-3.1",
            CheckId::PhiPolyIntegral => "prop-3.2",
            CheckId::RogersConnection => "rogers-connection",
            CheckId::AskeyIsmail => "askey-ismail",
            CheckId::WeightedGeneratingFunction => "gf-4.1",
            CheckId::ConnectionExpansion => "prop-4.2",
            CheckId::UniformBound => "uniform-bound",
            CheckId::QBinomial => "qbinomial",
            CheckId::Rogers6phi5 => "rogers-6phi5",
        }
    }

    pub fn kind(self) -> CheckKind {
        match self {
            CheckId::UltrasphericalOrthogonality
            | CheckId::MixedParameterIntegral
            | CheckId::GasperOrthogonality
            | CheckId::FiveParameterBeta
            | CheckId::Saalschutz
            | CheckId::PhiPolyIntegral
            | CheckId::AskeyIsmail => CheckKind::Integral,
            CheckId::RogersConnection
            | CheckId::WeightedGeneratingFunction
            | CheckId::ConnectionExpansion
            | CheckId::QBinomial
            | CheckId::Rogers6phi5 => CheckKind::Series,
            CheckId::UniformBound => CheckKind::Bound,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| QError::domain(format!("unknown check id {s:?}")))
    }
}

/// How a check's left side is obtained, which fixes its default tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Quadrature or Jackson sums.
    Integral,
    /// Pure series and product evaluations.
    Series,
    /// An inequality, reported as the relative excess over the bound.
    Bound,
}

/// Default tolerances by [`CheckKind`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TolerancePolicy {
    pub integral: f64,
    pub series: f64,
    pub bound: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy { integral: 1e-9, series: 1e-11, bound: 1e-12 }
    }
}

impl TolerancePolicy {
    /// Every tolerance set to `tol`, except the bound slack.
    pub fn uniform(tol: f64) -> Self {
        TolerancePolicy { integral: tol, series: tol, ..Default::default() }
    }

    pub fn for_check(&self, id: CheckId) -> f64 {
        match id.kind() {
            CheckKind::Integral => self.integral,
            CheckKind::Series => self.series,
            CheckKind::Bound => self.bound,
        }
    }
}

/// Both sides of one comparison.
struct Sides {
    lhs: Complex64,
    rhs: Complex64,
    nodes: u64,
}

pub(crate) type Params = BTreeMap<String, ParamValue>;

pub(crate) fn params<const N: usize>(entries: [(&str, ParamValue); N]) -> Params {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn rel_err(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / (1.0 + lhs.norm().max(rhs.norm()))
}

/// The comparison among several with the largest relative error.
fn worst(pairs: impl IntoIterator<Item = (Complex64, Complex64)>) -> (Complex64, Complex64) {
    let mut best = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let mut best_err = -1.0;
    for (l, r) in pairs {
        let e = rel_err(l, r);
        let e = if e.is_nan() { f64::INFINITY } else { e };
        if e > best_err {
            best_err = e;
            best = (l, r);
        }
    }
    best
}

fn run(id: CheckId, mut params: Params, ctx: &QContext, tol: f64, body: impl FnOnce() -> Result<Sides>) -> VerificationReport {
    params.insert("q".to_string(), ctx.q().into());
    let start = Instant::now();
    let mut report = match body() {
        Ok(s) => VerificationReport::new(id.as_str(), params, s.lhs, s.rhs, tol, s.nodes),
        Err(e) => VerificationReport::failed(id.as_str(), params, tol, e.to_string()),
    };
    report.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

fn c_angle(n: usize, theta: f64, beta: Complex64, ctx: &QContext) -> Result<Complex64> {
    ultraspherical_c_angle(n, theta, beta, Method::Explicit, ctx)
}

/// `int_0^pi C_m C_n omega_beta d theta` against `delta_{mn}/h_n`.
pub fn verify_ultraspherical_orthogonality(m: usize, n: usize, beta: Complex64, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("m", m.into()), ("n", n.into()), ("beta", beta.into())]);
    run(CheckId::UltrasphericalOrthogonality, p, ctx, tol, || {
        let rhs = cf::ultraspherical_orthogonality(m, n, beta, ctx)?;
        let quad = half_period_quadrature(
            |t| Ok(c_angle(m, t, beta, ctx)? * c_angle(n, t, beta, ctx)? * weight_omega_beta(t, beta, ctx)?),
            ctx,
        )?;
        Ok(Sides { lhs: quad.value, rhs, nodes: quad.nodes_used as u64 })
    })
}

/// `int_0^pi C_m(.; gamma) C_n(.; beta) omega_beta d theta` against its closed form.
pub fn verify_mixed_parameter_integral(m: usize, n: usize, beta: Complex64, gamma: Complex64, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("m", m.into()), ("n", n.into()), ("beta", beta.into()), ("gamma", gamma.into())]);
    run(CheckId::MixedParameterIntegral, p, ctx, tol, || {
        let rhs = cf::mixed_parameter_integral(m, n, beta, gamma, ctx)?;
        let quad = half_period_quadrature(
            |t| Ok(c_angle(m, t, gamma, ctx)? * c_angle(n, t, beta, ctx)? * weight_omega_beta(t, beta, ctx)?),
            ctx,
        )?;
        Ok(Sides { lhs: quad.value, rhs, nodes: quad.nodes_used as u64 })
    })
}

/// `int_0^{2 pi} C_m^(alpha,beta) C_n^(alpha,beta) omega^(alpha,beta) d theta`, both
/// factors at `e^{i theta}`, against the diagonal norm.
pub fn verify_gasper_orthogonality(m: usize, n: usize, alpha: Complex64, beta: Complex64, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("m", m.into()), ("n", n.into()), ("alpha", alpha.into()), ("beta", beta.into())]);
    run(CheckId::GasperOrthogonality, p, ctx, tol, || {
        let rhs = cf::gasper_orthogonality(m, n, alpha, beta, ctx)?;
        let quad = periodic_quadrature(
            |t| {
                let cm = gasper_c(m, t, alpha, beta, Method::Explicit, ctx)?;
                let cn = gasper_c(n, t, alpha, beta, Method::Explicit, ctx)?;
                Ok(cm * cn * weight_omega_ab(t, alpha, beta, ctx)?)
            },
            ctx,
        )?;
        Ok(Sides { lhs: quad.value, rhs, nodes: quad.nodes_used as u64 })
    })
}

/// The five-parameter q-beta integral against its certified series.
pub fn verify_five_parameter_beta(alpha: Complex64, beta: Complex64, s: Complex64, t: Complex64, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("alpha", alpha.into()), ("beta", beta.into()), ("s", s.into()), ("t", t.into())]);
    run(CheckId::FiveParameterBeta, p, ctx, tol, || {
        let rhs = cf::five_parameter_beta_sum(alpha, beta, s, t, ctx)?;
        let quad = periodic_quadrature(|th| cf::five_parameter_beta_integrand(th, alpha, beta, s, t, ctx), ctx)?;
        Ok(Sides { lhs: quad.value, rhs: rhs.value, nodes: quad.nodes_used as u64 })
    })
}

/// Jackson integral of the q-Saalschütz integrand against its product form.
pub fn verify_saalschutz(a: Complex64, b: Complex64, c: Complex64, x: Complex64, y: Complex64, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("a", a.into()), ("b", b.into()), ("c", c.into()), ("x", x.into()), ("y", y.into())]);
    run(CheckId::Saalschutz, p, ctx, tol, || {
        let rhs = cf::saalschutz_integral(a, b, c, x, y, ctx)?;
        let lhs = jackson_q_integral(|z| cf::saalschutz_integrand(z, a, b, c, x, y, ctx), x, y, ctx)?;
        Ok(Sides { lhs, rhs, nodes: 0 })
    })
}

/// `Phi_n^(a,b)(x, y|q)` against its Jackson integral representation.
pub fn verify_phi_poly_integral(n: usize, a: Complex64, b: Complex64, x: Complex64, y: Complex64, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("n", n.into()), ("a", a.into()), ("b", b.into()), ("x", x.into()), ("y", y.into())]);
    run(CheckId::PhiPolyIntegral, p, ctx, tol, || {
        let pre = cf::phi_poly_prefactor(n, a, b, x, y, ctx)?;
        let integral = jackson_q_integral(|z| cf::phi_poly_integrand(z, n, a, b, x, y, ctx), x, y, ctx)?;
        Ok(Sides { lhs: phi_poly(n, a, b, x, y, ctx.q()), rhs: pre * integral, nodes: 0 })
    })
}

/// `C_n(cos theta; gamma) = sum_k c_k C_{n-2k}(cos theta; beta)` at
/// `theta_j = pi (j + 1/2)/grid`; the worst grid point is reported.
pub fn verify_rogers_connection(n: usize, beta: Complex64, gamma: Complex64, grid: usize, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("n", n.into()), ("beta", beta.into()), ("gamma", gamma.into()), ("grid", grid.into())]);
    run(CheckId::RogersConnection, p, ctx, tol, || {
        if grid == 0 {
            return Err(QError::domain("the theta grid needs at least one point"));
        }
        let coeffs = connection_coeffs(n, beta, gamma, ctx)?;
        let mut pairs = Vec::with_capacity(grid);
        for j in 0..grid {
            let t = PI * (j as f64 + 0.5) / grid as f64;
            let lhs = c_angle(n, t, gamma, ctx)?;
            let mut rhs = Complex64::new(0.0, 0.0);
            for (k, ck) in coeffs.iter().enumerate() {
                rhs += ck * c_angle(n - 2 * k, t, beta, ctx)?;
            }
            pairs.push((lhs, rhs));
        }
        let (lhs, rhs) = worst(pairs);
        Ok(Sides { lhs, rhs, nodes: grid as u64 })
    })
}

/// `int_0^pi C_n(cos theta; beta) T_{n+2k}(cos theta) omega_beta d theta` against
/// its closed form, `k >= 1`.
pub fn verify_askey_ismail_chebyshev(n: usize, k: usize, beta: Complex64, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("n", n.into()), ("k", k.into()), ("beta", beta.into())]);
    run(CheckId::AskeyIsmail, p, ctx, tol, || {
        let rhs = cf::chebyshev_projection(n, k, beta, ctx)?;
        let quad = half_period_quadrature(
            |t| Ok(c_angle(n, t, beta, ctx)? * chebyshev_t_angle(n + 2 * k, t) * weight_omega_beta(t, beta, ctx)?),
            ctx,
        )?;
        Ok(Sides { lhs: quad.value, rhs, nodes: quad.nodes_used as u64 })
    })
}

/// Coefficients of `sum_n (1 - beta q^n) C_n(cos theta; beta) t^n` against the
/// expansion of `(1 - beta)(1 - beta t^2) (beta q t e^{±i theta})_∞/(t e^{±i theta})_∞`
/// through `t^degree`; the worst coefficient is reported.
pub fn verify_weighted_generating_function(beta: Complex64, theta: f64, degree: usize, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("beta", beta.into()), ("theta", theta.into()), ("degree", degree.into())]);
    run(CheckId::WeightedGeneratingFunction, p, ctx, tol, || {
        let q = ctx.q();
        let e = Complex64::from_polar(1.0, theta);
        let one = Complex64::new(1.0, 0.0);
        let quadratic = TruncatedPowerSeries::from_polynomial(&[one - beta, Complex64::new(0.0, 0.0), -(one - beta) * beta], degree);
        let rhs = &gf_expand(&[beta * q * e, beta * q * e.conj()], &[e, e.conj()], degree, ctx)? * &quadratic;
        let mut pairs = Vec::with_capacity(degree + 1);
        for j in 0..=degree {
            let lhs = (one - beta * q.powi(j as i32)) * c_angle(j, theta, beta, ctx)?;
            pairs.push((lhs, rhs.coeff(j)));
        }
        let (lhs, rhs) = worst(pairs);
        Ok(Sides { lhs, rhs, nodes: 0 })
    })
}

/// Coefficients of `sum_n C_n(cos theta; gamma) t^n`, read from its generating
/// function, against the double sum over `C_m(cos theta; beta)`; the worst
/// coefficient through `t^degree` is reported.
pub fn verify_connection_expansion(beta: Complex64, gamma: Complex64, theta: f64, degree: usize, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("beta", beta.into()), ("gamma", gamma.into()), ("theta", theta.into()), ("degree", degree.into())]);
    run(CheckId::ConnectionExpansion, p, ctx, tol, || {
        if beta == Complex64::new(0.0, 0.0) {
            return Err(QError::domain("the connection expansion needs beta != 0"));
        }
        let e = Complex64::from_polar(1.0, theta);
        let lhs = gf_expand(&[gamma * e, gamma * e.conj()], &[e, e.conj()], degree, ctx)?;
        let rhs = cf::connection_expansion_coeffs(beta, gamma, theta, degree, ctx)?;
        let (l, r) = worst(lhs.coeffs().iter().copied().zip(rhs));
        Ok(Sides { lhs: l, rhs: r, nodes: 0 })
    })
}

/// `max_j |C_n^(alpha,beta)(e^{i theta_j})|` over `theta_j = 2 pi j/grid` against
/// `C_n^(alpha,beta)(1)`.
///
/// The grid contains `theta = 0`, so the left side is never below the right
/// one and the relative error measures exactly how far the bound is exceeded.
pub fn verify_uniform_bound(n: usize, alpha: f64, beta: f64, grid: usize, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("n", n.into()), ("alpha", alpha.into()), ("beta", beta.into()), ("grid", grid.into())]);
    run(CheckId::UniformBound, p, ctx, tol, || {
        if ctx.q().im != 0.0 {
            return Err(QError::domain("the uniform bound is stated for real q"));
        }
        if grid == 0 {
            return Err(QError::domain("the theta grid needs at least one point"));
        }
        let (a, b) = (Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0));
        let at_one = gasper_c(n, 0.0, a, b, Method::Explicit, ctx)?;
        let mut max = 0.0f64;
        for j in 0..grid {
            let t = 2.0 * PI * j as f64 / grid as f64;
            max = max.max(gasper_c(n, t, a, b, Method::Explicit, ctx)?.norm());
        }
        Ok(Sides { lhs: Complex64::new(max, 0.0), rhs: at_one, nodes: grid as u64 })
    })
}

/// `1phi0(a; -; q, z)` summed termwise against `(az;q)_∞/(z;q)_∞`.
pub fn verify_qbinomial(a: Complex64, z: Complex64, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("a", a.into()), ("z", z.into())]);
    run(CheckId::QBinomial, p, ctx, tol, || {
        let lhs = phi_series(&HypergeometricSpec::new(vec![a], vec![], z)?, ctx)?;
        let rhs = infinite_ratio(&[a * z], &[z], ctx)?;
        Ok(Sides { lhs, rhs, nodes: 0 })
    })
}

/// `6W5(a; b, c, d; q, aq/(bcd))` summed termwise against Rogers' product.
pub fn verify_rogers_6phi5(a: Complex64, b: Complex64, c: Complex64, d: Complex64, ctx: &QContext, tol: f64) -> VerificationReport {
    let p = params([("a", a.into()), ("b", b.into()), ("c", c.into()), ("d", d.into())]);
    run(CheckId::Rogers6phi5, p, ctx, tol, || {
        let rhs = rogers_6w5_rhs(a, b, c, d, ctx)?;
        let lhs = w_series(a, &[b, c, d], a * ctx.q() / (b * c * d), ctx)?;
        Ok(Sides { lhs, rhs, nodes: 0 })
    })
}
