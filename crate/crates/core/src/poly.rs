//! Polynomial families: continuous q-ultraspherical `C_n(x; beta|q)`, the
//! Gasper functions `C_n^(alpha,beta)(e^{i theta}; q)`, the homogeneous
//! polynomials `Phi_n^(alpha,beta)(x, y|q)`, continuous q-Hermite `H_n(x|q)`
//! and Chebyshev `T_n`, plus the orthogonality norm `h_n` and Rogers'
//! connection coefficients.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::pochhammer::{infinite_ratio, qbinom, qpoch, scaled_qpoch};
use crate::series::gf_expand;

/// Evaluation route for a polynomial family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Closed finite sum obtained from the q-binomial theorem.
    Explicit,
    /// Three-term recurrence (q-ultraspherical only).
    Recurrence,
    /// Coefficient extraction from the truncated generating function. The
    /// number of product factors grows like `log(eps_product)/log|q|`, so
    /// this is the slowest route as `|q| -> 1`.
    GenFunc,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "explicit" => Ok(Method::Explicit),
            "recurrence" => Ok(Method::Recurrence),
            "genfunc" | "gf" => Ok(Method::GenFunc),
            other => Err(format!("unknown method {other:?} (explicit, recurrence, genfunc)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ultraspherical,
    Gasper,
    Phi,
    QHermite,
    Chebyshev,
}

/// Where a family is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Point {
    /// `x = cos theta`, real in `[-1, 1]`.
    Cos(f64),
    /// The angle `theta` itself.
    Angle(f64),
    /// The bivariate point `(x, y)` of `Phi_n`.
    Pair(Complex64, Complex64),
}

/// One evaluation request. `alpha` is used by the Gasper and `Phi` families;
/// `beta` by everything except Chebyshev and q-Hermite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolynomialEval {
    pub family: Family,
    pub degree: usize,
    pub alpha: Option<Complex64>,
    pub beta: Option<Complex64>,
    pub point: Point,
    pub method: Method,
}

impl PolynomialEval {
    pub fn evaluate(&self, ctx: &QContext) -> Result<Complex64> {
        let n = self.degree;
        let need = |p: Option<Complex64>, name: &str| {
            p.ok_or_else(|| QError::domain(format!("{:?} needs parameter {name}", self.family)))
        };
        let unit = |p: Complex64, name: &str| {
            if p.norm() < 1.0 {
                Ok(p)
            } else {
                Err(QError::domain(format!("{name} must satisfy |{name}| < 1, got {p}")))
            }
        };
        match (self.family, self.point) {
            (Family::Ultraspherical, Point::Cos(x)) => {
                ultraspherical_c(n, x, unit(need(self.beta, "beta")?, "beta")?, self.method, ctx)
            }
            (Family::Ultraspherical, Point::Angle(t)) => {
                ultraspherical_c_angle(n, t, unit(need(self.beta, "beta")?, "beta")?, self.method, ctx)
            }
            (Family::Gasper, Point::Angle(t)) => gasper_c(
                n,
                t,
                unit(need(self.alpha, "alpha")?, "alpha")?,
                unit(need(self.beta, "beta")?, "beta")?,
                self.method,
                ctx,
            ),
            (Family::Phi, Point::Pair(x, y)) => {
                Ok(phi_poly(n, need(self.alpha, "alpha")?, need(self.beta, "beta")?, x, y, ctx.q()))
            }
            (Family::QHermite, Point::Cos(x)) => q_hermite(n, x, ctx),
            (Family::QHermite, Point::Angle(t)) => q_hermite(n, t.cos(), ctx),
            (Family::Chebyshev, Point::Cos(x)) => Ok(Complex64::new(chebyshev_t(n, x), 0.0)),
            (Family::Chebyshev, Point::Angle(t)) => Ok(Complex64::new(chebyshev_t_angle(n, t), 0.0)),
            (family, point) => Err(QError::domain(format!("{family:?} cannot be evaluated at {point:?}"))),
        }
    }
}

/// `(a;q)_k / (q;q)_k` for `k = 0..=n`, built by the running ratio.
pub fn binomial_weights(a: Complex64, q: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut w = Complex64::new(1.0, 0.0);
    let mut qk = Complex64::new(1.0, 0.0);
    out.push(w);
    for _ in 0..n {
        w *= (1.0 - a * qk) / (1.0 - qk * q);
        qk *= q;
        out.push(w);
    }
    out
}

fn check_cos(x: f64) -> Result<f64> {
    if x.abs() <= 1.0 {
        Ok(x)
    } else {
        Err(QError::domain(format!("x = cos(theta) must lie in [-1, 1], got {x}")))
    }
}

/// `C_n(x; beta|q)` at `x = cos(theta)`.
pub fn ultraspherical_c(n: usize, x: f64, beta: Complex64, method: Method, ctx: &QContext) -> Result<Complex64> {
    let x = check_cos(x)?;
    match method {
        Method::Recurrence => Ok(ultraspherical_recurrence(n, x, beta, ctx.q())),
        _ => ultraspherical_c_angle(n, x.acos(), beta, method, ctx),
    }
}

/// `C_n(cos theta; beta|q)` addressed by the angle.
pub fn ultraspherical_c_angle(n: usize, theta: f64, beta: Complex64, method: Method, ctx: &QContext) -> Result<Complex64> {
    let q = ctx.q();
    match method {
        Method::Explicit => {
            let w = binomial_weights(beta, q, n);
            let mut sum = Complex64::new(0.0, 0.0);
            for k in 0..=n {
                sum += w[k] * w[n - k] * ((n as f64 - 2.0 * k as f64) * theta).cos();
            }
            Ok(sum)
        }
        Method::Recurrence => Ok(ultraspherical_recurrence(n, theta.cos(), beta, q)),
        Method::GenFunc => {
            let e = Complex64::from_polar(1.0, theta);
            let s = gf_expand(&[beta * e, beta * e.conj()], &[e, e.conj()], n, ctx)?;
            Ok(s.coeff(n))
        }
    }
}

/// Forward recurrence
/// `(1 - q^{n+1}) C_{n+1} = 2x (1 - beta q^n) C_n - (1 - beta^2 q^{n-1}) C_{n-1}`
/// seeded with `C_0 = 1`, `C_1 = 2x(1 - beta)/(1 - q)`.
fn ultraspherical_recurrence(n: usize, x: f64, beta: Complex64, q: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut prev = one;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x * (one - beta) / (one - q);
    // step j produces C_{j+1} from C_j and C_{j-1}
    let mut qj_prev = one;
    let mut qj = q;
    for _ in 1..n {
        let next = (2.0 * x * (one - beta * qj) * cur - (one - beta * beta * qj_prev) * prev) / (one - qj * q);
        prev = cur;
        cur = next;
        qj_prev = qj;
        qj *= q;
    }
    cur
}

/// Gasper's two-parameter functions `C_n^(alpha,beta)(e^{i theta}; q)`, the
/// `t^n` coefficient of `(alpha t e^{i theta}, beta t e^{-i theta}; q)_∞ /
/// (t e^{i theta}, t e^{-i theta}; q)_∞`.
///
/// The explicit route is
/// `sum_k (alpha;q)_k (beta;q)_{n-k} / ((q;q)_k (q;q)_{n-k}) e^{i(2k-n) theta}`:
/// `alpha` pairs with the positive frequencies, as the generating function
/// dictates.
pub fn gasper_c(n: usize, theta: f64, alpha: Complex64, beta: Complex64, method: Method, ctx: &QContext) -> Result<Complex64> {
    let q = ctx.q();
    match method {
        Method::Explicit => {
            let wa = binomial_weights(alpha, q, n);
            let wb = binomial_weights(beta, q, n);
            let mut sum = Complex64::new(0.0, 0.0);
            for k in 0..=n {
                sum += wa[k] * wb[n - k] * Complex64::from_polar(1.0, (2.0 * k as f64 - n as f64) * theta);
            }
            Ok(sum)
        }
        Method::GenFunc => {
            let e = Complex64::from_polar(1.0, theta);
            let s = gf_expand(&[alpha * e, beta * e.conj()], &[e, e.conj()], n, ctx)?;
            Ok(s.coeff(n))
        }
        Method::Recurrence => Err(QError::domain("the Gasper functions have no three-term recurrence route")),
    }
}

/// Homogeneous polynomial
/// `Phi_n^(alpha,beta)(x, y|q) = sum_k [n,k]_q (alpha;q)_k (beta;q)_{n-k} x^k y^{n-k}`.
pub fn phi_poly(n: usize, alpha: Complex64, beta: Complex64, x: Complex64, y: Complex64, q: Complex64) -> Complex64 {
    let mut pa = vec![Complex64::new(1.0, 0.0); n + 1];
    let mut pb = vec![Complex64::new(1.0, 0.0); n + 1];
    let mut qk = Complex64::new(1.0, 0.0);
    for k in 0..n {
        pa[k + 1] = pa[k] * (1.0 - alpha * qk);
        pb[k + 1] = pb[k] * (1.0 - beta * qk);
        qk *= q;
    }
    (0..=n)
        .map(|k| qbinom(n as u64, k as i64, q) * pa[k] * pb[n - k] * x.powu(k as u32) * y.powu((n - k) as u32))
        .sum()
}

/// Continuous q-Hermite `H_n(x|q) = (q;q)_n C_n(x; 0|q)`.
pub fn q_hermite(n: usize, x: f64, ctx: &QContext) -> Result<Complex64> {
    let q = ctx.q();
    let c = ultraspherical_c(n, x, Complex64::new(0.0, 0.0), Method::Explicit, ctx)?;
    Ok(qpoch(q, q, n as i64)? * c)
}

/// `T_n(x) = cos(n arccos x)` on `[-1, 1]`, continued as
/// `sign(x)^n cosh(n arccosh |x|)` outside.
pub fn chebyshev_t(n: usize, x: f64) -> f64 {
    if x.abs() <= 1.0 {
        (n as f64 * x.acos()).cos()
    } else {
        let s = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        s * (n as f64 * x.abs().acosh()).cosh()
    }
}

/// `T_n(cos theta) = cos(n theta)`.
#[inline]
pub fn chebyshev_t_angle(n: usize, theta: f64) -> f64 {
    (n as f64 * theta).cos()
}

/// Orthogonality norm
/// `h_n = (q, beta^2; q)_∞ (q;q)_n (1 - beta q^n) / (2 pi (beta, beta q; q)_∞ (beta^2;q)_n (1 - beta))`.
pub fn h_norm(n: usize, beta: Complex64, ctx: &QContext) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if beta == one {
        return Err(QError::pole("h_n has a pole at beta = 1"));
    }
    if !(beta.norm() < 1.0) {
        return Err(QError::domain(format!("h_n needs |beta| < 1, got {beta}")));
    }
    let q = ctx.q();
    let n = n as i64;
    let ratio = infinite_ratio(&[q, beta * beta], &[beta, beta * q], ctx)?;
    let finite = qpoch(q, q, n)? * (one - beta * q.powi(n as i32)) / (qpoch(beta * beta, q, n)? * (one - beta));
    Ok(ratio * finite / (2.0 * PI))
}

/// Coefficients `c_0..c_{floor(n/2)}` with
/// `C_n(x; gamma|q) = sum_k c_k C_{n-2k}(x; beta|q)`:
/// `c_k = beta^k (gamma/beta;q)_k (gamma;q)_{n-k} (1 - beta q^{n-2k}) / ((q;q)_k (beta q;q)_{n-k} (1 - beta))`.
///
/// `beta^k (gamma/beta;q)_k` is evaluated as `prod_{j<k} (beta - gamma q^j)`,
/// so `beta = 0` is admissible.
pub fn connection_coeffs(n: usize, beta: Complex64, gamma: Complex64, ctx: &QContext) -> Result<Vec<Complex64>> {
    let one = Complex64::new(1.0, 0.0);
    if beta == one {
        return Err(QError::pole("connection coefficients have a pole at beta = 1"));
    }
    let q = ctx.q();
    (0..=n / 2)
        .map(|k| {
            let m = (n - k) as i64;
            let num = scaled_qpoch(beta, gamma, q, k) * qpoch(gamma, q, m)? * (one - beta * q.powi((n - 2 * k) as i32));
            let den = qpoch(q, q, k as i64)? * qpoch(beta * q, q, m)? * (one - beta);
            if den == Complex64::new(0.0, 0.0) {
                return Err(QError::pole(format!("connection coefficient c_{k} has a vanishing denominator")));
            }
            Ok(num / den)
        })
        .collect()
}
