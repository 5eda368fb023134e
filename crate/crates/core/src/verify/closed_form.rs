//! Right-hand sides and integrands of the identities checked in this module.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::pochhammer::{infinite_ratio, qbinom, qpoch, scaled_qpoch};
use crate::poly::{h_norm, ultraspherical_c_angle, Method};
use crate::series::SeriesSum;
use crate::QContext;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn unit_modulus(name: &str, p: Complex64) -> Result<()> {
    if p.norm() < 1.0 {
        Ok(())
    } else {
        Err(QError::domain(format!("{name} needs modulus < 1, got {p}")))
    }
}

fn nonzero_ratio(num: Complex64, den: Complex64, what: &str) -> Result<Complex64> {
    if den == ZERO {
        Err(QError::pole(format!("{what} has a vanishing denominator")))
    } else {
        Ok(num / den)
    }
}

/// `int_0^pi C_m C_n omega_beta d theta = delta_{mn} / h_n`.
pub fn ultraspherical_orthogonality(m: usize, n: usize, beta: Complex64, ctx: &QContext) -> Result<Complex64> {
    let h = h_norm(n, beta, ctx)?;
    if m != n {
        return Ok(ZERO);
    }
    nonzero_ratio(ONE, h, "1/h_n")
}

/// `int_0^pi C_m(cos theta; gamma) C_n(cos theta; beta) omega_beta d theta`.
///
/// Zero unless `m >= n` and `m ≡ n (mod 2)`; otherwise, with `k = (m - n)/2`
/// and `s = (m + n)/2`,
/// `(1 - beta q^n) beta^k (gamma/beta;q)_k (gamma;q)_s / ((1 - beta) h_n (q;q)_k (q beta;q)_s)`.
pub fn mixed_parameter_integral(m: usize, n: usize, beta: Complex64, gamma: Complex64, ctx: &QContext) -> Result<Complex64> {
    unit_modulus("gamma", gamma)?;
    let h = h_norm(n, beta, ctx)?;
    if m < n || (m - n) % 2 == 1 {
        return Ok(ZERO);
    }
    let q = ctx.q();
    let k = (m - n) / 2;
    let s = ((m + n) / 2) as i64;
    let num = (ONE - beta * q.powi(n as i32)) * scaled_qpoch(beta, gamma, q, k) * qpoch(gamma, q, s)?;
    let den = (ONE - beta) * h * qpoch(q, q, k as i64)? * qpoch(q * beta, q, s)?;
    nonzero_ratio(num, den, "mixed-parameter integral")
}

/// `2 pi (alpha, beta; q)_∞ / (q, alpha beta; q)_∞`.
fn gasper_norm_prefactor(alpha: Complex64, beta: Complex64, ctx: &QContext) -> Result<Complex64> {
    let q = ctx.q();
    Ok(2.0 * PI * infinite_ratio(&[alpha, beta], &[q, alpha * beta], ctx)?)
}

/// `(1/(1 - alpha q^n) + 1/(1 - beta q^n)) (alpha beta;q)_n / (q;q)_n`.
fn gasper_diagonal_factor(n: usize, alpha: Complex64, beta: Complex64, q: Complex64) -> Result<Complex64> {
    let qn = q.powi(n as i32);
    let da = ONE - alpha * qn;
    let db = ONE - beta * qn;
    if da == ZERO || db == ZERO {
        return Err(QError::pole(format!("1 - alpha q^n or 1 - beta q^n vanishes at n = {n}")));
    }
    let n = n as i64;
    Ok((ONE / da + ONE / db) * qpoch(alpha * beta, q, n)? / qpoch(q, q, n)?)
}

/// `int_0^{2 pi} C_m^(alpha,beta)(e^{i theta}) C_n^(alpha,beta)(e^{i theta}) omega^(alpha,beta) d theta`,
/// which vanishes off the diagonal.
pub fn gasper_orthogonality(m: usize, n: usize, alpha: Complex64, beta: Complex64, ctx: &QContext) -> Result<Complex64> {
    unit_modulus("alpha", alpha)?;
    unit_modulus("beta", beta)?;
    if m != n {
        return Ok(ZERO);
    }
    Ok(gasper_norm_prefactor(alpha, beta, ctx)? * gasper_diagonal_factor(n, alpha, beta, ctx.q())?)
}

/// Sum of the five-parameter q-beta integral,
/// `2 pi (alpha, beta)_∞/(q, alpha beta)_∞ sum_n (1/(1-alpha q^n) + 1/(1-beta q^n)) (alpha beta)_n/(q)_n (st)^n`,
/// with a certified bound on the omitted tail.
///
/// With `P_n = (alpha beta)_n/(q)_n (st)^n` the ratio `|P_{k+1}/P_k|` for
/// `k >= n` is at most `rho = |st| (1 + |alpha beta||q|^n)/(1 - |q|^{n+1})` and
/// the bracket is at most `G_n = 1/(1 - |alpha||q|^n) + 1/(1 - |beta||q|^n)`,
/// so the tail after term `n` is bounded by `|P_n| G_n rho/(1 - rho)`.
pub fn five_parameter_beta_sum(alpha: Complex64, beta: Complex64, s: Complex64, t: Complex64, ctx: &QContext) -> Result<SeriesSum> {
    for (name, p) in [("alpha", alpha), ("beta", beta), ("s", s), ("t", t)] {
        unit_modulus(name, p)?;
    }
    let q = ctx.q();
    let abs_q = q.norm();
    let u = s * t;
    let ab = alpha * beta;
    let prefactor = gasper_norm_prefactor(alpha, beta, ctx)?;
    let eps = ctx.eps_series();

    let mut p = ONE;
    let mut qn = ONE;
    let mut abs_qn = 1.0;
    let mut sum = ZERO;
    for n in 0..ctx.max_series_terms() {
        let (da, db) = (ONE - alpha * qn, ONE - beta * qn);
        sum += (ONE / da + ONE / db) * p;
        if u == ZERO {
            return Ok(SeriesSum { value: prefactor * sum, tail_bound: 0.0, terms: n + 1 });
        }
        let rho = u.norm() * (1.0 + ab.norm() * abs_qn) / (1.0 - abs_qn * abs_q);
        if rho < 1.0 {
            let g = 1.0 / (1.0 - alpha.norm() * abs_qn) + 1.0 / (1.0 - beta.norm() * abs_qn);
            let tail = p.norm() * g * rho / (1.0 - rho);
            if tail <= eps * sum.norm() {
                return Ok(SeriesSum { value: prefactor * sum, tail_bound: tail * prefactor.norm(), terms: n + 1 });
            }
        }
        p *= u * (ONE - ab * qn) / (ONE - qn * q);
        qn *= q;
        abs_qn *= abs_q;
        if !sum.is_finite() || !p.is_finite() {
            break;
        }
    }
    Err(QError::convergence(format!(
        "five-parameter beta sum did not certify its tail within {} terms (|st| = {})",
        ctx.max_series_terms(),
        u.norm()
    )))
}

/// Integrand of the five-parameter q-beta integral,
/// `(alpha t e, beta t/e, alpha s e, beta s/e, e^2, e^-2)_∞ / (t e, t/e, s e, s/e, alpha e^2, beta e^-2)_∞`
/// with `e = e^{i theta}`.
pub fn five_parameter_beta_integrand(theta: f64, alpha: Complex64, beta: Complex64, s: Complex64, t: Complex64, ctx: &QContext) -> Result<Complex64> {
    let e = Complex64::from_polar(1.0, theta);
    let ei = e.conj();
    let e2 = e * e;
    let e2i = e2.conj();
    infinite_ratio(
        &[alpha * t * e, beta * t * ei, alpha * s * e, beta * s * ei, e2, e2i],
        &[t * e, t * ei, s * e, s * ei, alpha * e2, beta * e2i],
        ctx,
    )
}

/// `max(|a|, |b|, |cx|, |cy|, |ax/y|, |by/x|)`, the convergence parameter of
/// the nonterminating q-Saalschütz integral.
pub fn saalschutz_modulus(a: Complex64, b: Complex64, c: Complex64, x: Complex64, y: Complex64) -> f64 {
    [a, b, c * x, c * y, a * x / y, b * y / x].iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_saalschutz(a: Complex64, b: Complex64, c: Complex64, x: Complex64, y: Complex64) -> Result<()> {
    if x == ZERO || y == ZERO {
        return Err(QError::domain("endpoints x and y must be nonzero"));
    }
    let m = saalschutz_modulus(a, b, c, x, y);
    if m < 1.0 {
        Ok(())
    } else {
        Err(QError::domain(format!("max(|a|,|b|,|cx|,|cy|,|ax/y|,|by/x|) = {m} is not < 1")))
    }
}

/// `(qz/x, qz/y, abcz)_∞ / (az/y, bz/x, cz)_∞`.
pub fn saalschutz_integrand(z: Complex64, a: Complex64, b: Complex64, c: Complex64, x: Complex64, y: Complex64, ctx: &QContext) -> Result<Complex64> {
    let q = ctx.q();
    infinite_ratio(&[q * z / x, q * z / y, a * b * c * z], &[a * z / y, b * z / x, c * z], ctx)
}

/// `int_x^y (qz/x, qz/y, abcz)_∞/(az/y, bz/x, cz)_∞ d_q z
///  = (1 - q) y (q, x/y, qy/x, ab, acx, bcy)_∞ / (ax/y, by/x, a, b, cx, cy)_∞`.
pub fn saalschutz_integral(a: Complex64, b: Complex64, c: Complex64, x: Complex64, y: Complex64, ctx: &QContext) -> Result<Complex64> {
    check_saalschutz(a, b, c, x, y)?;
    let q = ctx.q();
    let ratio = infinite_ratio(
        &[q, x / y, q * y / x, a * b, a * c * x, b * c * y],
        &[a * x / y, b * y / x, a, b, c * x, c * y],
        ctx,
    )?;
    Ok((ONE - q) * y * ratio)
}

/// `(qz/x, qz/y)_∞ z^n / (bz/x, az/y)_∞`.
pub fn phi_poly_integrand(z: Complex64, n: usize, a: Complex64, b: Complex64, x: Complex64, y: Complex64, ctx: &QContext) -> Result<Complex64> {
    let q = ctx.q();
    Ok(infinite_ratio(&[q * z / x, q * z / y], &[b * z / x, a * z / y], ctx)? * z.powi(n as i32))
}

/// Prefactor turning the Jackson integral of [`phi_poly_integrand`] into
/// `Phi_n^(a,b)(x, y|q)`:
/// `(ab;q)_n (a, b, by/x, ax/y)_∞ / ((1 - q) y (q, ab, x/y, qy/x)_∞)`.
pub fn phi_poly_prefactor(n: usize, a: Complex64, b: Complex64, x: Complex64, y: Complex64, ctx: &QContext) -> Result<Complex64> {
    if x == ZERO || y == ZERO {
        return Err(QError::domain("endpoints x and y must be nonzero"));
    }
    let q = ctx.q();
    let ratio = infinite_ratio(&[a, b, b * y / x, a * x / y], &[q, a * b, x / y, q * y / x], ctx)?;
    Ok(qpoch(a * b, q, n as i64)? * ratio / ((ONE - q) * y))
}

/// `int_0^pi C_n(cos theta; beta) T_{n+2k}(cos theta) omega_beta d theta` for `k >= 1`:
/// `pi [n+k, k]_q (1 - q^{n+2k})/(1 - q^{n+k}) (beta, beta q^{n+k+1})_∞/(q, beta^2 q^n)_∞ beta^k (1/beta;q)_k`.
pub fn chebyshev_projection(n: usize, k: usize, beta: Complex64, ctx: &QContext) -> Result<Complex64> {
    if k == 0 {
        return Err(QError::domain("the Chebyshev projection needs k >= 1"));
    }
    unit_modulus("beta", beta)?;
    let q = ctx.q();
    let nk = (n + k) as i32;
    let ratio = infinite_ratio(&[beta, beta * q.powi(nk + 1)], &[q, beta * beta * q.powi(n as i32)], ctx)?;
    let front = qbinom((n + k) as u64, k as i64, q) * nonzero_ratio(ONE - q.powi(nk + k as i32), ONE - q.powi(nk), "(1 - q^{n+2k})/(1 - q^{n+k})")?;
    Ok(PI * front * ratio * scaled_qpoch(beta, ONE, q, k))
}

/// Coefficient of `t^d` in
/// `sum_{j,m} (1 - beta q^m) beta^j (gamma/beta)_j (gamma)_{j+m} / ((q)_j (beta)_{m+j+1}) C_m(cos theta; beta) t^{m+2j}`,
/// for `d = 0..=degree`.
pub fn connection_expansion_coeffs(beta: Complex64, gamma: Complex64, theta: f64, degree: usize, ctx: &QContext) -> Result<Vec<Complex64>> {
    let q = ctx.q();
    let poly: Vec<Complex64> = (0..=degree)
        .map(|m| ultraspherical_c_angle(m, theta, beta, Method::Explicit, ctx))
        .collect::<Result<_>>()?;
    (0..=degree)
        .map(|d| {
            let mut acc = ZERO;
            for j in 0..=d / 2 {
                let m = d - 2 * j;
                let num = (ONE - beta * q.powi(m as i32)) * scaled_qpoch(beta, gamma, q, j) * qpoch(gamma, q, (j + m) as i64)?;
                let den = qpoch(q, q, j as i64)? * qpoch(beta, q, (m + j + 1) as i64)?;
                acc += nonzero_ratio(num, den, "connection expansion coefficient")? * poly[m];
            }
            Ok(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::{jackson_q_integral, weight_omega_beta};
    use crate::pochhammer::qpoch_infinite;
    use crate::{c, cx};

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
    }

    #[test]
    fn q_hermite_norm() {
        let qc = ctx(0.3);
        // H_m = (q;q)_m C_m(x; 0|q) has squared norm 2 pi (q;q)_m / (q;q)_∞.
        for m in 0..5 {
            let qm = qpoch(c(0.3), c(0.3), m as i64).unwrap();
            let expected = 2.0 * PI * qm / qpoch_infinite(c(0.3), &qc).unwrap();
            let hermite = ultraspherical_orthogonality(m, m, c(0.0), &qc).unwrap() * qm * qm;
            assert!(close(hermite, expected, 1e-14));
        }
        assert_eq!(ultraspherical_orthogonality(1, 3, c(0.5), &qc).unwrap(), c(0.0));
    }

    #[test]
    fn mixed_parameter_reduces_to_orthogonality() {
        let qc = ctx(0.4);
        for m in 0..7 {
            for n in 0..7 {
                let mixed = mixed_parameter_integral(m, n, c(0.25), c(0.25), &qc).unwrap();
                let plain = ultraspherical_orthogonality(m, n, c(0.25), &qc).unwrap();
                assert!(close(mixed, plain, 1e-14), "{m} {n}");
            }
        }
    }

    #[test]
    fn mixed_parameter_vanishing_cells() {
        let qc = ctx(0.4);
        assert_eq!(mixed_parameter_integral(2, 1, c(0.25), c(0.5), &qc).unwrap(), c(0.0));
        assert_eq!(mixed_parameter_integral(2, 4, c(0.25), c(0.5), &qc).unwrap(), c(0.0));
        assert!(mixed_parameter_integral(4, 2, c(0.25), c(0.5), &qc).unwrap().norm() > 0.0);
    }

    #[test]
    fn gasper_diagonal_doubles_the_symmetric_norm() {
        let qc = ctx(0.3);
        for n in 0..6 {
            let two_param = gasper_orthogonality(n, n, c(0.6), c(0.6), &qc).unwrap();
            let one_param = ultraspherical_orthogonality(n, n, c(0.6), &qc).unwrap();
            assert!(close(two_param, 2.0 * one_param, 1e-13), "n = {n}");
        }
    }

    #[test]
    fn five_parameter_sum_at_s_zero() {
        let qc = ctx(0.3);
        let (a, b) = (c(0.5), c(0.2));
        let s = five_parameter_beta_sum(a, b, c(0.0), c(0.25), &qc).unwrap();
        let expected = gasper_norm_prefactor(a, b, &qc).unwrap() * (1.0 / 0.5 + 1.0 / 0.8);
        assert!(close(s.value, expected, 1e-15));
        assert_eq!(s.terms, 1);
        assert_eq!(s.tail_bound, 0.0);
    }

    #[test]
    fn five_parameter_sum_is_the_resummed_diagonal() {
        let qc = ctx(0.3);
        let (a, st) = (c(0.4), c(0.04));
        let s = five_parameter_beta_sum(a, a, c(0.2), c(0.2), &qc).unwrap();
        let mut direct = c(0.0);
        for n in 0..40 {
            direct += gasper_orthogonality(n, n, a, a, &qc).unwrap() * st.powi(n as i32);
        }
        assert!(close(s.value, direct, 1e-14));
        assert!(s.tail_bound <= 1e-12 * s.value.norm());
    }

    #[test]
    fn five_parameter_sum_rejects_unbounded_tail() {
        let settings = crate::ContextSettings { max_series_terms: 16, ..Default::default() };
        let qc = QContext::with_settings(0.3, settings).unwrap();
        let err = five_parameter_beta_sum(c(0.5), c(0.2), c(0.999), c(0.999), &qc).unwrap_err();
        assert!(matches!(err, QError::Convergence(_)));
    }

    #[test]
    fn saalschutz_at_coinciding_endpoints() {
        let qc = ctx(0.35);
        let v = saalschutz_integral(c(0.3), c(0.2), c(0.4), c(0.5), c(0.5), &qc).unwrap();
        assert_eq!(v, c(0.0));
    }

    #[test]
    fn saalschutz_with_c_zero() {
        let qc = ctx(0.35);
        let (a, b, x, y) = (c(0.3), c(0.2), c(0.5), c(0.7));
        let lhs = jackson_q_integral(|z| saalschutz_integrand(z, a, b, c(0.0), x, y, &qc), x, y, &qc).unwrap();
        let rhs = saalschutz_integral(a, b, c(0.0), x, y, &qc).unwrap();
        assert!(close(lhs, rhs, 1e-12), "{lhs} {rhs}");
    }

    #[test]
    fn saalschutz_domain() {
        let qc = ctx(0.35);
        assert!(matches!(saalschutz_integral(c(0.3), c(0.2), c(0.4), c(0.1), c(0.7), &qc), Err(QError::Domain(_))));
        assert!(matches!(saalschutz_integral(c(0.3), c(0.2), c(0.4), c(0.0), c(0.7), &qc), Err(QError::Domain(_))));
    }

    #[test]
    fn phi_poly_prefactor_pole_at_equal_endpoints() {
        let qc = ctx(0.3);
        let err = phi_poly_prefactor(1, c(0.3), c(0.2), c(0.5), c(0.5), &qc).unwrap_err();
        assert!(matches!(err, QError::Pole(_)));
    }

    #[test]
    fn phi_zero_representation_with_vanishing_parameters() {
        let qc = ctx(0.3);
        let (x, y) = (cx(0.8, 0.3), cx(0.6, -0.5));
        let pre = phi_poly_prefactor(0, c(0.0), c(0.0), x, y, &qc).unwrap();
        let int = jackson_q_integral(|z| phi_poly_integrand(z, 0, c(0.0), c(0.0), x, y, &qc), x, y, &qc).unwrap();
        assert!(close(pre * int, c(1.0), 1e-12));
    }

    #[test]
    fn chebyshev_projection_first_case() {
        // n = 0, k = 1: pi (1 - q^2)/(1 - q) (beta, beta q^2)_∞/(q, beta^2)_∞ (beta - 1).
        let qc = ctx(0.3);
        let beta = c(0.5);
        let expected = PI * (1.0 + 0.3) * infinite_ratio(&[beta, beta * 0.09], &[c(0.3), beta * beta], &qc).unwrap() * (beta - 1.0);
        assert!(close(chebyshev_projection(0, 1, beta, &qc).unwrap(), expected, 1e-15));
        assert!(matches!(chebyshev_projection(0, 0, beta, &qc), Err(QError::Domain(_))));
    }

    #[test]
    fn connection_expansion_first_coefficients() {
        let qc = ctx(0.4);
        let coeffs = connection_expansion_coeffs(c(0.3), c(0.6), 1.1, 4, &qc).unwrap();
        assert!(close(coeffs[0], c(1.0), 1e-15));
        let c1 = ultraspherical_c_angle(1, 1.1, c(0.6), Method::Explicit, &qc).unwrap();
        assert!(close(coeffs[1], c1, 1e-14));
    }

    #[test]
    fn connection_expansion_at_equal_parameters() {
        let qc = ctx(0.4);
        let coeffs = connection_expansion_coeffs(c(0.3), c(0.3), 0.7, 10, &qc).unwrap();
        for (d, v) in coeffs.iter().enumerate() {
            let direct = ultraspherical_c_angle(d, 0.7, c(0.3), Method::Explicit, &qc).unwrap();
            assert!(close(*v, direct, 1e-14), "d = {d}");
        }
    }

    /// The inner resummation behind the connection expansion:
    /// `sum_n (q beta/gamma)_n (gamma t^2 q^n)_∞ / ((q)_n (beta t^2 q^n)_∞) (gamma q^m)^n
    ///  = (beta)_∞/(gamma)_∞ sum_j (gamma/beta)_j (gamma)_{m+j} / ((q)_j (beta)_{m+j+1}) beta^j t^{2j}`.
    #[test]
    fn inner_resummation() {
        let qc = ctx(0.4);
        let q = c(0.4);
        let (beta, gamma, t) = (c(0.3), c(0.6), c(0.45));
        let t2 = t * t;
        for m in 0..5usize {
            let mut lhs = c(0.0);
            let mut weight = c(1.0);
            let mut qn = c(1.0);
            for n in 0..200 {
                let term = weight * infinite_ratio(&[gamma * t2 * qn], &[beta * t2 * qn], &qc).unwrap();
                lhs += term;
                if term.norm() < 1e-18 {
                    break;
                }
                weight *= (c(1.0) - q * beta / gamma * qn) / (c(1.0) - q * qn) * gamma * q.powi(m as i32);
                qn *= q;
                assert!(n < 199);
            }
            let mut inner = c(0.0);
            for j in 0..200usize {
                let num = scaled_qpoch(beta, gamma, q, j) * qpoch(gamma, q, (m + j) as i64).unwrap() * t2.powi(j as i32);
                let term = num / (qpoch(q, q, j as i64).unwrap() * qpoch(beta, q, (m + j + 1) as i64).unwrap());
                inner += term;
                if term.norm() < 1e-18 {
                    break;
                }
            }
            let rhs = infinite_ratio(&[beta], &[gamma], &qc).unwrap() * inner;
            assert!(close(lhs, rhs, 1e-13), "m = {m}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn omega_is_even() {
        let qc = ctx(0.3);
        let a = weight_omega_beta(0.7, c(0.4), &qc).unwrap();
        let b = weight_omega_beta(-0.7, c(0.4), &qc).unwrap();
        assert!(close(a, b, 1e-15));
    }
}
