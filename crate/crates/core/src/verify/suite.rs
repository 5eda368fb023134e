//! Check descriptions, suite configuration and the parallel runner.

use std::cmp::Ordering;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{self, params, CheckId, Params, TolerancePolicy};
use super::report::{complex, VerificationReport};
use crate::context::{ContextSettings, QContext};
use crate::pochhammer::vanishing_factor;

/// Seed of the randomized parameter clouds in [`SuiteConfig::standard`].
/// Cloud `i` uses `SUITE_SEED + i`.
pub const SUITE_SEED: u64 = 0x9e37_79b9;

fn default_connection_grid() -> usize {
    16
}

fn default_bound_grid() -> usize {
    64
}

/// One check with its parameters. Serialised with a `"check"` tag holding the
/// check id; complex parameters accept a number or an `[re, im]` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", deny_unknown_fields)]
pub enum Check {
    #[serde(rename = "thm-1.1")]
    UltrasphericalOrthogonality {
        m: usize,
        n: usize,
        #[serde(with = "complex::flexible")]
        beta: Complex64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
    #[serde(rename = "thm-1.2")]
    MixedParameterIntegral {
        m: usize,
        n: usize,
        #[serde(with = "complex::flexible")]
        beta: Complex64,
        #[serde(with = "complex::flexible")]
        gamma: Complex64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
    #[serde(rename = "thm-1.3")]
    GasperOrthogonality {
        m: usize,
        n: usize,
        #[serde(with = "complex::flexible")]
        alpha: Complex64,
        #[serde(with = "complex::flexible")]
        beta: Complex64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
    #[serde(rename = "thm-1.4")]
    FiveParameterBeta {
        #[serde(with = "complex::flexible")]
        alpha: Complex64,
        #[serde(with = "complex::flexible")]
        beta: Complex64,
        #[serde(with = "complex::flexible")]
        s: Complex64,
        #[serde(with = "complex::flexible")]
        t: Complex64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
    #[serde(rename = "prop-3.1")]
    Saalschutz {
        #[serde(with = "complex::flexible")]
        a: Complex64,
        #[serde(with = "complex::flexible")]
        b: Complex64,
        #[serde(with = "complex::flexible")]
        c: Complex64,
        #[serde(with = "complex::flexible")]
        x: Complex64,
        #[serde(with = "complex::flexible")]
        y: Complex64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
    #[serde(rename = "prop-3.2")]
    PhiPolyIntegral {
        n: usize,
        #[serde(with = "complex::flexible")]
        a: Complex64,
        #[serde(with = "complex::flexible")]
        b: Complex64,
        #[serde(with = "complex::flexible")]
        x: Complex64,
        #[serde(with = "complex::flexible")]
        y: Complex64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
    #[serde(rename = "rogers-connection")]
    RogersConnection {
        n: usize,
        #[serde(with = "complex::flexible")]
        beta: Complex64,
        #[serde(with = "complex::flexible")]
        gamma: Complex64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
        #[serde(default = "default_connection_grid")]
        grid: usize,
    },
    #[serde(rename = "askey-ismail")]
    AskeyIsmail {
        n: usize,
        k: usize,
        #[serde(with = "complex::flexible")]
        beta: Complex64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
    #[serde(rename = "gf-4.1")]
    WeightedGeneratingFunction {
        #[serde(with = "complex::flexible")]
        beta: Complex64,
        theta: f64,
        degree: usize,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
    #[serde(rename = "prop-4.2")]
    ConnectionExpansion {
        #[serde(with = "complex::flexible")]
        beta: Complex64,
        #[serde(with = "complex::flexible")]
        gamma: Complex64,
        theta: f64,
        degree: usize,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
    #[serde(rename = "uniform-bound")]
    UniformBound {
        n: usize,
        alpha: f64,
        beta: f64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
        #[serde(default = "default_bound_grid")]
        grid: usize,
    },
    #[serde(rename = "qbinomial")]
    QBinomial {
        #[serde(with = "complex::flexible")]
        a: Complex64,
        #[serde(with = "complex::flexible")]
        z: Complex64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
    #[serde(rename = "rogers-6phi5")]
    Rogers6phi5 {
        #[serde(with = "complex::flexible")]
        a: Complex64,
        #[serde(with = "complex::flexible")]
        b: Complex64,
        #[serde(with = "complex::flexible")]
        c: Complex64,
        #[serde(with = "complex::flexible")]
        d: Complex64,
        #[serde(with = "complex::flexible")]
        q: Complex64,
    },
}

impl Check {
    pub fn id(&self) -> CheckId {
        match self {
            Check::UltrasphericalOrthogonality { .. } => CheckId::UltrasphericalOrthogonality,
            Check::MixedParameterIntegral { .. } => CheckId::MixedParameterIntegral,
            Check::GasperOrthogonality { .. } => CheckId::GasperOrthogonality,
            Check::FiveParameterBeta { .. } => CheckId::FiveParameterBeta,
            Check::Saalschutz { .. } => CheckId::Saalschutz,
            Check::PhiPolyIntegral { .. } => CheckId::PhiPolyIntegral,
            Check::RogersConnection { .. } => CheckId::RogersConnection,
            Check::AskeyIsmail { .. } => CheckId::AskeyIsmail,
            Check::WeightedGeneratingFunction { .. } => CheckId::WeightedGeneratingFunction,
            Check::ConnectionExpansion { .. } => CheckId::ConnectionExpansion,
            Check::UniformBound { .. } => CheckId::UniformBound,
            Check::QBinomial { .. } => CheckId::QBinomial,
            Check::Rogers6phi5 { .. } => CheckId::Rogers6phi5,
        }
    }

    pub fn q(&self) -> Complex64 {
        match *self {
            Check::UltrasphericalOrthogonality { q, .. }
            | Check::MixedParameterIntegral { q, .. }
            | Check::GasperOrthogonality { q, .. }
            | Check::FiveParameterBeta { q, .. }
            | Check::Saalschutz { q, .. }
            | Check::PhiPolyIntegral { q, .. }
            | Check::RogersConnection { q, .. }
            | Check::AskeyIsmail { q, .. }
            | Check::WeightedGeneratingFunction { q, .. }
            | Check::ConnectionExpansion { q, .. }
            | Check::UniformBound { q, .. }
            | Check::QBinomial { q, .. }
            | Check::Rogers6phi5 { q, .. } => q,
        }
    }

    /// Parameters as they appear in the report.
    pub fn params(&self) -> Params {
        let mut p = match *self {
            Check::UltrasphericalOrthogonality { m, n, beta, .. } => {
                params([("m", m.into()), ("n", n.into()), ("beta", beta.into())])
            }
            Check::MixedParameterIntegral { m, n, beta, gamma, .. } => {
                params([("m", m.into()), ("n", n.into()), ("beta", beta.into()), ("gamma", gamma.into())])
            }
            Check::GasperOrthogonality { m, n, alpha, beta, .. } => {
                params([("m", m.into()), ("n", n.into()), ("alpha", alpha.into()), ("beta", beta.into())])
            }
            Check::FiveParameterBeta { alpha, beta, s, t, .. } => {
                params([("alpha", alpha.into()), ("beta", beta.into()), ("s", s.into()), ("t", t.into())])
            }
            Check::Saalschutz { a, b, c, x, y, .. } => {
                params([("a", a.into()), ("b", b.into()), ("c", c.into()), ("x", x.into()), ("y", y.into())])
            }
            Check::PhiPolyIntegral { n, a, b, x, y, .. } => {
                params([("n", n.into()), ("a", a.into()), ("b", b.into()), ("x", x.into()), ("y", y.into())])
            }
            Check::RogersConnection { n, beta, gamma, grid, .. } => {
                params([("n", n.into()), ("beta", beta.into()), ("gamma", gamma.into()), ("grid", grid.into())])
            }
            Check::AskeyIsmail { n, k, beta, .. } => params([("n", n.into()), ("k", k.into()), ("beta", beta.into())]),
            Check::WeightedGeneratingFunction { beta, theta, degree, .. } => {
                params([("beta", beta.into()), ("theta", theta.into()), ("degree", degree.into())])
            }
            Check::ConnectionExpansion { beta, gamma, theta, degree, .. } => params([
                ("beta", beta.into()),
                ("gamma", gamma.into()),
                ("theta", theta.into()),
                ("degree", degree.into()),
            ]),
            Check::UniformBound { n, alpha, beta, grid, .. } => {
                params([("n", n.into()), ("alpha", alpha.into()), ("beta", beta.into()), ("grid", grid.into())])
            }
            Check::QBinomial { a, z, .. } => params([("a", a.into()), ("z", z.into())]),
            Check::Rogers6phi5 { a, b, c, d, .. } => {
                params([("a", a.into()), ("b", b.into()), ("c", c.into()), ("d", d.into())])
            }
        };
        p.insert("q".to_string(), self.q().into());
        p
    }

    /// Runs the check under `settings` with tolerance `tol`.
    pub fn run(&self, settings: &ContextSettings, tol: f64) -> VerificationReport {
        let ctx = match QContext::with_settings(self.q(), *settings) {
            Ok(ctx) => ctx,
            Err(e) => return VerificationReport::failed(self.id().as_str(), self.params(), tol, e.to_string()),
        };
        let ctx = &ctx;
        match *self {
            Check::UltrasphericalOrthogonality { m, n, beta, .. } => checks::verify_ultraspherical_orthogonality(m, n, beta, ctx, tol),
            Check::MixedParameterIntegral { m, n, beta, gamma, .. } => checks::verify_mixed_parameter_integral(m, n, beta, gamma, ctx, tol),
            Check::GasperOrthogonality { m, n, alpha, beta, .. } => checks::verify_gasper_orthogonality(m, n, alpha, beta, ctx, tol),
            Check::FiveParameterBeta { alpha, beta, s, t, .. } => checks::verify_five_parameter_beta(alpha, beta, s, t, ctx, tol),
            Check::Saalschutz { a, b, c, x, y, .. } => checks::verify_saalschutz(a, b, c, x, y, ctx, tol),
            Check::PhiPolyIntegral { n, a, b, x, y, .. } => checks::verify_phi_poly_integral(n, a, b, x, y, ctx, tol),
            Check::RogersConnection { n, beta, gamma, grid, .. } => {
                checks::verify_rogers_connection(n, beta, gamma, grid, ctx, tol)
            }
            Check::AskeyIsmail { n, k, beta, .. } => checks::verify_askey_ismail_chebyshev(n, k, beta, ctx, tol),
            Check::WeightedGeneratingFunction { beta, theta, degree, .. } => {
                checks::verify_weighted_generating_function(beta, theta, degree, ctx, tol)
            }
            Check::ConnectionExpansion { beta, gamma, theta, degree, .. } => {
                checks::verify_connection_expansion(beta, gamma, theta, degree, ctx, tol)
            }
            Check::UniformBound { n, alpha, beta, grid, .. } => checks::verify_uniform_bound(n, alpha, beta, grid, ctx, tol),
            Check::QBinomial { a, z, .. } => checks::verify_qbinomial(a, z, ctx, tol),
            Check::Rogers6phi5 { a, b, c, d, .. } => checks::verify_rogers_6phi5(a, b, c, d, ctx, tol),
        }
    }
}

/// Checks to run and the numeric policy to run them under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub checks: Vec<Check>,
    /// Default tolerance per check kind.
    #[serde(default)]
    pub tolerances: TolerancePolicy,
    /// When set, replaces the tolerance of every check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default)]
    pub settings: ContextSettings,
}

/// Reports in deterministic order and their conjunction.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub reports: Vec<VerificationReport>,
    pub pass: bool,
}

impl SuiteResult {
    pub fn passed(&self) -> usize {
        self.reports.iter().filter(|r| r.pass).count()
    }

    /// `PASS k/k` or `FAIL j/k` with `j` passing reports out of `k`.
    pub fn summary(&self) -> String {
        let word = if self.pass { "PASS" } else { "FAIL" };
        format!("{word} {}/{}", self.passed(), self.reports.len())
    }
}

impl SuiteConfig {
    /// A configuration with no checks.
    pub fn empty() -> Self {
        SuiteConfig {
            checks: Vec::new(),
            tolerances: TolerancePolicy::default(),
            tol: None,
            settings: ContextSettings::default(),
        }
    }

    /// The standard suite: parameter grids and seeded random clouds covering
    /// every check.
    pub fn standard() -> Self {
        let mut checks = Vec::new();
        checks.extend(grids::ultraspherical_gram(8, 0.3, 0.6));
        checks.extend((0..=6).map(|n| Check::UltrasphericalOrthogonality { m: n, n, beta: c(0.0), q: c(0.5) }));
        checks.extend(grids::mixed_parameter(8, 0.25, 0.5, 0.4));
        checks.extend(grids::gasper_gram(6, 0.4, -0.3, 0.35));
        checks.push(Check::GasperOrthogonality { m: 3, n: 3, alpha: c(0.6), beta: c(0.6), q: c(0.3) });
        checks.push(Check::FiveParameterBeta { alpha: c(0.5), beta: c(0.2), s: c(0.3), t: c(0.25), q: c(0.3) });
        checks.push(Check::FiveParameterBeta { alpha: c(0.5), beta: c(0.2), s: c(0.0), t: c(0.25), q: c(0.3) });
        checks.extend(clouds::five_parameter_beta(SUITE_SEED, 10));
        checks.extend(clouds::saalschutz(SUITE_SEED + 1, 10));
        checks.extend(grids::phi_poly(10));
        checks.extend((0..=12).map(|n| Check::RogersConnection { n, beta: c(0.4), gamma: c(0.7), q: c(0.3), grid: 16 }));
        checks.extend((0..=12).map(|n| Check::RogersConnection { n, beta: c(0.4), gamma: c(0.4), q: c(0.3), grid: 16 }));
        for n in 0..=6 {
            for k in 1..=4 {
                checks.push(Check::AskeyIsmail { n, k, beta: c(0.5), q: c(0.3) });
            }
        }
        checks.push(Check::WeightedGeneratingFunction { beta: c(0.3), theta: 1.1, degree: 16, q: c(0.4) });
        checks.push(Check::WeightedGeneratingFunction { beta: c(0.5), theta: 0.9, degree: 16, q: c(0.3) });
        checks.push(Check::ConnectionExpansion { beta: c(0.3), gamma: c(0.6), theta: 1.1, degree: 16, q: c(0.4) });
        checks.extend(clouds::uniform_bound(SUITE_SEED + 2, 20, 15, 64));
        checks.extend(clouds::qbinomial(SUITE_SEED + 3, 10));
        checks.extend(clouds::rogers_6phi5(SUITE_SEED + 4, 20));
        checks.extend(clouds::rogers_6phi5_terminating(SUITE_SEED + 5, 5));
        SuiteConfig { checks, ..SuiteConfig::empty() }
    }

    /// Keeps only the checks whose id is in `ids`.
    pub fn only(mut self, ids: &[CheckId]) -> Self {
        self.checks.retain(|c| ids.contains(&c.id()));
        self
    }

    pub fn tolerance_for(&self, id: CheckId) -> f64 {
        self.tol.unwrap_or_else(|| self.tolerances.for_check(id))
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn param_order(a: &Params, b: &Params) -> Ordering {
    for ((ka, va), (kb, vb)) in a.iter().zip(b.iter()) {
        let o = ka
            .cmp(kb)
            .then_with(|| va.0.re.total_cmp(&vb.0.re))
            .then_with(|| va.0.im.total_cmp(&vb.0.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Runs every check of `config` (concurrently) and returns the reports
/// ordered by check id, then by parameter tuple.
pub fn run_suite(config: &SuiteConfig) -> SuiteResult {
    let mut reports: Vec<VerificationReport> = config
        .checks
        .par_iter()
        .map(|check| check.run(&config.settings, config.tolerance_for(check.id())))
        .collect();
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id).then_with(|| param_order(&a.params, &b.params)));
    let pass = reports.iter().all(|r| r.pass);
    SuiteResult { reports, pass }
}

/// Deterministic parameter grids.
pub mod grids {
    use super::*;

    /// `(m, n)` for `m, n <= max` at fixed `beta`.
    pub fn ultraspherical_gram(max: usize, q: f64, beta: f64) -> Vec<Check> {
        let mut v = Vec::new();
        for m in 0..=max {
            for n in 0..=max {
                v.push(Check::UltrasphericalOrthogonality { m, n, beta: c(beta), q: c(q) });
            }
        }
        v
    }

    pub fn mixed_parameter(max: usize, beta: f64, gamma: f64, q: f64) -> Vec<Check> {
        let mut v = Vec::new();
        for m in 0..=max {
            for n in 0..=max {
                v.push(Check::MixedParameterIntegral { m, n, beta: c(beta), gamma: c(gamma), q: c(q) });
            }
        }
        v
    }

    pub fn gasper_gram(max: usize, alpha: f64, beta: f64, q: f64) -> Vec<Check> {
        let mut v = Vec::new();
        for m in 0..=max {
            for n in 0..=max {
                v.push(Check::GasperOrthogonality { m, n, alpha: c(alpha), beta: c(beta), q: c(q) });
            }
        }
        v
    }

    /// `n <= max` at `a = 0.3, b = 0.2, x = 0.8 e^{0.4i}, y = conj(x), q = 0.3`.
    pub fn phi_poly(max: usize) -> Vec<Check> {
        let x = Complex64::from_polar(0.8, 0.4);
        (0..=max)
            .map(|n| Check::PhiPolyIntegral { n, a: c(0.3), b: c(0.2), x, y: x.conj(), q: c(0.3) })
            .collect()
    }
}

/// Seeded random parameter draws.
pub mod clouds {
    use super::*;

    fn polar(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> Complex64 {
        let r = rng.gen_range(r_min..r_max);
        let phi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        Complex64::from_polar(r, phi)
    }

    /// Smallest `|1 - x q^k|` over the factors with `|x q^k| >= 1/2`.
    fn closest_factor(x: Complex64, q: Complex64) -> f64 {
        let mut best = f64::INFINITY;
        let mut xqk = x;
        while xqk.norm() >= 0.5 {
            best = best.min((Complex64::new(1.0, 0.0) - xqk).norm());
            xqk *= q;
        }
        best
    }

    /// Complex `alpha, beta, s, t` of modulus below 0.6, real `q` in `(0.1, 0.6)`.
    pub fn five_parameter_beta(seed: u64, count: usize) -> Vec<Check> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| Check::FiveParameterBeta {
                alpha: polar(&mut rng, 0.0, 0.6),
                beta: polar(&mut rng, 0.0, 0.6),
                s: polar(&mut rng, 0.0, 0.6),
                t: polar(&mut rng, 0.0, 0.6),
                q: c(rng.gen_range(0.1..0.6)),
            })
            .collect()
    }

    /// Complex parameters with `max(|a|,|b|,|cx|,|cy|,|ax/y|,|by/x|) < 0.9` and
    /// `|x - y| > 0.1`; real `q` in `(0.1, 0.6)`.
    pub fn saalschutz(seed: u64, count: usize) -> Vec<Check> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = Vec::with_capacity(count);
        while v.len() < count {
            let (a, b, cc) = (polar(&mut rng, 0.0, 0.8), polar(&mut rng, 0.0, 0.8), polar(&mut rng, 0.0, 0.9));
            let (x, y) = (polar(&mut rng, 0.3, 1.0), polar(&mut rng, 0.3, 1.0));
            let q = c(rng.gen_range(0.1..0.6));
            if super::super::closed_form::saalschutz_modulus(a, b, cc, x, y) < 0.9 && (x - y).norm() > 0.1 {
                v.push(Check::Saalschutz { a, b, c: cc, x, y, q });
            }
        }
        v
    }

    /// Real `alpha, beta` in `(-0.95, 0.95)` and `q` in `(-0.9, 0.9)`, each draw
    /// checked for every degree `0..=max_degree`.
    pub fn uniform_bound(seed: u64, draws: usize, max_degree: usize, grid: usize) -> Vec<Check> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = Vec::new();
        for _ in 0..draws {
            let alpha = rng.gen_range(-0.95..0.95);
            let beta = rng.gen_range(-0.95..0.95);
            let q = c(rng.gen_range(-0.9..0.9));
            v.extend((0..=max_degree).map(|n| Check::UniformBound { n, alpha, beta, q, grid }));
        }
        v
    }

    /// Complex `a` with `|a| < 2`, `z` with `|z| < 0.8`, `q` with `|q| < 0.7`.
    pub fn qbinomial(seed: u64, count: usize) -> Vec<Check> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| Check::QBinomial {
                a: polar(&mut rng, 0.0, 2.0),
                z: polar(&mut rng, 0.0, 0.8),
                q: polar(&mut rng, 0.05, 0.7),
            })
            .collect()
    }

    /// Nonterminating draws with `|aq/bcd| < 0.9`: complex `q` with
    /// `0.1 < |q| < 0.7`, `|a| < 0.9`, `0.4 < |b|, |c|, |d| < 0.95`, and every
    /// lower parameter kept at distance 0.1 from the poles `q^{-k}`.
    pub fn rogers_6phi5(seed: u64, count: usize) -> Vec<Check> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = Vec::with_capacity(count);
        while v.len() < count {
            let q = polar(&mut rng, 0.1, 0.7);
            let a = polar(&mut rng, 0.05, 0.9);
            let (b, cc, d) = (polar(&mut rng, 0.4, 0.95), polar(&mut rng, 0.4, 0.95), polar(&mut rng, 0.4, 0.95));
            let z = a * q / (b * cc * d);
            let lower = [a * q / b, a * q / cc, a * q / d, z];
            if z.norm() < 0.9 && lower.iter().all(|&x| closest_factor(x, q) > 0.1) {
                v.push(Check::Rogers6phi5 { a, b, c: cc, d, q });
            }
        }
        v
    }

    /// Terminating draws: `b = q^{-m}` with `m` in `1..=5`, real `q` in
    /// `(0.2, 0.7)`, `|aq^{m+1}/(cd)| < 0.9`.
    pub fn rogers_6phi5_terminating(seed: u64, count: usize) -> Vec<Check> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = Vec::with_capacity(count);
        while v.len() < count {
            let q = c(rng.gen_range(0.2..0.7));
            let m = rng.gen_range(1..=5);
            let b = q.powi(-m);
            let a = polar(&mut rng, 0.05, 0.9);
            let (cc, d) = (polar(&mut rng, 0.3, 0.95), polar(&mut rng, 0.3, 0.95));
            let z = a * q / (b * cc * d);
            let lower = [a * q / cc, a * q / d, z];
            let one = Complex64::new(1.0, 0.0);
            let clean = lower.iter().all(|&x| closest_factor(x, q) > 0.1) && vanishing_factor(a * q / b, q).is_none();
            if z.norm() < 0.9 && clean && (one - a).norm() > 0.1 {
                v.push(Check::Rogers6phi5 { a, b, c: cc, d, q });
            }
        }
        v
    }
}
