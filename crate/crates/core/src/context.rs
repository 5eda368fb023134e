//! Numeric policy shared by every evaluation: the base `q`, tail tolerances
//! and work caps.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};

/// Smallest admissible value for any of the work caps.
pub const MIN_CAP: usize = 16;

/// Tolerances and caps of a [`QContext`], without the base.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ContextSettings {
    /// Infinite-product tail tolerance.
    pub eps_product: f64,
    /// Series tail tolerance (relative to the partial sum).
    pub eps_series: f64,
    /// Convergence tolerance of the periodic trapezoid doubling schedule.
    pub eps_quad: f64,
    pub max_product_terms: usize,
    pub max_series_terms: usize,
    pub max_quad_nodes: usize,
}

impl Default for ContextSettings {
    fn default() -> Self {
        ContextSettings {
            eps_product: 1e-15,
            eps_series: 1e-14,
            eps_quad: 1e-11,
            max_product_terms: 10_000,
            max_series_terms: 100_000,
            max_quad_nodes: 1 << 20,
        }
    }
}

impl ContextSettings {
    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_product", self.eps_product),
            ("eps_series", self.eps_series),
            ("eps_quad", self.eps_quad),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(QError::domain(format!("{name} must be a positive finite number, got {v}")));
            }
        }
        for (name, v) in [
            ("max_product_terms", self.max_product_terms),
            ("max_series_terms", self.max_series_terms),
            ("max_quad_nodes", self.max_quad_nodes),
        ] {
            if v < MIN_CAP {
                return Err(QError::domain(format!("{name} must be at least {MIN_CAP}, got {v}")));
            }
        }
        Ok(())
    }
}

/// The base `q` together with the truncation policy.
///
/// Construction enforces `|q| < 1`, positive tolerances and caps of at least
/// [`MIN_CAP`]; a `QContext` is immutable afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    q: Complex64,
    settings: ContextSettings,
}

impl QContext {
    /// Context with the default tolerances.
    pub fn new(q: impl Into<Complex64>) -> Result<Self> {
        Self::with_settings(q, ContextSettings::default())
    }

    pub fn with_settings(q: impl Into<Complex64>, settings: ContextSettings) -> Result<Self> {
        let q = q.into();
        if !(q.norm() < 1.0) {
            return Err(QError::domain(format!("|q| must be < 1, got |q| = {}", q.norm())));
        }
        settings.validate()?;
        Ok(QContext { q, settings })
    }

    /// Same policy, different base.
    pub fn with_q(&self, q: impl Into<Complex64>) -> Result<Self> {
        Self::with_settings(q, self.settings)
    }

    #[inline]
    pub fn q(&self) -> Complex64 {
        self.q
    }

    #[inline]
    pub fn settings(&self) -> &ContextSettings {
        &self.settings
    }

    #[inline]
    pub fn eps_product(&self) -> f64 {
        self.settings.eps_product
    }

    #[inline]
    pub fn eps_series(&self) -> f64 {
        self.settings.eps_series
    }

    #[inline]
    pub fn eps_quad(&self) -> f64 {
        self.settings.eps_quad
    }

    #[inline]
    pub fn max_product_terms(&self) -> usize {
        self.settings.max_product_terms
    }

    #[inline]
    pub fn max_series_terms(&self) -> usize {
        self.settings.max_series_terms
    }

    #[inline]
    pub fn max_quad_nodes(&self) -> usize {
        self.settings.max_quad_nodes
    }
}
