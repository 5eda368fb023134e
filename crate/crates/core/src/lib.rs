//! Numerical q-series kernel.
//!
//! The crate evaluates q-Pochhammer products, basic hypergeometric and
//! very-well-poised series, the continuous q-ultraspherical polynomials and
//! their two-parameter (Gasper) extension, Jackson q-integrals and spectrally
//! convergent periodic quadrature. On top of these primitives, [`verify`]
//! checks the classical orthogonality, q-beta integral and summation
//! identities numerically and produces [`verify::VerificationReport`]s.
//!
//! All numerics are double precision complex (`Complex64`). Every routine is a
//! pure function of its arguments and the [`QContext`] numeric policy.

pub mod context;
pub mod error;
pub mod integrate;
pub mod pochhammer;
pub mod poly;
pub mod series;
pub mod verify;

pub use context::{ContextSettings, QContext};
pub use error::{QError, Result};
pub use num_complex::Complex64;
pub use pochhammer::{qbinom, qpoch, qpoch_infinite, qpoch_multi, PochhammerIndex};

/// Shorthand for a real-valued complex number.
#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Shorthand for `re + i*im`.
#[inline]
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
