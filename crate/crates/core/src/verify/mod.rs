//! Numerical verification of the orthogonality, integral and summation
//! identities for the q-ultraspherical family.
//!
//! Every check evaluates a left side by quadrature, a Jackson sum or a series
//! and a right side by closed form, and returns a [`VerificationReport`].
//! Evaluation errors never escape a check: they become failed reports with a
//! diagnostic. [`run_suite`] runs a [`SuiteConfig`] in parallel and returns the
//! reports in a deterministic order.

pub mod checks;
pub mod closed_form;
pub mod report;
pub mod suite;

pub use checks::{
    verify_askey_ismail_chebyshev, verify_weighted_generating_function, verify_saalschutz, verify_phi_poly_integral, verify_connection_expansion, verify_qbinomial,
    verify_rogers_6phi5, verify_rogers_connection, verify_ultraspherical_orthogonality, verify_mixed_parameter_integral, verify_gasper_orthogonality, verify_five_parameter_beta,
    verify_uniform_bound, CheckId, CheckKind, TolerancePolicy,
};
pub use report::{format_complex, format_real, ParamValue, VerificationReport};
pub use suite::{run_suite, Check, SuiteConfig, SuiteResult, SUITE_SEED};
