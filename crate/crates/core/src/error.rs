use thiserror::Error;

pub type Result<T, E = QError> = std::result::Result<T, E>;

/// Failure modes of the numeric kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    /// A denominator factor vanishes (e.g. a negative-index Pochhammer symbol
    /// hitting `(1 - 1)`).
    #[error("pole: {0}")]
    Pole(String),
    /// Arguments outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// A truncation or quadrature cap was reached before the tail bound was met.
    #[error("convergence failure: {0}")]
    Convergence(String),
}

impl QError {
    pub(crate) fn pole(msg: impl Into<String>) -> Self {
        QError::Pole(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        QError::Domain(msg.into())
    }

    pub(crate) fn convergence(msg: impl Into<String>) -> Self {
        QError::Convergence(msg.into())
    }

    /// True for pole and convergence failures, the "numeric" class as opposed
    /// to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, QError::Pole(_) | QError::Convergence(_))
    }
}
