use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SincError {
    /// Input outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A hypothesis of the error bound (threshold on n, strip width, exponent range)
    /// does not hold, so the requested parameters or bound are not certified.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("target function is not finite at node k = {k} (t = {t})")]
    NonFiniteNode { k: i64, t: f64 },

    /// No explicit error bound applies to the requested combination.
    #[error("no explicit error bound: {0}")]
    NoBound(String),
}

pub type Result<T, E = SincError> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> SincError {
    SincError::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> SincError {
    SincError::Precondition(msg.into())
}
