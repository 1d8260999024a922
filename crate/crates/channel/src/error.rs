//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by channel-model computations.
///
/// `InvalidArgument` covers violated preconditions (wrong user kind, negative
/// altitudes, out-of-range modulation orders). `Domain` covers numerical
/// domain failures discovered during evaluation, such as a non-positive
/// radicand at a quadrature node or an `asin` argument outside [-1, 1].
/// `NonConvergence` is reserved for iterative evaluations that exhaust their
/// budget.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("numerical domain error: {0}")]
    Domain(String),
    #[error("failed to converge: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, ChannelError>;

impl ChannelError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        ChannelError::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        ChannelError::Domain(msg.into())
    }
}
