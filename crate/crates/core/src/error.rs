use thiserror::Error;

/// Failures raised by the numerics in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request exceeds what the numerical method can deliver reliably.
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// Two quadrature orders disagreed by more than the stability threshold.
    #[error("quadrature unstable for k = {k}: orders {low} and {high} differ by {diff:e}")]
    Unstable {
        k: usize,
        low: usize,
        high: usize,
        diff: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
