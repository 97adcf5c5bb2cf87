use thiserror::Error;

/// Errors raised by the solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("input out of domain: {0}")]
    Domain(String),

    /// The request would exceed a fixed size cap.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A density matrix violates positivity or normalization.
    #[error("invalid state: {0}")]
    InvalidState(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// Checks `1 <= value <= max` for a 1-based index.
pub(crate) fn check_index(name: &str, value: usize, max: usize) -> Result<()> {
    if value == 0 || value > max {
        return Err(domain(format!("{name} = {value} must lie in 1..={max}")));
    }
    Ok(())
}
