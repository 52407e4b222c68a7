use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("group mismatch: element of D_{left} combined with element of D_{right}")]
    GroupMismatch { left: usize, right: usize },

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("oracle scale exceeded: {what} needs dimension {dim}, limit is {limit}")]
    OracleScaleExceeded {
        what: &'static str,
        dim: u128,
        limit: u128,
    },

    #[error("enumeration guard exceeded: {what} needs {size} items, limit is {limit}; use the sampling variant")]
    EnumerationGuard {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("no solution: target {target} is not a subset sum of the instance")]
    NoSolution { target: usize },

    #[error("not a valid measurement: {0}")]
    NotPovm(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("N must be even (got N = {0})")]
    OddModulus(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency violated: {0}")]
    Consistency(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// True for errors caused by a size guard rather than by bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::OracleScaleExceeded { .. } | Error::EnumerationGuard { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
