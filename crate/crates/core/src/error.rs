use thiserror::Error;

/// Errors raised by construction and verification routines.
///
/// The `StructureViolation`, `NotDistanceRegular` and `Falsified` variants
/// signal that a structural claim being certified did not hold; they carry
/// enough detail to reproduce the failing instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypermetric coefficients must sum to 1 (got {sum})")]
    InvalidCoefficients { sum: i64 },

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("chosen rays are linearly dependent (rank {rank}, need {needed})")]
    DegenerateChoice { rank: usize, needed: usize },

    #[error("graph on {vertices} vertices exceeds the configured cap of {cap}")]
    ResourceLimit { vertices: usize, cap: usize },

    #[error("graph is not distance-regular: {0}")]
    NotDistanceRegular(String),

    #[error("claim falsified: {message}")]
    Falsified {
        message: String,
        /// Offending permutation (0-based images), when one exists.
        witness: Option<Vec<usize>>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
