use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemIndex { index: usize, count: usize },

    #[error("invalid subsystem selection: {0}")]
    SubsystemSelection(String),

    #[error("operators are not trace preserving (defect {defect:.3e})")]
    NotTracePreserving { defect: f64 },

    #[error("effects do not form a POVM: {0}")]
    InvalidPovm(String),

    #[error("states are linearly dependent (condition number {condition:.3e})")]
    LinearlyDependent { condition: f64 },

    #[error("{states} states cannot be unambiguously discriminated in dimension {dim}")]
    TooManyStates { states: usize, dim: usize },

    #[error("state lies outside the support of the average state")]
    OutsideSupport,

    #[error("behavior is signaling (defect {defect:.3e})")]
    Signaling { defect: f64 },

    #[error("invalid behavior: {0}")]
    InvalidBehavior(String),

    #[error("search space of {size} strategies exceeds the limit")]
    SearchTooLarge { size: u128 },

    #[error("cutoff {cutoff} too small: truncated norm {norm:.12}")]
    CutoffTooSmall { cutoff: usize, norm: f64 },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
