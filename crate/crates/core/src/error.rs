use thiserror::Error;

use crate::triangle::Slot;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("zero vector: {0}")]
    ZeroVector(String),

    #[error("underdetermined triple point: all vertices coincide, supply a direction triple")]
    UnderdeterminedTriplePoint,

    #[error("side-vectors do not close up (|a+b+c| = {residual:e})")]
    ClosureViolated { residual: f64 },

    #[error("invalid direction triple: {0}")]
    InvalidDirections(String),

    #[error("side {0} is nonzero, its argument is forced and cannot be set freely")]
    ForcedArgument(Slot),

    #[error("free argument of the zero side {0} is unset")]
    UnsetFreeArgument(Slot),

    #[error("inconsistent class data: {0}")]
    InconsistentClass(String),

    #[error("blown-down point: no unique class over (0,0,0)")]
    BlownDownPoint,

    #[error("degenerate triangle: {0}")]
    Degenerate(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("point {0} is not on the circle")]
    NotOnCircle(String),

    #[error("tangency construction failed (residual {residual:e})")]
    Tangency { residual: f64 },

    #[error("limit did not converge (successive distances {trace:?})")]
    NonConvergence { trace: Vec<f64> },

    #[error("parameter {0} outside the family domain")]
    OutOfDomain(f64),

    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

impl Error {
    pub(crate) fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Field {
            path: path.into(),
            message: message.into(),
        }
    }
}
