use thiserror::Error;

use crate::chamber::ReductionTrace;
use crate::kgroup::KClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid curve parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("component index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("class has self-pairing {norm}, not -2")]
    NotARoot { norm: i64 },

    #[error("Re Z and Im Z are linearly dependent on the radical")]
    DegenerateRadical,

    #[error("central charge vanishes on the root {0}")]
    VanishingRoot(KClass),

    #[error("central charge is not in P0")]
    NotInP0,

    #[error("central charge vanishes on the skyscraper class")]
    DegenerateCharge,

    #[error("component {index} lies on a corner: Im z = 0 with integral Re z = {re}")]
    NotGeneral { index: usize, re: String },

    #[error("central charge is not in the plus component of P0")]
    NotPlusComponent,

    #[error("reduction did not terminate within {max_steps} steps")]
    StepLimitExceeded {
        max_steps: usize,
        trace: Box<ReductionTrace>,
    },

    #[error("reduction revisited a charge after {steps} steps")]
    CycleDetected { steps: usize },

    #[error("segment crosses a corner on component {index} at t = {t}")]
    CornerOnPath { index: usize, t: String },

    #[error("segment endpoint lies on a wall of component {index}")]
    EndpointOnWall { index: usize },

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable identifier used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "InvalidParams",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotARoot { .. } => "NotARoot",
            Error::DegenerateRadical => "DegenerateRadical",
            Error::VanishingRoot(_) => "VanishingRoot",
            Error::NotInP0 => "NotInP0",
            Error::DegenerateCharge => "DegenerateCharge",
            Error::NotGeneral { .. } => "NotGeneral",
            Error::NotPlusComponent => "NotPlusComponent",
            Error::StepLimitExceeded { .. } => "StepLimitExceeded",
            Error::CycleDetected { .. } => "CycleDetected",
            Error::CornerOnPath { .. } => "CornerOnPath",
            Error::EndpointOnWall { .. } => "EndpointOnWall",
            Error::Overflow(_) => "Overflow",
            Error::Parse(_) => "ParseError",
        }
    }
}
