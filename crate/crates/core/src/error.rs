// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One failed density-operator condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum DensityViolation {
    Hermiticity { deviation: f64 },
    Positivity { eigenvalue: f64 },
    Trace { trace: f64 },
}

impl fmt::Display for DensityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Hermiticity { deviation } => write!(f, "hermiticity (deviation {deviation:e})"),
            Self::Positivity { eigenvalue } => write!(f, "positivity (eigenvalue {eigenvalue})"),
            Self::Trace { trace } => write!(f, "trace ({trace})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degenerate state: zero vector")]
    DegenerateState,
    #[error("non-finite input")]
    NonFinite,
    #[error("empty operand")]
    Empty,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("invalid density operator: {}", join(.0))]
    InvalidDensity(Vec<DensityViolation>),
    #[error("not a projector (idempotency deviation {deviation:e})")]
    NotProjector { deviation: f64 },
    #[error("not an effect (eigenvalue {eigenvalue} outside [0, 1])")]
    NotEffect { eigenvalue: f64 },
    #[error("not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("instrument is not complete (deviation {deviation:e})")]
    Incomplete { deviation: f64 },
    #[error("meter projectors do not resolve the probe identity (deviation {deviation:e})")]
    MeterIncomplete { deviation: f64 },
    #[error("unknown outcome {0:?}")]
    UnknownOutcome(String),
    #[error("duplicate outcome {0:?}")]
    DuplicateOutcome(String),
    #[error("conditioning on null event (probability {probability:e})")]
    NullEvent { probability: f64 },
    #[error("instrument outcomes must be exactly {{yes, no}}, found {0:?}")]
    NotYesNo(Vec<String>),
    #[error("step instability (trace drift {drift:e}); use a smaller dt")]
    StepInstability { drift: f64 },
    #[error("no stationary density within tolerance (residual {residual:e})")]
    NoStationaryState { residual: f64 },
    #[error("state not decohered in decision basis (off-diagonal mass {off_diagonal:e})")]
    NotDecohered { off_diagonal: f64 },
    #[error("observable is not dichotomic: {0}")]
    NotDichotomic(String),
    #[error("CHSH value {value} exceeds the Tsirelson bound")]
    TsirelsonExceeded { value: f64 },
    #[error("expected 3 slits, found {0}")]
    SlitCount(usize),
    #[error("slit projectors {0} and {1} are not orthogonal")]
    SlitsNotOrthogonal(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn join(v: &[DensityViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
