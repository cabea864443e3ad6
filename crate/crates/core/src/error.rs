use thiserror::Error;

use crate::catalog::ParseError;

/// Preconditions of the boundary solver that are checked rather than assumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryPrecondition {
    NotNormalized,
    PerversityNotOne,
    LowerLeftNonzero,
    DiagonalNotNegative,
    DiagonalMismatch,
}

impl BoundaryPrecondition {
    pub fn name(self) -> &'static str {
        match self {
            Self::NotNormalized => "A2 is not the identity",
            Self::PerversityNotOne => "per != 1",
            Self::LowerLeftNonzero => "c != 0",
            Self::DiagonalNotNegative => "a >= 0",
            Self::DiagonalMismatch => "a != d",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabError {
    #[error("zero central charge")]
    ZeroCentralCharge,
    #[error("infinite slope (torsion class)")]
    InfiniteSlope,
    #[error("matrix must have positive determinant")]
    NonPositiveDeterminant,
    #[error("lift shift {0} is odd: lifts of a fixed matrix differ by even integers")]
    OddLiftShift(i64),
    #[error("winding {winding} is incompatible with the direction of M*e1 (expected parity {parity})")]
    WindingParity { winding: i64, parity: i64 },
    #[error("class is not integral: {0}")]
    NonIntegralClass(String),
    #[error("positivity screen failed: {0}")]
    PositivityScreen(String),
    #[error("descriptor is not normalized (A2 must be the identity)")]
    NotNormalized,
    #[error("not a stability condition: gluing perversity is less than 1")]
    PerversityBelowOne,
    #[error("boundary solver precondition violated: {}", .0.name())]
    BoundaryPrecondition(BoundaryPrecondition),
    #[error("perturbed phase is too far from the glued phase: {0}")]
    TooFarFromGlued(String),
    #[error("object has zero curve class")]
    ZeroCurveClass,
    #[error("threshold must lie strictly between 0 and 1")]
    ThresholdOutOfRange,
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Input(String),
}

impl StabError {
    /// Stable identifier reported by the command-line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::ZeroCentralCharge => "ZeroCentralCharge",
            Self::InfiniteSlope => "InfiniteSlope",
            Self::NonPositiveDeterminant => "NonPositiveDeterminant",
            Self::OddLiftShift(_) => "OddLiftShift",
            Self::WindingParity { .. } => "WindingParity",
            Self::NonIntegralClass(_) => "NonIntegralClass",
            Self::PositivityScreen(_) => "PositivityScreen",
            Self::NotNormalized => "NotNormalized",
            Self::PerversityBelowOne => "PerversityBelowOne",
            Self::BoundaryPrecondition(_) => "BoundaryPrecondition",
            Self::TooFarFromGlued(_) => "TooFarFromGlued",
            Self::ZeroCurveClass => "ZeroCurveClass",
            Self::ThresholdOutOfRange => "ThresholdOutOfRange",
            Self::Parse(_) => "ParseError",
            Self::Input(_) => "InputError",
        }
    }
}

pub type Result<T> = std::result::Result<T, StabError>;
