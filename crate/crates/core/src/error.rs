use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    /// A denominator vanished at the chosen specialization point. Callers
    /// that own the point draw a fresh one.
    #[error("pole at the specialization point (resample needed)")]
    Pole,

    #[error("weight index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid weight point: {0}")]
    InvalidWeightPoint(String),

    #[error("psi exponent vector needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("expected {expected} insertions, got {got}")]
    InsertionCountMismatch { expected: usize, got: usize },

    #[error("canonical half-edge formula needs an even torus rank (got M = {0}); use the general parity mode")]
    CanonicalNeedsEvenRank(usize),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("specialized evaluations disagree: {0}")]
    SampleDisagreement(String),

    #[error("symbolic localization sum is not constant: {0}")]
    NotConstant(String),

    #[error("census cache at {path:?}: {reason}")]
    Cache { path: PathBuf, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
