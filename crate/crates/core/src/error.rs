//! Library error type.

use thiserror::Error;

/// Errors surfaced by fallible operations (spec construction, parsing,
/// user-supplied shift matrices, range-checked constructions).
///
/// Internal algebraic invariants are enforced with assertions instead: a
/// violated invariant is a bug, not an input error.
#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("incompatible dimension N={n} for family {family}: {reason}")]
    IncompatibleDimension {
        family: String,
        n: usize,
        reason: String,
    },
    #[error("index ({i},{j}) out of range 1..={n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("operands belong to different algebra specs ({left} vs {right})")]
    SpecMismatch { left: String, right: String },
    #[error("the hat quasi-derivation is defined for glN only (got {family})")]
    HatRequiresGl { family: String },
    #[error("tensor slot {slot} out of range for {m} slots")]
    SlotOutOfRange { slot: usize, m: usize },
    #[error("invalid shift matrix: {0}")]
    InvalidShiftMatrix(String),
    #[error("shift matrix is not generic: {0}")]
    NonGenericMu(String),
    #[error("operation not supported for family {family}: {reason}")]
    UnsupportedFamily { family: String, reason: String },
    #[error("desk-scale cap exceeded: {0}")]
    CapsExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
