//! Crate-wide error type.
//!
//! Every failure names the operation that raised it so that callers (and the
//! CLI) can report actionable messages and map to exit codes.

use thiserror::Error;

/// Broad classification used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Arguments outside an operation's domain (poles, cuts, bad indices).
    Domain,
    /// A numerical scheme failed (non-convergence, count mismatch, NaN).
    Numeric,
    /// File input/output or cache parsing.
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: argument outside domain: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: evaluation at the pole s = 1")]
    PoleAtOne { op: &'static str },

    #[error("{op}: {param} too close to a pole ({detail})")]
    PoleProximity {
        op: &'static str,
        param: &'static str,
        detail: String,
    },

    #[error("gamma function pole at z = {z}")]
    GammaPole { z: String },

    #[error("{op}: index {index} exceeds table maximum {max}")]
    IndexOutOfRange {
        op: &'static str,
        index: usize,
        max: usize,
    },

    #[error("{d} is not a fundamental discriminant")]
    NonFundamentalDiscriminant { d: i64 },

    #[error("character invariant violated: {which}")]
    CharacterInvariant { which: String },

    #[error("{op}: no evaluation route available for these parameters: {detail}")]
    RouteUnavailable { op: &'static str, detail: String },

    #[error("{op}: singularity within radius {radius} of expansion point {center}")]
    RadiusCheck {
        op: &'static str,
        center: String,
        radius: f64,
    },

    #[error("zero count mismatch: expected {expected} from phase tracking, cache holds {found}")]
    CountMismatch { expected: i64, found: usize },

    #[error("{op}: did not converge: {detail}")]
    Convergence { op: &'static str, detail: String },

    #[error("{op}: non-finite value encountered ({detail})")]
    NonFinite { op: &'static str, detail: String },

    #[error("zero cache parse error at line {line}: {detail}")]
    CacheFormat { line: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain { .. }
            | Error::PoleAtOne { .. }
            | Error::PoleProximity { .. }
            | Error::GammaPole { .. }
            | Error::IndexOutOfRange { .. }
            | Error::NonFundamentalDiscriminant { .. }
            | Error::CharacterInvariant { .. }
            | Error::RouteUnavailable { .. }
            | Error::RadiusCheck { .. } => ErrorKind::Domain,
            Error::CountMismatch { .. }
            | Error::Convergence { .. }
            | Error::NonFinite { .. } => ErrorKind::Numeric,
            Error::CacheFormat { .. } | Error::Io(_) => ErrorKind::Io,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
