//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("failed to parse {what}: {msg}")]
    Parse { what: String, msg: String },

    #[error("parameter {name} {msg}")]
    ParamRange { name: String, msg: String },

    #[error("materializing atom {k} of {family} overflows f64; lower the truncation")]
    AtomOverflow { k: u32, family: String },

    #[error("domain violation: series diverges, first unbounded term at index {index}")]
    DomainViolation { index: u32 },

    #[error("domain test inconclusive: {0}")]
    DomainInconclusive(String),

    #[error("state leaves C^inf(A): smallest failing derivative order n = {n}")]
    NotSmooth { n: u32 },

    #[error(
        "insufficient escape depth: found {found} of {requested} admissible points \
         within truncation {truncation}; increase the truncation"
    )]
    InsufficientEscapeDepth {
        found: u32,
        requested: u32,
        truncation: u32,
    },

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("construction violated: {0}")]
    ConstructionViolated(String),

    #[error("beta = 0 queries go through the bounded-support class test")]
    BetaZeroRedirect,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
