//! Error type shared by every module of the crate.

use std::io;

use thiserror::Error;

use crate::conditions::Verdict;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must satisfy 2 <= m < 2^63")]
    InvalidModulus(u64),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid block size {0}: must be even and at least 4")]
    InvalidBlockSize(usize),

    #[error("coefficient vector needs at least 2 entries, got {0}")]
    TooFewCoefficients(usize),

    #[error("coefficient vector is all zero")]
    AllZero,

    #[error("value {value} at position {index} is not reduced mod {modulus}")]
    NotReduced {
        index: usize,
        value: u64,
        modulus: u64,
    },

    #[error("lag {lag} out of range for h = {h}")]
    LagOutOfRange { lag: usize, h: usize },

    #[error("row index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dense materialization refused: n = {n} exceeds bound {bound}")]
    DenseBoundExceeded { n: usize, bound: usize },

    #[error(
        "exhaustive search over {candidates} candidates exceeds the cost guard of {guard}; \
         use random mode (--random) or raise the guard"
    )]
    CostGuardExceeded { candidates: u128, guard: u64 },

    #[error("random search needs a nonzero trial budget")]
    ZeroBudget,

    #[error("modulus {0} too large to enumerate unit involutions")]
    ModulusTooLargeForOrbits(u64),

    #[error("coefficients do not form a valid key: {0}")]
    InvalidKey(Verdict),

    #[error("bad container magic")]
    BadMagic,

    #[error("unsupported container version {0}")]
    UnsupportedVersion(u8),

    #[error("corrupt container header: {0}")]
    HeaderCorrupt(String),

    #[error("key does not match container: {0}")]
    KeyMismatch(String),

    #[error("container truncated: expected {expected} bytes, got {actual}")]
    Truncated { expected: u64, actual: u64 },

    #[error("corrupt container payload: {0}")]
    CorruptPayload(String),

    #[error("catalog line {line}: {message}")]
    CatalogSyntax { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}
