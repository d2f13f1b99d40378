use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ground set must be non-empty (n = 0)")]
    EmptyGroundSet,

    #[error("ground set of size {0} exceeds the supported maximum of 64")]
    GroundSetTooLarge(usize),

    #[error("cut {cut} is out of range for a partition of {n} elements")]
    CutOutOfRange { cut: usize, n: usize },

    #[error("partitions live on different ground sets ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cumulant order {needed} requested but only {available} available")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("no cumulant sequence registered for variable X_{0}")]
    UnknownVariable(u32),

    #[error("expansion produced {terms} terms, exceeding the cap of {cap}")]
    ExpansionCap { cap: usize, terms: usize },

    #[error("unknown series kind `{0}` (expected tan, arctan or sec)")]
    UnknownSeriesKind(String),

    #[error("denominator series has zero constant term")]
    ZeroConstantTerm,

    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not Hermitian: entry ({i}, {j}) is not the conjugate of entry ({j}, {i})")]
    NotHermitian { i: usize, j: usize },

    #[error("matrix dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("linear form weights must sum to zero (sum = {0})")]
    WeightSumNonzero(Rational),

    #[error("{0} is within the guard radius of a pole")]
    PoleProximity(f64),

    #[error("{0} is within the guard radius of an atom")]
    AtomProximity(f64),

    #[error("no sign change on bracket [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
