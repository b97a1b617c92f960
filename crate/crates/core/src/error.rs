use thiserror::Error;

/// Errors raised by the series engine, the class machinery and the harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series must contain at least one coefficient")]
    EmptySeries,
    #[error("operation needs order >= {needed}, series has order {actual}")]
    OrderTooLow { needed: usize, actual: usize },
    #[error("constant term must be {expected}, found {found}")]
    ConstantTerm {
        expected: &'static str,
        found: String,
    },
    #[error("series is not normalized (a0 = 0, a1 = 1 required)")]
    NotNormalized,
    #[error("series is not {m}-fold symmetric: coefficient at z^{index} is nonzero")]
    NotSymmetric { m: u32, index: usize },
    #[error("symmetry order m must be >= 1")]
    ZeroSymmetry,
    #[error("Ruscheweyh index k must be >= 1")]
    ZeroIndex,
    #[error("binomial factor C({n}, {k}) overflows u128")]
    FactorOverflow { n: u64, k: u64 },
    #[error("invalid class parameter: {0}")]
    InvalidParams(String),
    #[error("operation requires class {expected}")]
    WrongClass { expected: &'static str },
    #[error("corollary {id} does not apply: {reason}")]
    Corollary { id: u8, reason: String },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("functional vanishes (|D| = {modulus:e}) at z = {z}")]
    VanishingFunctional { modulus: f64, z: String },
    #[error("degenerate denominator in {0}")]
    Degenerate(&'static str),
    #[error("invalid sample: {0}")]
    InvalidSample(String),
    #[error("malformed literal: {0}")]
    Literal(String),
    #[error("output error: {0}")]
    Output(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Output(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
