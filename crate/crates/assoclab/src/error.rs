//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("word contains a character other than '0'/'1': {0:?}")]
    BadWord(String),

    #[error("composition diverges (word must start with L0): {0:?}")]
    DivergentComposition(Vec<u32>),

    #[error("composition part must be >= 1")]
    ZeroPart,

    #[error("requested digits unattainable: {0}")]
    Precision(String),

    #[error("scalar-ring mismatch: {0}")]
    ScalarMismatch(String),

    #[error("constant-term precondition violated: {0}")]
    ConstantTerm(String),

    #[error("missing parameter value for {0:?}")]
    MissingParam(String),

    #[error("weight {requested} exceeds table weight {available}")]
    WeightOverflow { requested: u32, available: u32 },

    #[error("calibration failed: no convention matches the sine-series coefficients")]
    Calibration,

    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),

    #[error("gamma expression has a pole or zero argument factor")]
    PoleArgument,

    #[error("non-cancelling fractional-offset gamma factor: {0}")]
    FractionalOffset(String),

    #[error("unbalanced gamma expression: {0}")]
    Unbalanced(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("insufficient convergence margin: sigma = {0}")]
    Margin(String),

    #[error("parameter pole: {0}")]
    ParameterPole(String),

    #[error("non-integrable exponents: {0}")]
    NonIntegrable(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("truncation mismatch: {0}")]
    Truncation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, Error>;
