use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of zero forms")]
    GcdOfZero,
    #[error("degenerate normalization")]
    DegenerateNormalization,
    #[error("degenerate weight")]
    DegenerateWeight,
    #[error("not a parabolic Higgs field: {0}")]
    NotParabolic(String),
    #[error("no invariant line")]
    NoInvariantLine,
    #[error("no stable locus stratification defined")]
    NoStratification,
    #[error("not a D4 configuration: {0}")]
    NotD4(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
