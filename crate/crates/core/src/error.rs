use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    MixedContext,
    #[error("division by zero")]
    DivisionByZero,
    #[error("field is not a quadratic extension")]
    NotQuadraticExtension,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("form kind mismatch: {0}")]
    KindMismatch(String),
    #[error("instance {family} d={d} q={q} is not admissible: {reason}")]
    Inadmissible { family: String, d: usize, q: usize, reason: String },
    #[error("q is odd; this construction needs q even")]
    OddQ,
    #[error("missing data file {0}")]
    MissingData(String),
    #[error("group order mismatch: expected {expected}, got {got}")]
    OrderMismatch { expected: BigUint, got: BigUint },
    #[error("orbit exceeds the cap of {cap} points")]
    OrbitTooLarge { cap: usize },
    #[error("seed point does not have the requested tag: {0}")]
    SeedTagMismatch(String),
    #[error("no closed degree formula for {0}")]
    NoFormula(String),
    #[error("bad partition shape: {0}")]
    BadShape(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("search budget exhausted; base size lies in [{lower}, {upper}]")]
    BudgetExceeded { lower: usize, upper: usize },
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
