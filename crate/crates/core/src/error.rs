use thiserror::Error;

/// Errors raised across the crate. The CLI maps them onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("degree range [{given_lo}, {given_hi}] does not cover the required window [{needed_lo}, {needed_hi}]")]
    RangeTooNarrow {
        given_lo: i64,
        given_hi: i64,
        needed_lo: i64,
        needed_hi: i64,
    },
    #[error("the generating family is empty")]
    EmptyGenerators,
    #[error("no two-term free resolution: {0}")]
    NoResolution(String),
    #[error("equivariance fails: {0}")]
    InvalidEquivariance(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// `0` is success; this maps failures onto the CLI exit codes.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) => 2,
            Error::Malformed(_) => 4,
            _ => 3,
        }
    }
}
