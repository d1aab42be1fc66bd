use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("value {value} outside admissible range {range}")]
    OutOfRange { value: f64, range: String },

    #[error("no zero of the radial solution before the antipode for lambda = {lambda}")]
    NoZeroBeforeAntipode { lambda: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("bracket [{lo}, {hi}] does not enclose a root")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("eigenvalue mismatch: domain {domain} vs cap {cap}")]
    EigenvalueMismatch { domain: f64, cap: f64 },

    #[error("cap volume {cap_volume} exceeds domain volume {domain_volume} beyond tolerance")]
    ClaimViolation { cap_volume: f64, domain_volume: f64 },

    #[error("domain is empty after rasterization")]
    EmptyDomain,

    #[error("domain spec: {0}")]
    DomainSpec(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn range(value: f64, range: impl Into<String>) -> Self {
        Error::OutOfRange {
            value,
            range: range.into(),
        }
    }
}
