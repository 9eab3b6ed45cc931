use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed interval `{0}`")]
    MalformedInterval(String),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("upper envelope of an empty collection")]
    EmptyEnvelope,
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("expression uses coordinate {index} but the domain has dimension {dim}")]
    DimensionMismatch { index: usize, dim: usize },
    #[error("point {0} is not in the domain")]
    PointOutsideDomain(String),
    #[error("f is +inf at {0}; the point is outside dom f")]
    OutsideEffectiveDomain(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("map sends {0} outside the target domain")]
    MapOutsideTarget(String),
    #[error("member index {0} out of range")]
    BadIndex(usize),
    #[error("family is not a subfamily: {0}")]
    NotSubfamily(String),
    #[error("family has no decomposition index; build it with a family sum")]
    MissingDecomposition,
    #[error("support set is not hull-closed")]
    NotHullClosed,
    #[error("no separating point exists: the member lies in the hull")]
    NotSeparable,
    #[error("slack precondition violated: {0}")]
    SlackViolated(String),
    #[error("assumption fails: {0}")]
    AssumptionFails(String),
    #[error("inadequate sample: {0}")]
    InadequateSample(String),
    #[error("graph pair {0} is outside the candidate set")]
    NotInCandidateSet(String),
    #[error("negative coefficient {0}")]
    NegativeCoefficient(String),
    #[error("translated domain is not representable: {0}")]
    NotRepresentable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
