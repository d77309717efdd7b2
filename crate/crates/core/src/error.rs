use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative input {0}")]
    NegativeInput(String),
    #[error("mixed radicands √{0} and √{1}")]
    MixedRadicals(String, String),
    #[error("not a Pythagorean triple: {0}")]
    NotPythagorean(String),
    #[error("not an arithmetic triplet: defect {0}")]
    NotArithmetic(String),
    #[error("{0} is not a perfect square")]
    NotSquare(String),
    #[error("trivial triple: {0}")]
    TrivialTriple(String),
    #[error("half-sum or half-difference of {0} is not a Gaussian integer")]
    GaussianParity(String),
    #[error("not a slant grid: {0}")]
    NotAGap(String),
    #[error("bound {bound} exceeds the limit {limit}")]
    BoundTooLarge { bound: String, limit: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid {path}: {reason}")]
    Invalid { path: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
