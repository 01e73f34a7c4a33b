use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("total degree {degree} exceeds the cap {cap} (byte {offset})")]
    DegreeCap {
        cap: u32,
        degree: u32,
        offset: usize,
    },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial does not vanish at the origin")]
    NotVanishing,
    #[error("weights ({0}, {1}) must be positive and coprime")]
    InvalidWeight(u32, u32),
    #[error("pair is not log canonical: {0}")]
    NotLc(String),
    #[error("target and boundary share a component")]
    SharedComponent,
    #[error("target divisor is zero or not effective")]
    BadTarget,
    #[error("polynomial is reducible at the origin ({0} branches)")]
    Reducible(u64),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
