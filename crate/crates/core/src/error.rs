use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero series")]
    ZeroSeriesDivisor,
    #[error("non-unit divisor")]
    NonUnitDivisor,
    #[error("non-unit base")]
    NonUnitBase,
    #[error("exponential needs zero constant term")]
    ExpConstantTerm,
    #[error("composition needs zero constant term")]
    CompositionConstantTerm,
    #[error("not a delta series")]
    NotDeltaSeries,
    #[error("insufficient truncation: need order > {index}, series has order {order}")]
    InsufficientTruncation { index: usize, order: usize },
    #[error("multinomial parts sum to {sum}, expected {n}")]
    MultinomialMismatch { n: usize, sum: usize },
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("unknown series {name:?}; registered: {registered}")]
    UnknownSeries { name: String, registered: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
