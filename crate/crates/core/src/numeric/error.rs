use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("merged context degree {degree} exceeds the bound {bound}")]
    ContextMergeOverflow { degree: usize, bound: usize },
    #[error("precision ceiling of {0} bits reached before certification")]
    PrecisionExhausted(u64),
    #[error("zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("square root of zero requested")]
    SqrtOfZero,
    #[error("undecided: {0}")]
    Undecided(String),
}
