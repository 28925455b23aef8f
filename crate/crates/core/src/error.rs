use thiserror::Error;

/// Failures of the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert {0}: numerator is not a product of binomials")]
    NotFactorizable(String),
    #[error("pole under specialization: factor {0} maps to zero")]
    PoleUnderSpecialization(String),
    #[error("pole at evaluation point: {0}")]
    PoleAtPoint(String),
    #[error("malformed value: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(
        "cell budget exceeded: precision N={precision} needs {required} cells, budget is {budget}"
    )]
    BudgetExceeded {
        precision: u32,
        required: u128,
        budget: u128,
    },
    #[error("insufficient precision: N={precision}, need N >= {required}")]
    InsufficientPrecision { precision: u32, required: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
