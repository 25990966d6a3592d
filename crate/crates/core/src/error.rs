use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Gauss word: {0}")]
    InvalidWord(String),
    #[error("word {0} violates the parity rule and has no DT code")]
    ParityViolation(String),
    #[error("invalid DT code: {0}")]
    InvalidDt(String),
    #[error("DT code {0} has no planar realization")]
    NotRealizable(String),
    #[error("malformed template: {0}")]
    MalformedTemplate(String),
    #[error("invalid PD code: {0}")]
    InvalidPd(String),
    #[error("diagram has {0} components, expected a knot")]
    NotAKnot(usize),
    #[error("reference table: {0}")]
    Table(String),
    #[error("crossing budget {requested} exceeds the guard {guard}")]
    BudgetGuard { requested: usize, guard: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
