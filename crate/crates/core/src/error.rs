use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("degree {degree} outside range [{lo}, {hi}]")]
    DegreeRange { degree: i32, lo: i32, hi: i32 },
    #[error("not a chain map in degree {0}")]
    NotChainMap(i32),
    #[error("d∘d ≠ 0 in degree {0}")]
    NotComplex(i32),
    #[error("involution error: {0}")]
    Involution(String),
    #[error("filtration error: {0}")]
    Filtration(String),
    #[error("missing Hodge filtration")]
    FiltrationMissing,
    #[error("missing weight filtration")]
    WeightMissing,
    #[error("empty variety: r1 + 2 r2 must be positive")]
    EmptyVariety,
    #[error("primitive element search failed after {0} attempts; try another seed")]
    SearchFailure(usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
