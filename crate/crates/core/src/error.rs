use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field size {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {q} is out of range (supported: 2..={max})")]
    FieldSizeOutOfRange { q: u64, max: u64 },
    #[error("extension table of size {required} exceeds the limit {limit}")]
    TableOverflow { required: u64, limit: u64 },
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("unsupported degree {0}")]
    UnsupportedDegree(u32),
    #[error("{what}: q = {q} is too small for degree {d}")]
    FieldTooSmall { what: &'static str, q: u32, d: u32 },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("work budget exceeded: {required} units required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("unknown formula id `{0}`")]
    UnknownFormula(String),
    #[error("formula `{id}` is valid only for q >= {q_min}, got q = {q}")]
    OutOfRange { id: String, q: u32, q_min: u32 },
    #[error("non-integral value {value} where an integer was required ({context})")]
    NonIntegral { value: String, context: String },
    #[error("singular system, determinant {det}")]
    SingularSystem { det: String },
    #[error("invalid discriminant {0}")]
    InvalidDiscriminant(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
