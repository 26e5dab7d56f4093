use thiserror::Error;

/// Errors produced by field construction, enumeration and code computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrime(u32),
    #[error("extension degree {m} out of range for p = {p} (field order bound {bound})")]
    DegreeOutOfRange { p: u32, m: u32, bound: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} is out of range for a field of order {q}")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("work estimate {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("({rows:?}, {cols:?}) is not a doset pair")]
    NotDoset { rows: Vec<usize>, cols: Vec<usize> },
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("minor is not maximal in the support")]
    NotMaximal,
    #[error("coefficient of the maximal minor must be 1, found {0}")]
    CoefficientNotOne(u32),
    #[error("every maximal minor of minimal spread already has spread equal to its size")]
    AlreadyMinimal,
    #[error("spread reduction did not produce a size-{size} minor of spread {spread}")]
    SpreadReductionFailed { size: usize, spread: usize },
    #[error("function is not in the span of the code basis")]
    NotInSpan,
    #[error("basis labels do not match the code")]
    LabelMismatch,
    #[error("operation leaves an empty code")]
    EmptyResult,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
