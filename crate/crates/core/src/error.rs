use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound {bound}", bound = crate::algebra::MAX_MODULUS)]
    ModulusTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("operands live over different fields (F_{left} vs F_{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("value {value} is not a residue modulo {p}")]
    ValueOutOfRange { value: u64, p: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("a code must contain at least one element")]
    EmptyCode,
    #[error("cyclic submodule generator must be nonzero")]
    ZeroGenerator,
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("k = {k} exceeds n = {n}")]
    DimensionTooLarge { n: usize, k: usize },
    #[error("{what} needs {required} items but the enumeration budget is {budget}")]
    BudgetExceeded {
        what: String,
        required: u128,
        budget: u128,
    },
    #[error("generator is not a nonzero nonunit idempotent")]
    NotNontrivialIdempotent,
    #[error("only 2x2 matrix rings are supported here (got n = {0})")]
    UnsupportedSize(u32),
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
