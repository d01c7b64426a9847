use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field of size {p}^{k} exceeds the supported maximum of 81")]
    UnsupportedSize { p: u32, k: u32 },
    #[error("modulus is not a monic polynomial of degree {0} with coefficients in range")]
    InvalidModulus(u32),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("no fixed modulus exists for GF({p}^{k}) and none was supplied")]
    NoDefaultModulus { p: u32, k: u32 },
    #[error("element code {code} is out of range for a field with {q} elements")]
    InvalidElement { code: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("conjugating matrix is singular")]
    SingularConjugator,
    #[error("enumeration of {0} elements exceeds the guard")]
    TooLarge(u128),
    #[error("zero vector")]
    ZeroVector,
    #[error("{kind} requires {requirement}")]
    KindParamMismatch { kind: String, requirement: String },
    #[error("operation requires characteristic {expected}, field has characteristic {got}")]
    WrongCharacteristic { expected: u32, got: u32 },
    #[error("operation requires matrix size {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("subspace is not nilpotent")]
    NotNilpotent,
    #[error("nilpotent subspace admits no common flag")]
    NotTriangularizable,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("|GL_{n}({q})| = {order} exceeds the guard")]
    GroupTooLarge { n: usize, q: u32, order: u128 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("search budget of {0} nodes exhausted before completion")]
    BudgetExceeded(u64),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
