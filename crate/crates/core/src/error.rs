use thiserror::Error;

/// Errors raised by the library.
///
/// Variants that describe an internal inconsistency (`NotRationalInteger`,
/// `FunctionalEquationViolated`, `MismatchAt`, `DivisionByZero`) should never
/// fire on correct code; they are the self-checks of the exact pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("size cap exceeded: {what} ({size} > {cap})")]
    SizeCapExceeded { what: String, size: u128, cap: u128 },
    #[error("F_q^{source_degree} is not a subfield of F_q^{target_degree}")]
    NotASubfield { source_degree: u32, target_degree: u32 },
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("cyclotomic number is not a rational integer: coords {coords:?}")]
    NotRationalInteger { coords: Vec<String> },
    #[error("work limit exceeded: {needed} > {limit}")]
    WorkLimitExceeded { needed: u128, limit: u128 },
    #[error("functional equation violated at k = {k}")]
    FunctionalEquationViolated { k: usize },
    #[error("series mismatch at n = {n}: L-polynomial gives {from_l}, point count gives {from_points}")]
    MismatchAt { n: u32, from_l: String, from_points: String },
    #[error("special value routes disagree: division gives {division}, product gives {product}")]
    SpecialValueMismatch { division: String, product: String },
    #[error("empty ensemble")]
    EmptyEnsemble,
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("field context mismatch")]
    ContextMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
