use thiserror::Error;

/// Errors produced by field construction, code derivation and verification.
#[derive(Error, Debug)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),

    #[error("field order {order} exceeds the supported cap of {cap}")]
    FieldTooLarge { order: u128, cap: u64 },

    #[error("element index {index} is out of range for a field of order {order}")]
    ElementOutOfRange { index: u64, order: u64 },

    #[error("division by zero in GF({order})")]
    DivisionByZero { order: u64 },

    #[error("the zero element has no discrete logarithm")]
    ZeroElement,

    #[error("GF({order}) is not an extension tower over GF({sub})")]
    NotASubfieldTower { sub: u64, order: u64 },

    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },

    #[error("multiplicative order is undefined modulo {0}")]
    ModulusOutOfRange(u64),

    #[error("extension degree must be at least 2, got {0}")]
    TrivialExtension(u32),

    #[error("e = {e} does not divide the group order {group}")]
    EDoesNotDivide { e: u64, group: u64 },

    #[error("shortening requires e to divide q - 1, got e = {e} and q = {q}")]
    ENotDividingQMinus1 { e: u64, q: u64 },

    #[error("alpha generates a degree {actual} extension of GF({q}), expected degree {expected}")]
    AlphaNotGenerating { q: u64, expected: u32, actual: u32 },

    #[error("window width {b} is out of range for words of length {len}")]
    WindowOutOfRange { b: usize, len: usize },

    #[error("word lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("words belong to different fields: GF({left}) vs GF({right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("verification failed: {claim} (witness: {witness})")]
    AssertionFailure { claim: String, witness: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
