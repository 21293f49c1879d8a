use thiserror::Error;

/// Errors raised by the arithmetic, matrix and protocol layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} exceeds the supported range (at most {max})", max = crate::numtheory::MAX_MODULUS)]
    ModulusTooLarge(u64),

    #[error("{value} has no inverse modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("matrix is singular modulo {0}")]
    SingularMatrix(u64),

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("sequence/matrix order must be at least {min}, got {got}")]
    InvalidOrder { got: usize, min: usize },

    #[error("matrix order {got} exceeds the cap of {max}")]
    OrderTooLarge { got: usize, max: usize },

    #[error("{alpha} is not a primitive root modulo {modulus}")]
    NotPrimitiveRoot { alpha: u64, modulus: u64 },

    #[error("exponent {value} must satisfy 1 < exponent < {bound}")]
    ExponentOutOfRange { value: u64, bound: u64 },

    #[error("lambda = {0} is degenerate (needs lambda >= 2); choose a different e")]
    DegenerateLambda(u64),

    #[error("lambda = {got} exceeds the session cap of {max}")]
    LambdaTooLarge { got: u64, max: usize },

    #[error("key matrix for lambda = {lambda}, s = {s} is not invertible modulo {modulus}")]
    KeyNotInvertible { lambda: u64, s: u64, modulus: u64 },

    #[error("signature s = {s} must satisfy 1 <= s < {modulus}")]
    InvalidSignature { s: u64, modulus: u64 },

    #[error("unsupported character {ch:?} at position {position}")]
    UnsupportedCharacter { position: usize, ch: char },

    #[error("symbol {symbol} at position {position} is outside the alphabet of size {alphabet}")]
    SymbolOutOfRange { position: usize, symbol: u64, alphabet: u64 },

    #[error("stream length {len} is not a multiple of the block size {block}")]
    BlockMisaligned { len: usize, block: usize },

    #[error("search space {size} exceeds the enumeration limit {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
