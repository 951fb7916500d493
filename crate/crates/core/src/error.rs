use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid pair (r={r}, a={a}): need 0 < a < r")]
    OutOfRange { r: u64, a: u64 },
    #[error("invalid pair (r={r}, a={a}): gcd(r, a) = {gcd}, expected 1")]
    NotCoprime { r: u64, a: u64, gcd: u64 },
    #[error("continued fraction entry {value} at position {index} is below 2")]
    EntryTooSmall { index: usize, value: u64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("generator index {index} out of range 1..={max}")]
    GeneratorOutOfRange { index: usize, max: usize },
    #[error("the zero monomial has no ideal class")]
    ZeroMonomial,
    #[error("kept vertex set must contain 0")]
    KeptSetMissingZero,
    #[error("vertex {vertex} out of range 0..={max}")]
    VertexOutOfRange { vertex: usize, max: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("malformed algebra: {0}")]
    MalformedAlgebra(String),
    #[error("arrow {arrow} lands in block ({got_src},{got_dst}), expected ({want_src},{want_dst})")]
    BlockMismatch {
        arrow: String,
        got_src: usize,
        got_dst: usize,
        want_src: usize,
        want_dst: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
