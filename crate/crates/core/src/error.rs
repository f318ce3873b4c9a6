use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("parse error at line {line}, column {column}: invalid token `{token}`")]
    Parse {
        line: usize,
        column: usize,
        token: String,
    },

    /// `position` is the 1-based index of the second of the two equal symbols.
    #[error("immediate repetition at position {position}")]
    ImmediateRepetition { position: usize },

    #[error("symbol {value} out of range (must lie in 1..={max})")]
    SymbolRange { value: i64, max: u64 },

    #[error("invalid pair: symbols must be distinct, got {0} twice")]
    InvalidPair(u32),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("order too small for this alphabet: need s >= 3q - 2 = {needed} (s = {s}, q = {q})")]
    OrderTooSmall { s: u64, q: u64, needed: u64 },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("length budget exceeded: {needed} symbols requested, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
