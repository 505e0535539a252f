use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group parameters m={m}, p={p}, n={n}: {reason}")]
    InvalidParams {
        m: u32,
        p: u32,
        n: usize,
        reason: &'static str,
    },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("index {0} appears more than once in the permutation")]
    RepeatedIndex(usize),

    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },

    #[error("weight sum {sum} is not divisible by p={p}, so the element is not in the group")]
    NotMember { sum: u32, p: u32 },

    #[error("elements belong to different groups")]
    ParamsMismatch,

    #[error("not a reflection of the group: {0}")]
    NotReflection(String),

    #[error("element has {cycles} cycles; at most {max} are supported")]
    TooManyCycles { cycles: usize, max: usize },

    #[error("{what} exceeded the limit of {limit}")]
    LimitExceeded { what: &'static str, limit: usize },

    #[error("braid generator {index} is out of range for a factorization of length {len}")]
    BraidIndex { index: usize, len: usize },

    #[error("factorizations have different products")]
    ProductMismatch,

    #[error("factorization of length {len} is not shortest (reflection length is {length})")]
    NotShortest { len: usize, length: usize },

    #[error("factorization is not in standard form")]
    NotStandardForm,

    #[error("invalid cycle partition: {0}")]
    InvalidPartition(String),

    #[error("expected {expected} values, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("the simplified length formula needs p = 1 or p = m (got p={p}, m={m})")]
    SpecialCaseNotApplicable { m: u32, p: u32 },

    #[error("{0}")]
    InvalidBraid(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Guard trips are reported separately from domain errors by the CLI.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. } | Error::TooManyCycles { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
