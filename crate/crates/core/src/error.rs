use thiserror::Error;

/// Errors raised while reading the line-oriented family and pattern formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: unexpected character {found:?}")]
    BadCharacter { line: usize, found: char },
    #[error("line {line}: expected {expected} columns, found {found}")]
    LengthMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: duplicate of the member on line {first}")]
    DuplicateRow { line: usize, first: usize },
    #[error("line {line}: {width} columns exceeds the supported maximum of {max}")]
    TooWide {
        line: usize,
        width: usize,
        max: usize,
    },
    #[error("line {line}: malformed header: {reason}")]
    BadHeader { line: usize, reason: String },
    #[error("pattern has no rows")]
    EmptyPattern,
    #[error("unknown pattern spec {0:?}; expected singleton:N, cosingleton:N, monotone:N, increasing:K or decreasing:K")]
    UnknownPattern(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("universe of {0} elements exceeds the supported maximum of 63")]
    UniverseTooLarge(usize),
    #[error("member {index} is not a subset of the {universe}-element universe")]
    OutOfUniverse { index: usize, universe: usize },
    #[error("members {first} and {second} are equal")]
    DuplicateMember { first: usize, second: usize },
    #[error("set index {index} out of range for a family of {len} members")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("element {element} out of range for a universe of {universe} elements")]
    ElementOutOfRange { element: usize, universe: usize },
    #[error("indices must be pairwise distinct")]
    RepeatedIndex,
    #[error("family has {members} members but the bound C({n},{k}) = {bound} must be exceeded")]
    BelowBound {
        members: usize,
        n: usize,
        k: usize,
        bound: u128,
    },
    #[error("family is not reduced")]
    NotReduced,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("Ramsey number R({0}) is not available")]
    MissingRamsey(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("soundness alarm: {0}")]
    Soundness(String),
}

pub type Result<T> = std::result::Result<T, Error>;
