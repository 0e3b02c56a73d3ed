use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factor [{i}..{j}] out of range for word of length {len}")]
    IndexOutOfRange { i: usize, j: usize, len: usize },

    #[error("word length {len} is not divisible by {k}")]
    NotDivisible { len: usize, k: usize },

    #[error("cannot split an empty word into blocks")]
    EmptyBlock,

    #[error("operation requires a nonempty word")]
    EmptyInput,

    #[error("given word is not a border")]
    NotABorder,

    #[error("letter {letter} is outside the alphabet of size {size}")]
    LetterOutOfAlphabet { letter: u32, size: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid block signature: {0}")]
    InvalidSignature(String),

    #[error("parameter k = {got} is too small (need k >= {min})")]
    KTooSmall { min: u64, got: u64 },

    #[error("precision exhausted while deciding letter {index}")]
    PrecisionExhausted { index: u64 },

    #[error("gamma sequence violates growth condition at term {term}")]
    GrowthViolation { term: u64 },

    #[error("construction exponent is negative for these parameters")]
    DegenerateExponent,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("search inconclusive: threshold is at least {lower_bound}")]
    Inconclusive { lower_bound: u64 },

    #[error("enumeration too large: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
