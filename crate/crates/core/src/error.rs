use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// Every variant has a stable kebab-case [`name`](Error::name) which is what
/// the command line tool and the session protocol report on the wire.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid payload `{0}`: must start and end with 1 and contain no \"00\"")]
    InvalidPayload(String),
    #[error("invalid bit string: unexpected character {0:?}")]
    InvalidBits(char),
    #[error("invalid group pattern `{0}`")]
    InvalidGroups(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("alphabet of {requested} symbols exceeds the {available} available codewords")]
    AlphabetTooLarge { requested: usize, available: usize },
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(char),
    #[error("unknown codeword `{0}`")]
    UnknownCodeword(String),
    #[error("unknown tap pattern `{0}`")]
    UnknownPattern(String),
    #[error("stream ends mid-codeword at bit {0}")]
    TruncatedStream(usize),
    #[error("malformed stream: {0}")]
    Malformed(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error("at least two tap events are needed to estimate the unit")]
    InsufficientEvents,
    #[error("two taps fall into grid slot {0}; tempo too fast for the unit")]
    Collision(u64),
    #[error("invalid session: {0}")]
    InvalidSession(String),
    #[error("corpus contains no usable characters")]
    EmptyCorpus,
    #[error("at least two symbols with non-zero probability are required")]
    DegenerateAlphabet,
    #[error("protocol error: {0}")]
    Protocol(String),
}

impl Error {
    /// Stable machine-readable error name.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidPayload(_) => "invalid-payload",
            Error::InvalidBits(_) => "invalid-bits",
            Error::InvalidGroups(_) => "invalid-groups",
            Error::InvalidAlphabet(_) => "invalid-alphabet",
            Error::AlphabetTooLarge { .. } => "alphabet-too-large",
            Error::InvalidTable(_) => "invalid-table",
            Error::UnknownSymbol(_) => "unknown-symbol",
            Error::UnknownCodeword(_) => "unknown-codeword",
            Error::UnknownPattern(_) => "unknown-pattern",
            Error::TruncatedStream(_) => "truncated-stream",
            Error::Malformed(_) => "malformed",
            Error::InvalidOption(_) => "invalid-option",
            Error::InsufficientEvents => "insufficient-events",
            Error::Collision(_) => "collision",
            Error::InvalidSession(_) => "invalid-session",
            Error::EmptyCorpus => "empty-corpus",
            Error::DegenerateAlphabet => "degenerate-alphabet",
            Error::Protocol(_) => "protocol-error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
