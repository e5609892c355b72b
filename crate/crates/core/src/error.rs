use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain mismatch: expected `{expected}`, found `{found}`")]
    DomainMismatch { expected: String, found: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("unknown symbol `{symbol}` in domain `{domain}`")]
    UnknownSymbol { domain: String, symbol: String },

    #[error(
        "no trivial decomposition: intermediate size {intermediate} is below both input size {input} and output size {output}"
    )]
    NoTrivialDecomposition { intermediate: usize, input: usize, output: usize },

    #[error("cap `{cap}` exceeded: limit {limit}, requested {requested}")]
    CapExceeded { cap: &'static str, limit: usize, requested: usize },

    #[error("solver gave up after {conflicts} conflicts and {decisions} decisions")]
    ResourceExhausted { conflicts: u64, decisions: u64 },

    #[error("arity mismatch: expected {expected} bits, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("track error: {0}")]
    Track(String),

    #[error(
        "intermediate alphabet of size {0} is not a power of two at least 2; no binary reduction is known for it"
    )]
    NotPowerOfTwo(usize),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// Name of the exhausted cap, if this error is a cap refusal.
    pub fn cap_name(&self) -> Option<&'static str> {
        match self {
            Error::CapExceeded { cap, .. } => Some(cap),
            Error::ResourceExhausted { .. } => Some("sat_conflicts"),
            _ => None,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
