use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration of order {order} refused: exceeds the enumeration cap of {cap}")]
    EnumerationCap { order: usize, cap: usize },

    #[error("truncation order {order} exceeds the cap of {cap} for {what}")]
    TruncationCap {
        what: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("malformed tree word at offset {offset}: {reason}")]
    Parse { offset: usize, reason: &'static str },

    #[error("invalid labeling variant {0}, expected 1, 2 or 3")]
    InvalidVariant(u8),

    #[error("vertex {0} is not in the graph")]
    NoSuchVertex(usize),

    #[error("a pair needs two distinct vertices, got {0} twice")]
    SameVertex(usize),

    #[error("coefficient index {index} is beyond truncation order {trunc}")]
    OutOfRange { index: usize, trunc: usize },

    #[error("mark index has {got} entries, the series has {expected} marks")]
    MarkArity { expected: usize, got: usize },

    #[error("series is not invertible: {0}")]
    NotInvertible(&'static str),

    #[error("{name}: the two derivations disagree first at z^{n}")]
    RouteMismatch { name: &'static str, n: usize },

    #[error("no identity named {0:?}")]
    UnknownIdentity(String),

    #[error("evaluation point must lie in [0, rho)")]
    OutsideDisk,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("empty input")]
    EmptyInput,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
