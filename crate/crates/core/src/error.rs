use thiserror::Error;

use crate::algebra::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The tables themselves are malformed (wrong shape, index out of range,
    /// unknown label). Distinct from an axiom failure.
    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("axiom violated: {0}")]
    Axiom(Violation),

    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: &'static str, reason: String },

    #[error("size cap exceeded: {what} is {actual}, cap is {cap}")]
    SizeCap {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("{0} is not a closed set of this space")]
    NotClosed(String),

    #[error("homomorphism is not surjective; element {0} is not hit")]
    NotSurjective(String),

    #[error("contraction property fails: preimage of {0} is not a point of the domain space")]
    ContractionFails(String),

    #[error("semimodules are over different semirings")]
    RingMismatch,

    #[error("unknown distinguished class {0:?}")]
    UnknownKind(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
