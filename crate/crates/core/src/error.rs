use thiserror::Error;

use crate::subspace::Subspace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid pair: {0}")]
    InvalidPair(String),

    /// The stabilizer contains a nonzero ideal; carries that ideal.
    #[error("pair is not effective: stabilizer contains a nonzero ideal of dimension {}", radical.dim())]
    NotEffective { radical: Subspace },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("bad seed: {0}")]
    BadSeed(String),

    /// Bracket of generators `i` and `j` leaves their linear span.
    #[error("family is not bracket-closed: [v{}, v{}] is outside the span of the generators", .i + 1, .j + 1)]
    NotClosed { i: usize, j: usize },

    #[error("catalog: {0}")]
    Catalog(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
