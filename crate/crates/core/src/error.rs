use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed norm, interval, job or numeric parameter.
    #[error("configuration error: {0}")]
    Config(String),
    /// Tangent or coincident circles, unresolvable anchors.
    #[error("geometric degeneracy: {0}")]
    Degenerate(String),
    /// Input data that does not fit the operation (partial coloring, unbound geometry).
    #[error("invalid input: {0}")]
    Input(String),
    /// A hypothesis of the requested construction does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The operation declines to run on this input, e.g. an under-sized tiling.
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
