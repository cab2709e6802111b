//! Crate-wide error type.

/// Errors surfaced by geometry validation, field evaluation and search.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the closed-form mean track length is defined for round coils only")]
    ClosedFormLengthForSquare,

    #[error("mean track length came out non-positive ({meters} m) for this geometry")]
    DegenerateTrackLength { meters: f64 },

    #[error("field point is within {limit_m} m of a conductor segment")]
    Singularity { limit_m: f64 },

    #[error("no feasible design in the search grid ({skipped} candidates skipped)")]
    EmptyFeasibleSet { skipped: usize },

    #[error("unknown substrate profile '{0}' (built-ins: kapton, silicon_on_wafer, silicon_to220_glued)")]
    UnknownSubstrate(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
