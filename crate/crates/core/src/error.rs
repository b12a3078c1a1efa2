use thiserror::Error;

/// Errors raised by geometry, image, and inclusion operations.
#[derive(Debug, Error)]
pub enum MorphError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point set must be non-empty")]
    EmptySet,

    #[error("structuring element must contain the origin")]
    MissingOrigin,

    #[error("point {point} is not in the pixel set")]
    PointNotInDomain { point: String },

    #[error("rectangle bounds invalid: lo {lo} exceeds hi {hi} in coordinate {axis}")]
    InvalidRectangle { lo: i64, hi: i64, axis: usize },

    #[error("image value for {point} is negative ({value})")]
    NegativeValue { point: String, value: f64 },

    #[error("image is missing a value for domain point {point}")]
    MissingValue { point: String },

    #[error("images have different domains")]
    DomainMismatch,

    #[error("diagram parse error at line {line}: {reason}")]
    DiagramParse { line: usize, reason: String },

    #[error("diagram has no origin marker but a structuring element was requested")]
    DiagramNoOrigin,

    #[error("diagram has more than one origin marker")]
    DiagramMultipleOrigins,

    #[error("not a rectangle: {0}")]
    NotRectangle(String),

    #[error("pixel-set cap exceeded: |P| = {size} > {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("sequence must contain at least {min} structuring elements")]
    SequenceTooShort { min: usize },

    #[error("sequence failed verification at step {step}; pass force to run anyway")]
    UnverifiedSequence { step: usize },

    #[error("{format} parse error at line {line}: {reason}")]
    FormatParse {
        format: &'static str,
        line: usize,
        reason: String,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, MorphError>;
