//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the curve-box toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A chord's endpoints coincide (or a polyline has zero length), so no
    /// normalization frame exists.
    #[error("degenerate chord: endpoints coincide or polyline has zero length")]
    DegenerateChord,

    /// An annotation polygon violates the 2k-point contract.
    #[error("malformed annotation: {0}")]
    MalformedAnnotation(String),

    /// A least-squares fit was requested with fewer samples than free
    /// parameters.
    #[error("insufficient points: need at least {needed}, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    /// The design matrix of a fit is rank-deficient (e.g. all abscissae
    /// equal).
    #[error("singular fit: design matrix is rank-deficient")]
    SingularFit,

    /// Two parameter sets that must share a mask do not.
    #[error("incompatible params: masks differ ({left} vs {right})")]
    IncompatibleParams { left: String, right: String },

    /// An invalid parameter-mask specification.
    #[error("invalid mask: {0}")]
    InvalidMask(String),

    /// Map or tensor shapes disagree.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A configuration value is out of its valid range.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// A text input file failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A tensor file is malformed (bad magic, bad header, short payload).
    #[error("bad tensor file: {0}")]
    BadTensor(String),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
