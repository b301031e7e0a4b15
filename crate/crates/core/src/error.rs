use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on ids, ranges or set membership was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A step sequence is not consecutive. `position` is 1-based.
    #[error("invalid path at step {position}: {reason}")]
    InvalidPath { position: usize, reason: String },

    /// Arrow or path composition with mismatched endpoints or varieties.
    #[error("composition mismatch: {0}")]
    Composition(String),

    /// The requested variety is not supported by this operation.
    #[error("unsupported variety: {0}")]
    UnsupportedVariety(String),

    /// An exhaustive search would exceed its configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Malformed input file or textual syntax.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
