use thiserror::Error;

/// Errors raised by the library. Variants map onto the CLI exit codes:
/// `Verification` → 1, `InvalidInput` → 2, `Infeasible`/`Unsupported` → 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("size mismatch: |λ| = {left} but |μ| = {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("interlacing violated: {0}")]
    Interlacing(String),

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("singular interpolation system for l = {l} (diagram sizes ≤ {max_size})")]
    SingularSystem { l: usize, max_size: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
