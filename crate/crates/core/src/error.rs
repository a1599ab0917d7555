use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller supplied an out-of-range parameter (negative squeezing,
    /// negative photon number, non-finite value, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-physical state: {0}")]
    NonPhysical(String),

    #[error("dimension mismatch: expected a 2x2 or 4x4 matrix, got {rows}x{cols}")]
    DimensionMismatch { rows: usize, cols: usize },

    /// Input outside the domain where a closed form is defined, e.g. the
    /// threshold machinery at `tau` in `{0, 1}`.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("invalid mode index {0}, expected 1 or 2")]
    InvalidMode(usize),
}
