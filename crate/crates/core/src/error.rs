//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Array or matrix dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Circulant embedding produced negative eigenvalue mass beyond the
    /// clipping tolerance even at the maximum padding factor.
    #[error(
        "circulant embedding failed at padding {padding}x: relative negative \
         eigenvalue {rel_min:.3e} exceeds clip tolerance {clip_tol:.1e}; \
         increase the padding limit or enlarge the grid"
    )]
    Embedding {
        padding: usize,
        rel_min: f64,
        clip_tol: f64,
    },

    /// Numerical quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// A Monte Carlo integrand returned a non-finite value.
    #[error("non-finite integrand value {value} at sample {sample:?}")]
    NonFinite { value: f64, sample: Vec<f64> },

    /// Configuration rejected; every violation is listed.
    #[error("invalid configuration:\n{}", .0.join("\n"))]
    Config(Vec<String>),

    /// Sample too small or constant for the requested statistic.
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// Malformed field file or record stream.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
