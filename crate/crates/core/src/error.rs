use thiserror::Error;

/// Errors raised by the transform library.
///
/// Variants fall in two groups: contract violations (bad shapes, invalid
/// parameters, unsupported dimensions) and numerical failures (divergent
/// admissibility integrals, truncation that never settles).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("singular matrix (|det| = {det:e})")]
    Singular { det: f64 },

    #[error("unsupported dimension {dim}: {reason}")]
    UnsupportedDimension { dim: usize, reason: &'static str },

    #[error("matrix is not orthogonal (defect {defect:e})")]
    NotOrthogonal { defect: f64 },

    #[error("matrix is not symmetric (defect {defect:e})")]
    NotSymmetric { defect: f64 },

    #[error("point is outside the required orbit: {0}")]
    OutsideOrbit(String),

    #[error("chart domain violation: {0}")]
    ChartDomain(String),

    #[error("test function support escapes the chart: {0}")]
    SupportEscapesChart(String),

    #[error("wavelet is not admissible: {0}")]
    NotAdmissible(String),

    #[error("admissibility integral diverges: {0}")]
    Divergent(String),

    #[error("chart truncation did not settle: {0}")]
    TruncationFailure(String),

    #[error("branch count mismatch: package has {expected}, got {actual}")]
    BranchMismatch { expected: usize, actual: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Divergent(_) | Error::TruncationFailure(_) | Error::NotAdmissible(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
