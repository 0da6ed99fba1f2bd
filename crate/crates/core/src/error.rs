use thiserror::Error;

/// Errors raised across the library. The CLI maps these onto exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("form {0} has a zero linear part")]
    ZeroNormal(usize),
    #[error("normals have rank {rank}, expected {dim}")]
    RankDeficient { rank: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("chamber limit exceeded: more than {0} chambers")]
    ChamberLimitExceeded(usize),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("point lies on hyperplane {0}")]
    OnHyperplane(usize),
    #[error("ambiguous sign at coordinate {0}")]
    AmbiguousSign(usize),
    #[error("zero coordinate at index {0}")]
    ZeroCoordinate(usize),
    #[error("exponent overflow: |lambda_{index}| = {value} exceeds {limit}")]
    Overflow {
        index: usize,
        value: f64,
        limit: f64,
    },
    #[error("input is not in the saturation N(A): {0}")]
    NotInN(String),
    #[error(
        "Newton iteration did not converge after {iterations} steps (grad norm {grad_norm:e})"
    )]
    NoConvergence { iterations: usize, grad_norm: f64 },
    #[error("points lie in different fibers: {0}")]
    DifferentFibers(String),
    #[error("no positive root at coordinate {0}")]
    NoRoot(usize),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, stable across messages.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedInput(_) => "MalformedInput",
            Error::ZeroNormal(_) => "ZeroNormal",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ChamberLimitExceeded(_) => "ChamberLimitExceeded",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::OnHyperplane(_) => "OnHyperplane",
            Error::AmbiguousSign(_) => "AmbiguousSign",
            Error::ZeroCoordinate(_) => "ZeroCoordinate",
            Error::Overflow { .. } => "Overflow",
            Error::NotInN(_) => "NotInN",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::DifferentFibers(_) => "DifferentFibers",
            Error::NoRoot(_) => "NoRoot",
            Error::DegreeOutOfRange(_) => "DegreeOutOfRange",
        }
    }

    /// Whether the error is caused by the caller's input rather than a
    /// numerical or internal failure.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::InternalInconsistency(_)
                | Error::NoConvergence { .. }
                | Error::NoRoot(_)
                | Error::Overflow { .. }
        )
    }
}
