use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("mode index {mode} out of range for a {modes}-mode state")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("invalid mode partition: {0}")]
    InvalidPartition(String),

    #[error("matrix is not symmetric (max deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("covariance matrix is not bona fide (min symplectic eigenvalue {min_symplectic_eigenvalue})")]
    NotBonaFide { min_symplectic_eigenvalue: f64 },

    #[error("state is not pure (det = {det})")]
    NotPure { det: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The convex-roof search ran out of evaluations before reaching a
    /// pure CM below the target.
    #[error("no feasible pure state found within {evaluations} evaluations (best residual {residual:e})")]
    Infeasible { residual: f64, evaluations: usize },

    /// The measurement optimizer stopped while still improving.
    #[error("measurement optimization did not converge (best {best}, last relative improvement {relative_improvement:e})")]
    NotConverged {
        best: f64,
        relative_improvement: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn negative(name: &'static str, value: f64) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and nonnegative",
        }
    }
}

/// Rejects negative or non-finite scenario parameters.
pub(crate) fn check_nonnegative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::negative(name, value))
    }
}
