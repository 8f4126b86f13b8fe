use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid spin: twice_spin must be >= 1, got {0}")]
    InvalidSpin(u32),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("Hilbert dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: u128, cap: usize },

    #[error("states belong to different system configurations")]
    ConfigMismatch,

    #[error("spin index {index} out of range 1..={n_spins}")]
    SpinIndex { index: usize, n_spins: usize },

    #[error("{what}: value {value} outside the admissible domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    #[error("{what} is singular at theta = {theta}")]
    Singular { what: &'static str, theta: f64 },

    #[error("degenerate manifold: {0}")]
    Degenerate(String),

    #[error("phase undefined: overlap magnitude {0:e} is below the orthogonality threshold")]
    UndefinedPhase(f64),

    #[error("state is not normalized: norm^2 = {0}")]
    NotNormalized(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("malformed state record: {0}")]
    Record(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
