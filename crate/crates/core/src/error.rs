use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:.3e} > {tolerance:.1e})")]
    NonHermitianInput { defect: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is not symmetric (defect {defect:.3e})")]
    NonSymmetric { defect: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("temperature must be positive, got {0}")]
    NonpositiveTemperature(f64),

    #[error("closed form requires a diagonal correlation matrix (off-diagonal {offdiag:.3e})")]
    NonXState { offdiag: f64 },

    #[error("phi = {0} is outside the unbroken PT phase (-pi/2, pi/2)")]
    BrokenPhase(f64),

    #[error("evolved state has vanishing trace {0:.3e}")]
    DegenerateNormalization(f64),

    #[error("fidelity routes disagree by {0:.3e}")]
    RouteMismatch(f64),

    #[error("invalid sweep range: {0}")]
    InvalidRange(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
