use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Raised by the critical-detuning routines: without deformation the
    /// generalized Rabi frequency is monotone in the photon number.
    #[error("k = 0: the Rabi frequency has no minimum over photon number, so no critical detuning exists")]
    ZeroDeformation,

    #[error("truncation n_max = {n_max} leaves tail mass {tail:.3e} above tolerance {tol:.1e}")]
    Truncation { n_max: usize, tail: f64, tol: f64 },

    #[error("matrix is not hermitian (max |m_ij - conj(m_ji)| = {0:.3e})")]
    NotHermitian(f64),

    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("state representation mismatch: {0}")]
    WrongRepresentation(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
