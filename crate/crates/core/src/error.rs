use thiserror::Error;

/// Errors raised by the closed forms, the state constructors and the Fock oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Odd parity at vanishing amplitude: the state normalization is 0/0 and only the
    /// analytic W-type limits are meaningful there.
    #[error("limit regime: odd parity with |alpha|^2 = {alpha2:e} < {threshold:e}; use the W-limit forms")]
    LimitRegime { alpha2: f64, threshold: f64 },

    #[error("Fock truncation nmax = {nmax} too small: {detail}")]
    Truncation { nmax: usize, detail: String },

    #[error("invalid subsystem selection: {0}")]
    Subsystem(String),

    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
