use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("z = {z} lies within {eps:e} of the pole set (tau/2)Z of the c-function")]
    Pole { z: Complex64, eps: f64 },

    #[error("spherical function phi_z(n) vanishes at n = {n} (|phi| = {value:e})")]
    DegenerateNormalization { n: usize, value: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Exit code used by the command line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain(_) | Error::Pole { .. } => 2,
            _ => 1,
        }
    }
}
