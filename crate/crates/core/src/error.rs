use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("nu = {nu} is a lattice point (singular)")]
    SingularPoint { nu: f64 },
    #[error("{0} is not in K")]
    NotInK(String),
    #[error("{0} is in K")]
    InK(String),
    #[error("bracket error: {0}")]
    Bracket(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("x0 is not on the grid: {0}")]
    GridMismatch(String),
    #[error("mismatched lattice point: {0}")]
    MismatchedPoint(String),
}

impl Error {
    /// True for errors caused by the inputs rather than by the numerics.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Convergence(_) | Error::Bracket(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
