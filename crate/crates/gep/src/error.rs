//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the solvers, special functions and I/O front end.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Polynomial degree above the supported cap.
    #[error("polynomial degree {degree} exceeds the cap of {cap}")]
    DegreeTooHigh { degree: usize, cap: usize },

    /// Non-finite coefficient or parameter where a finite value is required.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// Argument outside the real domain of a Lambert W branch.
    #[error("Lambert W argument {z} outside branch domain (branch point -1/e = {branch_point})")]
    LambertDomain { z: f64, branch_point: f64 },

    /// Iterative root refinement did not reach tolerance.
    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// Generic domain violation (nonpositive mass, r <= 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature stopped short of the requested tolerance.
    #[error("quadrature reached error {achieved:e}, requested {requested:e}")]
    QuadratureTolerance { achieved: f64, requested: f64 },

    /// Grid minimization ended on the grid boundary; the grid is too small.
    #[error("energy minimum on grid boundary at (xi={xi}, ln m^2={ln_m_sq}); enlarge the grid")]
    BoundaryMinimum { xi: f64, ln_m_sq: f64 },

    /// Operation requires a broken-phase solution.
    #[error("operation requires a broken-phase solution (xi != 0), got {0}")]
    NotBroken(String),

    /// Invalid run configuration or CLI usage.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// File or serialization failure in the CLI layer.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
