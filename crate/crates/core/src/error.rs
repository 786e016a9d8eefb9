use thiserror::Error;

use crate::eigen::EigResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain where the quantity is defined.
    #[error("parameter domain violation: {0}")]
    Domain(String),

    /// The result does not fit in an `f64`.
    #[error("result out of floating-point range: {0}")]
    Range(String),

    #[error("eigensolver did not converge after {iterations} iterations")]
    NonConvergence {
        iterations: usize,
        partial: Box<EigResult>,
    },

    #[error("quadrature did not converge: error estimate {achieved:e} above requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    /// Tridiagonal recursion divides by A+; A+ = 0 has a closed form instead.
    #[error("A+ = {0} selects the Morse branch; use the closed-form spectrum")]
    MorseBranch(f64),

    #[error("no bound states are representable: {0}")]
    EmptySpectrum(String),

    #[error("matrix is not symmetric: max |H - H^T| = {max_asymmetry:e} exceeds {tolerance:e}")]
    Asymmetric { max_asymmetry: f64, tolerance: f64 },

    #[error("index {index} out of range; valid indices are 0..{len}")]
    OutOfRange { index: usize, len: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
}
