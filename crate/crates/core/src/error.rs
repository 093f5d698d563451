//! Error type shared across the library.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A chain or sweep parameter violates a precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Some eigen-frequency is non-positive.
    #[error("unstable chain: |kappa| too large ({0})")]
    UnstableChain(String),

    /// Matrix or mode-count mismatch between operands.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A gate or pair references a mode outside 1..=n.
    #[error("mode index {index} out of range for {modes} modes")]
    ModeIndex { index: usize, modes: usize },

    /// A matrix required to be symmetric is not.
    #[error("matrix not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),

    /// A state failed the bona fide check (symplectic eigenvalue below 1).
    #[error("unphysical state: min symplectic eigenvalue {0} < 1")]
    UnphysicalState(f64),

    /// The eigensolver and closed-form symplectic spectra disagree.
    #[error("symplectic spectrum cross-check failed (discrepancy {0:.3e})")]
    SpectrumCrossCheck(f64),

    /// A claimed covariance matrix has a negative eigenvalue.
    #[error("matrix not positive definite (eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),

    /// Circuit text could not be parsed.
    #[error("circuit parse error at line {line}: {message}")]
    CircuitParse { line: usize, message: String },

    /// Sweep grid exceeds the hard point limit.
    #[error("sweep grid of {0} points exceeds the 10^7 limit")]
    GridTooLarge(usize),

    /// Decomposition and oracle engines disagreed beyond tolerance.
    #[error("engine cross-check failed: decomposition vs oracle differ by {0:.3e}")]
    EngineMismatch(f64),
}
