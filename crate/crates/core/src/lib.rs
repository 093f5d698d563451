//! Gaussian-state simulator for an open chain of harmonically coupled
//! oscillators.
//!
//! The library evolves covariance matrices of `n`-oscillator Gaussian
//! states under nearest-neighbor spring coupling, synthesizes the propagator
//! as a palindromic linear-optics circuit (couplers, single-mode squeezers,
//! rotators), validates it against a direct matrix-exponential oracle, and
//! quantifies pairwise entanglement through the logarithmic negativity.
//! The `protocols` module drives time sweeps, squeeze-tagged initial states,
//! peak detection, and end-to-end dominance reports.
//!
//! Conventions (fixed throughout):
//! - quadrature ordering `(q1, p1, ..., qN, pN)`, vacuum covariance = 1;
//! - maps act as `x -> S x`, states as `V -> S V S^T`;
//! - the propagator for time `t` is `exp(Omega (G/2) t)` with
//!   `H = 1/2 x^T G x`, so a bare oscillator rotates by `omega*t/2` and the
//!   dimensionless interaction time is `tau = omega*t`.

pub mod chain;
pub mod decomposition;
pub mod entanglement;
pub mod error;
pub mod oracle;
pub mod protocols;
pub mod symplectic;

pub use chain::{ChainModel, ChainSpec, EigenSystem, QuadraticForm};
pub use decomposition::{
    build_propagator, coupler_pattern, export_circuit, mode_schedule, parse_circuit,
    pattern_orthogonal, GateSequence, ModeSchedule,
};
pub use entanglement::{
    correlation_blocks, elementary_c_matrix, log_negativity, partial_transpose, reduce_pair,
    symplectic_spectrum_2mode, CorrelationBlocks, PairState,
};
pub use error::{Error, Result};
pub use oracle::{direct_propagator, matrix_exponential};
pub use protocols::{
    dominance_report, find_peak, initial_state, run_sweep, Engine, SweepConfig, SweepRecord,
};
pub use symplectic::{compose, symplectic_form, CovarianceMatrix, Gate, SymplecticMap};
