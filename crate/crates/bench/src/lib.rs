//! Shared fixtures for the kernel benchmarks.

use gausschain::{ChainModel, ChainSpec};

/// Reference chain used across the benchmarks.
pub fn bench_spec(n: usize) -> ChainSpec {
    ChainSpec::new(n, 1.0, 0.1, ChainModel::Full).expect("valid bench spec")
}
