//! Shared fixtures for the criterion benchmarks: a small family of graphs
//! whose construction is deterministic, so successive benchmark runs measure
//! the same workload.

use sparsecol::graph::construct::{cycle, petersen};
use sparsecol::graph::generate::{gnp_capped, random_regular};
use sparsecol::{blow_up, Graph};

/// Seed every fixture derives from, so the benchmark corpus is stable.
pub const FIXTURE_SEED: u64 = 0x5eed;

/// Dense-neighbourhood fixture: the 8-fold blow-up of the five-cycle
/// (40 vertices, 16-regular, sparsity 1/3).
pub fn blown_cycle() -> Graph {
    blow_up(&cycle(5).unwrap(), 8).unwrap()
}

/// Random sparse fixture: G(n, p) with degrees capped at 16.
pub fn capped_gnp(n: usize) -> Graph {
    gnp_capped(n, 24.0 / n as f64, 16, FIXTURE_SEED).unwrap()
}

/// Regular fixture for degree-sensitive paths.
pub fn regular(n: usize, d: usize) -> Graph {
    random_regular(n, d, FIXTURE_SEED).unwrap()
}

/// The Petersen graph, the smallest interesting triangle-free case.
pub fn small() -> Graph {
    petersen()
}
