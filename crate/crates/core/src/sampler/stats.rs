//! Monte Carlo harness for the sampler.
//!
//! Trials are independent substreams of one master seed, so results are
//! reproducible run to run and independent of how rayon splits the work:
//! all accumulation happens in integer counters whose merge is exact.

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::Graph;
use crate::rng::substream;
use crate::sampler::{draw_round, fill_local_maxima, SamplerConfig, SamplerError};

// ==========================================================================
// Counters
// ==========================================================================

/// Raw per-root tallies over all trials. `root` doubles as the membership
/// target (`in_set` counts trials with the root itself sampled) and as the
/// neighbourhood under study (the remaining counters tally `I_r`, the
/// sampled subset of `N(root)`).
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RootStats {
    pub root: u32,
    /// Trials in which the root itself landed in the sample.
    pub in_set: u64,
    /// Trials with at least one sampled neighbour.
    pub nonempty: u64,
    pub size_sum: u64,
    pub size_sq_sum: u128,
    pub pairs_sum: u64,
    pub pairs_sq_sum: u128,
    pub triples_sum: u64,
    pub triples_sq_sum: u128,
}

impl RootStats {
    fn new(root: u32) -> Self {
        Self {
            root,
            in_set: 0,
            nonempty: 0,
            size_sum: 0,
            size_sq_sum: 0,
            pairs_sum: 0,
            pairs_sq_sum: 0,
            triples_sum: 0,
            triples_sq_sum: 0,
        }
    }

    fn merge(&mut self, other: &RootStats) {
        debug_assert_eq!(self.root, other.root);
        self.in_set += other.in_set;
        self.nonempty += other.nonempty;
        self.size_sum += other.size_sum;
        self.size_sq_sum += other.size_sq_sum;
        self.pairs_sum += other.pairs_sum;
        self.pairs_sq_sum += other.pairs_sq_sum;
        self.triples_sum += other.triples_sum;
        self.triples_sq_sum += other.triples_sq_sum;
    }
}

/// Aggregated experiment results.
#[derive(Debug, Clone, Serialize)]
pub struct SampleStats {
    pub trials: u64,
    pub gamma: f64,
    pub activation: f64,
    pub delta_eff: usize,
    pub seed: u64,
    pub roots: Vec<RootStats>,
}

/// Human-facing estimates derived from one root's counters.
#[derive(Debug, Clone, Serialize)]
pub struct RootSummary {
    pub root: u32,
    pub p_in: f64,
    pub p_in_stderr: f64,
    pub p_nonempty: f64,
    pub p_nonempty_stderr: f64,
    pub mean_size: f64,
    pub mean_size_stderr: f64,
    pub mean_pairs: f64,
    pub mean_pairs_stderr: f64,
    pub mean_triples: f64,
    pub mean_triples_stderr: f64,
    /// `p_nonempty / mean_size`; absent when no neighbour was ever sampled.
    pub ratio: Option<f64>,
}

impl SampleStats {
    pub fn summaries(&self) -> Vec<RootSummary> {
        self.roots.iter().map(|r| self.summarize(r)).collect()
    }

    fn summarize(&self, r: &RootStats) -> RootSummary {
        let t = self.trials as f64;
        let bernoulli = |count: u64| {
            let p = count as f64 / t;
            (p, (p * (1.0 - p) / t).sqrt())
        };
        let mean = |sum: u64, sq_sum: u128| {
            let m = sum as f64 / t;
            let var = (sq_sum as f64 / t - m * m).max(0.0);
            (m, (var / t).sqrt())
        };
        let (p_in, p_in_stderr) = bernoulli(r.in_set);
        let (p_nonempty, p_nonempty_stderr) = bernoulli(r.nonempty);
        let (mean_size, mean_size_stderr) = mean(r.size_sum, r.size_sq_sum);
        let (mean_pairs, mean_pairs_stderr) = mean(r.pairs_sum, r.pairs_sq_sum);
        let (mean_triples, mean_triples_stderr) = mean(r.triples_sum, r.triples_sq_sum);
        RootSummary {
            root: r.root,
            p_in,
            p_in_stderr,
            p_nonempty,
            p_nonempty_stderr,
            mean_size,
            mean_size_stderr,
            mean_pairs,
            mean_pairs_stderr,
            mean_triples,
            mean_triples_stderr,
            ratio: (r.size_sum > 0).then(|| p_nonempty / mean_size),
        }
    }
}

// ==========================================================================
// Harness
// ==========================================================================

struct TrialScratch {
    active: Vec<bool>,
    priorities: Vec<f64>,
    member: Vec<bool>,
    counters: Vec<RootStats>,
}

impl TrialScratch {
    fn new(n: usize, roots: &[u32]) -> Self {
        Self {
            active: vec![false; n],
            priorities: vec![0.0; n],
            member: vec![false; n],
            counters: roots.iter().map(|&r| RootStats::new(r)).collect(),
        }
    }

    fn run_trial(&mut self, g: &Graph, roots: &[u32], p: f64, seed: u64, trial: u64) {
        let mut rng = substream(seed, trial);
        draw_round(p, &mut rng, &mut self.active, &mut self.priorities);
        fill_local_maxima(g, &self.active, &self.priorities, &mut self.member);
        for (slot, &root) in self.counters.iter_mut().zip(roots) {
            if self.member[root as usize] {
                slot.in_set += 1;
            }
            let m = g
                .neighbours(root)
                .iter()
                .filter(|&&u| self.member[u as usize])
                .count() as u64;
            if m == 0 {
                continue;
            }
            let pairs = m * (m - 1) / 2;
            let triples = if m >= 3 { m * (m - 1) * (m - 2) / 6 } else { 0 };
            // The truncated inclusion-exclusion minorant must dominate the
            // indicator on every single outcome, not merely in expectation.
            assert!(
                m as i128 - pairs as i128 + triples as i128 >= 1,
                "inclusion-exclusion minorant failed at root {root}, |I_r| = {m}"
            );
            slot.nonempty += 1;
            slot.size_sum += m;
            slot.size_sq_sum += (m * m) as u128;
            slot.pairs_sum += pairs;
            slot.pairs_sq_sum += (pairs as u128) * (pairs as u128);
            slot.triples_sum += triples;
            slot.triples_sq_sum += (triples as u128) * (triples as u128);
        }
    }
}

/// Runs `trials` independent sampling rounds and tallies the given roots.
/// Trial `t` uses substream `t` of `cfg.seed`, so any single trial can be
/// replayed with [`sample_independent_set`](crate::sample_independent_set).
pub fn monte_carlo_stats(
    g: &Graph,
    roots: &[u32],
    cfg: &SamplerConfig,
    trials: u64,
) -> Result<SampleStats, SamplerError> {
    let p = cfg.activation_probability(g)?;
    let n = g.vertex_count();
    for &r in roots {
        if r as usize >= n {
            return Err(SamplerError::Domain(format!(
                "root {r} outside graph with {n} vertices"
            )));
        }
    }
    let counters = (0..trials)
        .into_par_iter()
        .fold(
            || TrialScratch::new(n, roots),
            |mut scratch, trial| {
                scratch.run_trial(g, roots, p, cfg.seed, trial);
                scratch
            },
        )
        .map(|scratch| scratch.counters)
        .reduce(
            || roots.iter().map(|&r| RootStats::new(r)).collect(),
            |mut left, right| {
                for (l, r) in left.iter_mut().zip(&right) {
                    l.merge(r);
                }
                left
            },
        );
    Ok(SampleStats {
        trials,
        gamma: cfg.gamma,
        activation: p,
        delta_eff: cfg.effective_delta(g),
        seed: cfg.seed,
        roots: counters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct;
    use crate::sampler::sample_independent_set;

    #[test]
    fn counters_are_thread_count_invariant() {
        let g = construct::petersen();
        let cfg = SamplerConfig::new(2.0, 99);
        let roots: Vec<u32> = (0..10).collect();
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| monte_carlo_stats(&g, &roots, &cfg, 20_000).unwrap())
        };
        let single = run(1);
        let multi = run(4);
        assert_eq!(single.roots, multi.roots);
    }

    #[test]
    fn trials_replay_through_the_single_shot_sampler() {
        let g = construct::cycle(7).unwrap();
        let cfg = SamplerConfig::new(1.0, 5);
        // Count vertex 3 memberships by replaying each trial individually.
        let mut manual = 0u64;
        for t in 0..500 {
            let mut rng = substream(cfg.seed, t);
            let out = sample_independent_set(&g, &cfg, &mut rng).unwrap();
            if out.independent.contains(&3) {
                manual += 1;
            }
        }
        let stats = monte_carlo_stats(&g, &[3], &cfg, 500).unwrap();
        assert_eq!(stats.roots[0].in_set, manual);
    }

    #[test]
    fn triangle_membership_calibrates() {
        let g = construct::complete(3).unwrap();
        let cfg = SamplerConfig::new(1.0, 2024);
        let stats = monte_carlo_stats(&g, &[0, 1, 2], &cfg, 200_000).unwrap();
        for summary in stats.summaries() {
            let err = (summary.p_in - 7.0 / 24.0).abs();
            assert!(
                err <= 5.0 * summary.p_in_stderr,
                "vertex {}: {} vs 7/24",
                summary.root,
                summary.p_in
            );
        }
    }

    #[test]
    fn nonempty_never_exceeds_size_sum() {
        let g = construct::petersen();
        let cfg = SamplerConfig::new(3.0, 7);
        let stats = monte_carlo_stats(&g, &[0, 4, 9], &cfg, 50_000).unwrap();
        for r in &stats.roots {
            assert!(r.nonempty <= r.size_sum);
            assert!(r.in_set <= stats.trials);
            let s = stats.summaries();
            let summary = s.iter().find(|s| s.root == r.root).unwrap();
            if let Some(ratio) = summary.ratio {
                assert!(ratio > 0.0 && ratio <= 1.0);
            }
        }
    }

    #[test]
    fn roots_are_validated() {
        let g = construct::cycle(5).unwrap();
        let cfg = SamplerConfig::new(1.0, 0);
        assert!(monte_carlo_stats(&g, &[5], &cfg, 10).is_err());
    }
}
