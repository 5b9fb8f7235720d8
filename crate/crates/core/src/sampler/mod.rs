//! Randomized priority sampling of independent sets.
//!
//! One round: every vertex activates independently with probability
//! `gamma / D`, every vertex draws a uniform priority, and the sample keeps
//! the activated vertices that beat all of their activated neighbours. An
//! activated vertex `u` *trumps* a neighbour `v` when `pi(u) >= pi(v)`;
//! exact priority ties (measure zero, but floats can collide) are broken
//! by id, keeping the larger id out of the sample.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

pub mod formulas;
pub mod stats;

/// Errors from sampler configuration or formula domains.
#[derive(Debug, Error)]
pub enum SamplerError {
    #[error("activation probability gamma/delta = {p} falls outside [0, 1] (gamma = {gamma}, effective delta = {delta_eff})")]
    Activation { gamma: f64, delta_eff: usize, p: f64 },
    #[error("{0}")]
    Domain(String),
}

/// Parameters of one sampling experiment.
#[derive(Debug, Clone, Serialize)]
pub struct SamplerConfig {
    /// Activation intensity; the per-vertex activation probability is
    /// `gamma / D` with `D` the effective maximum degree.
    pub gamma: f64,
    /// Replaces the measured maximum degree, so the sampler can run on an
    /// irregular graph exactly as it would inside a larger regular host.
    pub delta_override: Option<usize>,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn new(gamma: f64, seed: u64) -> Self {
        Self {
            gamma,
            delta_override: None,
            seed,
        }
    }

    /// The degree parameter used for activation: the override if set, else
    /// the measured maximum degree (clamped to at least 1 so the edgeless
    /// graph gets a meaningful probability).
    pub fn effective_delta(&self, g: &Graph) -> usize {
        self.delta_override.unwrap_or_else(|| g.max_degree().max(1))
    }

    /// `gamma / effective_delta`, validated to lie in `[0, 1]`.
    pub fn activation_probability(&self, g: &Graph) -> Result<f64, SamplerError> {
        let delta_eff = self.effective_delta(g);
        let p = self.gamma / delta_eff as f64;
        if !(0.0..=1.0).contains(&p) {
            return Err(SamplerError::Activation {
                gamma: self.gamma,
                delta_eff,
                p,
            });
        }
        Ok(p)
    }
}

/// Full record of one sampling round.
#[derive(Debug, Clone, Serialize)]
pub struct SampleOutcome {
    /// Activated vertices, ascending.
    pub activated: Vec<u32>,
    /// Priority of every vertex (drawn for all vertices in id order so the
    /// stream layout is input-independent; only activated ones matter).
    pub priorities: Vec<f64>,
    /// The sampled independent set, ascending.
    pub independent: Vec<u32>,
}

/// Runs one sampling round, drawing one activation uniform and one priority
/// uniform per vertex in ascending id order (2n draws total).
pub fn sample_independent_set(
    g: &Graph,
    cfg: &SamplerConfig,
    rng: &mut impl Rng,
) -> Result<SampleOutcome, SamplerError> {
    let p = cfg.activation_probability(g)?;
    let n = g.vertex_count();
    let mut active = vec![false; n];
    let mut priorities = vec![0.0f64; n];
    draw_round(p, rng, &mut active, &mut priorities);
    let independent = local_maxima(g, &active, &priorities);
    Ok(SampleOutcome {
        activated: (0..n as u32).filter(|&v| active[v as usize]).collect(),
        priorities,
        independent,
    })
}

/// Fills one round of raw randomness: per vertex in ascending id order, one
/// activation uniform then one priority uniform. Every caller of the stream
/// shares this layout, so trial `t` is reproducible from its substream alone.
pub(crate) fn draw_round(
    p: f64,
    rng: &mut impl Rng,
    active: &mut [bool],
    priorities: &mut [f64],
) {
    for v in 0..active.len() {
        active[v] = rng.random::<f64>() < p;
        priorities[v] = rng.random::<f64>();
    }
}

/// True when `u` trumps `v`: strictly higher priority, or an exact tie
/// resolved against the larger id.
#[inline]
pub fn trumps(pi_u: f64, pi_v: f64, u: u32, v: u32) -> bool {
    pi_u > pi_v || (pi_u == pi_v && u < v)
}

/// Membership test shared by every evaluation path: activated and beaten by
/// no activated neighbour.
pub(crate) fn fill_local_maxima(
    g: &Graph,
    active: &[bool],
    priorities: &[f64],
    member: &mut [bool],
) {
    for v in 0..g.vertex_count() as u32 {
        member[v as usize] = active[v as usize]
            && !g.neighbours(v).iter().any(|&u| {
                active[u as usize] && trumps(priorities[u as usize], priorities[v as usize], u, v)
            });
    }
}

/// Recomputes the sample from raw draws: activated vertices beaten by no
/// activated neighbour. Exposed so harnesses can cross-check outcomes
/// against an independent evaluation of the membership rule.
pub fn local_maxima(g: &Graph, active: &[bool], priorities: &[f64]) -> Vec<u32> {
    let mut member = vec![false; g.vertex_count()];
    fill_local_maxima(g, active, priorities, &mut member);
    (0..g.vertex_count() as u32)
        .filter(|&v| member[v as usize])
        .collect()
}
