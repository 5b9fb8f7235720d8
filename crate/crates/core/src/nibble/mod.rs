//! One round of randomized list colouring with bad-event detection.
//!
//! Each vertex tentatively takes a uniform colour from its list and draws a
//! uniform priority. A vertex keeps its colour unless some neighbour picked
//! the same colour and outranks it; the losers form the residual set `U`.
//! The round then measures two kinds of bad events — vertices whose lists
//! lost too many colours, and residual sets that fail quasirandomness —
//! and resamples the entire round from a fresh substream while any event
//! fires, up to a retry budget. Properness never depends on the retries:
//! every attempt yields a proper partial colouring by construction.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::colouring::{validate_colouring, PartialColouring};
use crate::graph::analyze::{self, SlackSpec};
use crate::graph::Graph;
use crate::lists::{ListAssignment, ListError};
use crate::rational::ExactRatio;
use crate::rng::{round_attempt_index, substream};
use crate::sampler::formulas;
use crate::sampler::trumps;

pub mod driver;
pub use driver::{iterative_colour, iterative_colour_codegree, ColouringRun};

// ==========================================================================
// Configuration
// ==========================================================================

#[derive(Debug, Error)]
pub enum NibbleError {
    #[error("gamma must exceed 2, got {0}")]
    GammaTooSmall(f64),
    #[error("iota must lie strictly inside (0, 1), got {0}")]
    IotaOutOfRange(f64),
    #[error("max_retries must be at least 1")]
    NoRetries,
    #[error(transparent)]
    List(#[from] ListError),
    #[error("{0}")]
    Invalid(String),
}

/// How the bad-event thresholds are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NibbleMode {
    /// Literal asymptotic slacks: `sqrt(D) ln(D)^2` for list deletions and
    /// `sqrt(D) ln(D)^5` for quasirandom deviations. Mostly vacuous or
    /// unsatisfiable at desk scale; kept for fidelity runs.
    Strict,
    /// Configurable slacks (`list_slack`, `quasirandom_slack`); the default
    /// scaling keeps detection meaningful on small graphs.
    Practical,
}

/// Which savings rate feeds the list-size threshold and the colour budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsilonRule {
    /// `epsilon_col` of the measured neighbourhood sparsity.
    Sparsity,
    /// `epsilon_vu` of the measured codegree sparsity.
    Codegree,
}

/// Parameters shared by one round and by the full iterative driver.
#[derive(Debug, Clone, Serialize)]
pub struct NibbleConfig {
    /// Intensity: the driver keeps list size near `delta / gamma`. Must
    /// exceed 2 for the padding inequality to have room.
    pub gamma: f64,
    /// Slack fraction in `(0, 1)`; appears in the colour budget
    /// `(1 - epsilon + iota) * delta` and in the stopping rule.
    pub iota: f64,
    pub mode: NibbleMode,
    pub epsilon_rule: EpsilonRule,
    /// Practical-mode slack on list deletions (exponent default 2).
    pub list_slack: SlackSpec,
    /// Practical-mode slack on quasirandom deviations (exponent default 5).
    pub quasirandom_slack: SlackSpec,
    /// Total attempts per round (first try included); at least 1.
    pub max_retries: u32,
    /// Optional ceiling applied to the measured sparsity before the
    /// savings rate is computed (the strong-edge pipeline pins this at
    /// its core constant).
    pub sigma_cap: Option<f64>,
    pub seed: u64,
}

impl NibbleConfig {
    /// Practical-mode configuration with default slacks and 64 attempts.
    pub fn new(gamma: f64, iota: f64, seed: u64) -> Result<Self, NibbleError> {
        let cfg = Self {
            gamma,
            iota,
            mode: NibbleMode::Practical,
            epsilon_rule: EpsilonRule::Sparsity,
            list_slack: SlackSpec::Scaled { c: 1.0, p: 1.0 },
            quasirandom_slack: SlackSpec::Scaled { c: 1.0, p: 2.0 },
            max_retries: 64,
            sigma_cap: None,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), NibbleError> {
        if !(self.gamma > 2.0) {
            return Err(NibbleError::GammaTooSmall(self.gamma));
        }
        if !(self.iota > 0.0 && self.iota < 1.0) {
            return Err(NibbleError::IotaOutOfRange(self.iota));
        }
        if self.max_retries == 0 {
            return Err(NibbleError::NoRetries);
        }
        if let Some(cap) = self.sigma_cap {
            if !cap.is_finite() || !(0.0..=1.0).contains(&cap) {
                return Err(NibbleError::Invalid(format!(
                    "sigma cap {cap} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }

    fn list_slack_value(&self, delta: usize) -> f64 {
        match self.mode {
            NibbleMode::Strict => SlackSpec::Paper.eval(delta, 2.0),
            NibbleMode::Practical => self.list_slack.eval(delta, 2.0),
        }
    }

    fn quasirandom_slack_spec(&self) -> SlackSpec {
        match self.mode {
            NibbleMode::Strict => SlackSpec::Paper,
            NibbleMode::Practical => self.quasirandom_slack,
        }
    }

    /// The savings rate of `g` under this configuration's rule.
    pub(crate) fn epsilon_for(&self, g: &Graph) -> f64 {
        let sigma = match self.epsilon_rule {
            EpsilonRule::Sparsity => analyze::sigma_sparsity(g).sigma.to_f64(),
            EpsilonRule::Codegree => analyze::max_codegree(g).sigma_hat.to_f64(),
        };
        let sigma = match self.sigma_cap {
            Some(cap) => sigma.min(cap),
            None => sigma,
        }
        .clamp(0.0, 1.0);
        match self.epsilon_rule {
            EpsilonRule::Sparsity => formulas::epsilon_col(sigma),
            EpsilonRule::Codegree => formulas::epsilon_vu(sigma),
        }
        .expect("sigma clamped into domain")
    }
}

// ==========================================================================
// Round result
// ==========================================================================

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BadEventCounts {
    /// Vertices of the residual whose list lost more than `k - k'` colours.
    pub b_v: u64,
    /// Residual vertex pairs beyond the quasirandom deviation slack.
    pub b_uv: u64,
}

impl BadEventCounts {
    fn total(&self) -> u64 {
        self.b_v + self.b_uv
    }
}

/// Per-round diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct NibbleReport {
    pub round: u32,
    /// Uniform list size the round ran with.
    pub k: u32,
    /// Guaranteed residual list size `k - (1-mu)(1-eps+iota/2)delta - slack`,
    /// clamped into `[1, k]`.
    pub k_prime: u32,
    /// Padded list size for the next round; set by the driver when a next
    /// round actually runs.
    pub k_doubleprime: Option<u32>,
    pub delta_before: usize,
    pub delta_after: usize,
    pub sigma_before: ExactRatio,
    pub sigma_after: ExactRatio,
    /// Savings rate used in the `k'` threshold (per the configured rule).
    pub epsilon: f64,
    /// Retention constant `1 - (1 - e^-gamma)/gamma`.
    pub mu: f64,
    /// Counts from the accepted (or best surviving) attempt.
    pub bad_event_counts: BadEventCounts,
    /// Extra attempts consumed beyond the first.
    pub retries_used: u32,
    /// True when every attempt had bad events and the best one was kept.
    pub fallback_triggered: bool,
}

/// The raw randomness behind the accepted attempt, kept so outcomes can be
/// re-derived independently.
#[derive(Debug, Clone, Serialize)]
pub struct RoundDraws {
    /// Tentative colour of every vertex.
    pub colours: Vec<u32>,
    /// Priority of every vertex.
    pub priorities: Vec<f64>,
}

/// Everything a round produces.
#[derive(Debug, Clone)]
pub struct NibbleOutcome {
    /// Colour assignment on the round's vertex ids; domain is exactly the
    /// complement of the residual set.
    pub colouring: PartialColouring,
    /// Residual (still uncoloured) vertices, ascending, in round ids.
    pub residual_vertices: Vec<u32>,
    /// Induced subgraph on the residual set.
    pub residual: Graph,
    /// Residual local id -> round id.
    pub residual_map: Vec<u32>,
    /// Lists with coloured-neighbour colours removed, indexed by residual
    /// local ids. Ragged: sizes are `k - |deletions|`.
    pub residual_lists: ListAssignment,
    pub report: NibbleReport,
    pub draws: RoundDraws,
}

// ==========================================================================
// The round
// ==========================================================================

struct Attempt {
    draws: RoundDraws,
    /// True for vertices that lost their tentative colour.
    in_residual: Vec<bool>,
    bad: BadEventCounts,
}

/// Runs one colouring round on `g` with uniform `lists`. The `round` index
/// keys the substream family: attempt `a` draws from
/// `substream(cfg.seed, round_attempt_index(round, a))`.
///
/// # Errors
///
/// Invalid configuration, or lists that are missing, empty, or non-uniform.
pub fn one_nibble(
    g: &Graph,
    lists: &ListAssignment,
    cfg: &NibbleConfig,
    round: u32,
) -> Result<NibbleOutcome, NibbleError> {
    cfg.validate()?;
    let n = g.vertex_count();
    let k = lists.check_uniform(n)? as u32;
    let delta = g.max_degree();
    let sigma_before = analyze::sigma_sparsity(g).sigma;
    let epsilon = cfg.epsilon_for(g);
    let mu = formulas::mu(cfg.gamma);

    // Residual lists must keep at least k' colours; more than k - k'
    // deletions is the per-vertex bad event.
    let shrink = (1.0 - mu) * (1.0 - epsilon + cfg.iota / 2.0) * delta as f64
        + cfg.list_slack_value(delta);
    let k_prime = ((k as f64 - shrink).floor().max(1.0) as u32).min(k);
    let deletions_allowed = (k - k_prime) as usize;

    let mut best: Option<(u32, Attempt)> = None;
    let mut accepted = false;
    let mut retries_used = 0;
    for attempt in 0..cfg.max_retries {
        let result = run_attempt(g, lists, cfg, k, deletions_allowed, mu, round, attempt);
        let bad_total = result.bad.total();
        let better = match &best {
            None => true,
            Some((_, held)) => bad_total < held.bad.total(),
        };
        if better {
            best = Some((attempt, result));
        }
        if bad_total == 0 {
            accepted = true;
            retries_used = attempt;
            break;
        }
    }
    let (_, attempt) = best.expect("max_retries >= 1 guarantees an attempt");
    let fallback_triggered = !accepted;
    if fallback_triggered {
        retries_used = cfg.max_retries - 1;
    }

    // Materialize colouring, residual graph, and residual lists.
    let bad_event_counts = attempt.bad;
    let Attempt {
        draws, in_residual, ..
    } = attempt;
    let mut colouring = PartialColouring::new(n);
    for v in 0..n {
        if !in_residual[v] {
            colouring.set(v as u32, draws.colours[v]);
        }
    }
    let check = validate_colouring(g, &colouring);
    assert!(
        check.passes,
        "round colouring must be proper; conflicting edges: {:?}",
        check.monochromatic_edges
    );

    let residual_vertices: Vec<u32> = (0..n as u32).filter(|&v| in_residual[v as usize]).collect();
    let (residual, residual_map) = g.induced(&residual_vertices);
    let residual_lists = ListAssignment::from_lists(
        residual_map
            .iter()
            .map(|&orig| {
                // Del_c(v): colours taken by coloured neighbours.
                let mut deleted: Vec<u32> = g
                    .neighbours(orig)
                    .iter()
                    .filter_map(|&u| colouring.get(u))
                    .collect();
                deleted.sort_unstable();
                deleted.dedup();
                lists
                    .list(orig)
                    .iter()
                    .copied()
                    .filter(|c| deleted.binary_search(c).is_err())
                    .collect()
            })
            .collect(),
    );

    let sigma_after = analyze::sigma_sparsity(&residual).sigma;
    let report = NibbleReport {
        round,
        k,
        k_prime,
        k_doubleprime: None,
        delta_before: delta,
        delta_after: residual.max_degree(),
        sigma_before,
        sigma_after,
        epsilon,
        mu,
        bad_event_counts,
        retries_used,
        fallback_triggered,
    };

    Ok(NibbleOutcome {
        colouring,
        residual_vertices,
        residual,
        residual_map,
        residual_lists,
        report,
        draws,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_attempt(
    g: &Graph,
    lists: &ListAssignment,
    cfg: &NibbleConfig,
    k: u32,
    deletions_allowed: usize,
    mu: f64,
    round: u32,
    attempt: u32,
) -> Attempt {
    let n = g.vertex_count();
    let mut rng = substream(cfg.seed, round_attempt_index(round as u64, attempt));
    let mut colours = vec![0u32; n];
    let mut priorities = vec![0.0f64; n];
    for v in 0..n {
        let list = lists.list(v as u32);
        colours[v] = list[rng.random_range(0..k as usize)];
        priorities[v] = rng.random::<f64>();
    }

    // U: vertices with a same-coloured neighbour that outranks them.
    let mut in_residual = vec![false; n];
    for v in 0..n as u32 {
        in_residual[v as usize] = g.neighbours(v).iter().any(|&u| {
            colours[u as usize] == colours[v as usize]
                && trumps(priorities[u as usize], priorities[v as usize], u, v)
        });
    }

    // Bad event B_v: a residual vertex lost more than k - k' list colours.
    let mut b_v = 0u64;
    for v in 0..n as u32 {
        if !in_residual[v as usize] {
            continue;
        }
        let mut deleted: Vec<u32> = g
            .neighbours(v)
            .iter()
            .filter(|&&u| !in_residual[u as usize])
            .map(|&u| colours[u as usize])
            .collect();
        deleted.sort_unstable();
        deleted.dedup();
        let list = lists.list(v);
        let lost = deleted
            .iter()
            .filter(|c| list.binary_search(c).is_ok())
            .count();
        if lost > deletions_allowed {
            b_v += 1;
        }
    }

    // Bad event B_uv: quasirandom deviation of the residual set beyond slack.
    let residual: Vec<u32> = (0..n as u32).filter(|&v| in_residual[v as usize]).collect();
    let b_uv = analyze::quasirandom_check(g, &residual, mu, cfg.quasirandom_slack_spec())
        .expect("mu in [0,1] and residual vertices in range")
        .violations;

    Attempt {
        draws: RoundDraws {
            colours,
            priorities,
        },
        in_residual,
        bad: BadEventCounts { b_v, b_uv },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct;

    fn cfg(gamma: f64, seed: u64) -> NibbleConfig {
        NibbleConfig::new(gamma, 0.2, seed).unwrap()
    }

    #[test]
    fn config_is_validated() {
        assert!(NibbleConfig::new(2.0, 0.2, 0).is_err());
        assert!(NibbleConfig::new(3.0, 0.0, 0).is_err());
        assert!(NibbleConfig::new(3.0, 1.0, 0).is_err());
        let mut bad = cfg(3.0, 0);
        bad.max_retries = 0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn edgeless_round_colours_everything() {
        let g = Graph::edgeless(6);
        let lists = ListAssignment::uniform(6, 2);
        let out = one_nibble(&g, &lists, &cfg(3.0, 1), 0).unwrap();
        assert!(out.residual_vertices.is_empty());
        assert_eq!(out.residual.vertex_count(), 0);
        assert!(out.colouring.is_total());
        assert!(!out.report.fallback_triggered);
    }

    #[test]
    fn single_vertex_takes_its_only_colour() {
        let g = Graph::edgeless(1);
        let lists = ListAssignment::from_lists(vec![vec![7]]);
        let out = one_nibble(&g, &lists, &cfg(3.0, 0), 0).unwrap();
        assert_eq!(out.colouring.get(0), Some(7));
    }

    #[test]
    fn non_uniform_lists_are_rejected() {
        let g = construct::path(3).unwrap();
        let lists = ListAssignment::from_lists(vec![vec![0, 1], vec![0], vec![0, 1]]);
        assert!(one_nibble(&g, &lists, &cfg(3.0, 0), 0).is_err());
    }

    #[test]
    fn outcome_matches_recomputation_from_draws() {
        // The residual set, the colouring, and the residual lists must all
        // be re-derivable from the stored raw draws.
        let g = construct::cycle(5).unwrap();
        let lists = ListAssignment::uniform(5, 2);
        let cfg = cfg(2.5, 42);
        for round in 0..50 {
            let out = one_nibble(&g, &lists, &cfg, round).unwrap();
            let c0 = &out.draws.colours;
            let pi = &out.draws.priorities;
            for v in 0..5u32 {
                let trumped = g.neighbours(v).iter().any(|&u| {
                    c0[u as usize] == c0[v as usize]
                        && trumps(pi[u as usize], pi[v as usize], u, v)
                });
                assert_eq!(
                    trumped,
                    out.residual_vertices.binary_search(&v).is_ok(),
                    "round {round} vertex {v}"
                );
                if !trumped {
                    assert_eq!(out.colouring.get(v), Some(c0[v as usize]));
                } else {
                    assert_eq!(out.colouring.get(v), None);
                }
            }
            // Residual lists: exact set equality with the deletion rule.
            for (local, &orig) in out.residual_map.iter().enumerate() {
                let mut expect: Vec<u32> = lists
                    .list(orig)
                    .iter()
                    .copied()
                    .filter(|&c| {
                        !g.neighbours(orig)
                            .iter()
                            .any(|&u| out.colouring.get(u) == Some(c))
                    })
                    .collect();
                expect.sort_unstable();
                assert_eq!(out.residual_lists.list(local as u32), &expect[..]);
            }
            assert!(validate_colouring(&g, &out.colouring).passes);
        }
    }

    #[test]
    fn residual_graph_is_the_induced_subgraph() {
        let g = construct::petersen();
        let lists = ListAssignment::uniform(10, 2);
        let out = one_nibble(&g, &lists, &cfg(3.0, 9), 0).unwrap();
        for (a, &orig_a) in out.residual_map.iter().enumerate() {
            for (b, &orig_b) in out.residual_map.iter().enumerate() {
                if a < b {
                    assert_eq!(
                        out.residual.has_edge(a as u32, b as u32),
                        g.has_edge(orig_a, orig_b)
                    );
                }
            }
        }
    }

    #[test]
    fn strict_mode_uses_paper_slacks() {
        let mut c = cfg(3.0, 4);
        c.mode = NibbleMode::Strict;
        // Strict slacks at delta = 2 are tiny but defined; the round runs.
        let g = construct::cycle(5).unwrap();
        let lists = ListAssignment::uniform(5, 2);
        let out = one_nibble(&g, &lists, &c, 0).unwrap();
        assert!(validate_colouring(&g, &out.colouring).passes);
    }
}
