//! The iterative palette-releasing driver.
//!
//! Round by round, a shrinking residual graph is coloured from shrinking
//! lists: after each round the surviving lists are trimmed to the size the
//! round guaranteed (`k'`) and padded with a shared block of fresh colours
//! back up to `k'' = ceil(delta'/gamma)`, keeping the degree-to-list-size
//! ratio pinned at `gamma`. The loop stops once the residual's maximum
//! degree falls below `floor(iota * delta / 3)` (or the round size
//! degenerates to `k = 1`), and a smallest-last greedy pass finishes the
//! job. A final guard re-colours from scratch in the rare case the mixed
//! palette exceeded `delta + 1` distinct colours, so the classical bound
//! holds unconditionally.

use serde::Serialize;

use crate::colouring::{greedy_complete, validate_colouring, ColouringValidation, PartialColouring};
use crate::graph::analyze;
use crate::graph::Graph;
use crate::lists::ListAssignment;
use crate::nibble::{one_nibble, EpsilonRule, NibbleConfig, NibbleError, NibbleMode, NibbleReport};
use crate::rational::ExactRatio;
use crate::sampler::formulas;

/// Complete record of one driver execution.
#[derive(Debug, Clone, Serialize)]
pub struct ColouringRun {
    /// Total proper colouring of the input graph.
    pub colouring: PartialColouring,
    pub validation: ColouringValidation,
    /// Distinct colours used.
    pub colour_count: usize,
    pub max_colour: Option<u32>,
    pub delta: usize,
    /// Neighbourhood sparsity of the input graph.
    pub sigma: ExactRatio,
    /// Codegree sparsity; measured only under the codegree rule.
    pub sigma_hat: Option<ExactRatio>,
    /// Savings rate of the input graph under the configured rule.
    pub epsilon: f64,
    /// Colour budget `(1 - epsilon + iota) * delta`.
    pub budget: f64,
    pub budget_colours: u64,
    pub within_budget: bool,
    pub rounds: Vec<NibbleReport>,
    /// Vertices coloured by nibble rounds / by the greedy completion.
    pub nibble_coloured: usize,
    pub greedy_coloured: usize,
    /// True when the mixed palette exceeded `delta + 1` distinct colours
    /// and the run fell back to a full greedy recolouring.
    pub full_greedy_fallback: bool,
    /// Iteration ceiling the loop ran under.
    pub hard_cap: u32,
    pub epsilon_rule: EpsilonRule,
}

/// Colours `g` with the iterative procedure under the neighbourhood
/// sparsity rule. Always produces a proper total colouring with at most
/// `delta + 1` distinct colours.
pub fn iterative_colour(g: &Graph, cfg: &NibbleConfig) -> Result<ColouringRun, NibbleError> {
    let mut cfg = cfg.clone();
    cfg.epsilon_rule = EpsilonRule::Sparsity;
    drive(g, &cfg)
}

/// Same driver with the codegree rule: `epsilon_vu` of the measured
/// codegree sparsity feeds the per-round threshold and the budget.
pub fn iterative_colour_codegree(
    g: &Graph,
    cfg: &NibbleConfig,
) -> Result<ColouringRun, NibbleError> {
    let mut cfg = cfg.clone();
    cfg.epsilon_rule = EpsilonRule::Codegree;
    drive(g, &cfg)
}

fn drive(g: &Graph, cfg: &NibbleConfig) -> Result<ColouringRun, NibbleError> {
    cfg.validate()?;
    let n = g.vertex_count();
    let delta0 = g.max_degree();
    let sigma = analyze::sigma_sparsity(g).sigma;
    let sigma_hat = matches!(cfg.epsilon_rule, EpsilonRule::Codegree)
        .then(|| analyze::max_codegree(g).sigma_hat);
    let epsilon = if n == 0 { 0.0 } else { cfg.epsilon_for(g) };
    let budget = (1.0 - epsilon + cfg.iota) * delta0 as f64;
    let budget_colours = budget.ceil() as u64;

    // Iteration ceiling: the residual degree contracts by roughly mu per
    // round, so reaching the iota*delta/3 threshold takes about
    // log_mu(iota/3) rounds; the cap leaves generous headroom.
    let mu = formulas::mu(cfg.gamma);
    let est = if mu > 0.0 && mu < 1.0 {
        ((cfg.iota / 3.0).ln() / mu.ln()).ceil().max(1.0) as u32
    } else {
        1
    };
    let hard_cap = est.saturating_mul(4).max(64);

    let mut colouring = PartialColouring::new(n);
    let mut rounds: Vec<NibbleReport> = Vec::new();
    let mut next_fresh: u32 = 0;

    if n > 0 && delta0 as f64 > cfg.gamma {
        // Threshold below which the loop hands over to greedy completion.
        let stop_delta = ((cfg.iota * delta0 as f64) / 3.0).floor().max(1.0) as usize;
        let k0 = (delta0 as f64 / cfg.gamma).ceil() as usize;
        let mut gamma_graph = g.clone();
        let mut to_original: Vec<u32> = (0..n as u32).collect();
        let mut lists = ListAssignment::uniform(n, k0);
        next_fresh = k0 as u32;

        for round in 0..hard_cap {
            let outcome = one_nibble(&gamma_graph, &lists, cfg, round)?;
            for (v, &orig) in to_original.iter().enumerate() {
                if let Some(c) = outcome.colouring.get(v as u32) {
                    colouring.set(orig, c);
                }
            }
            let mut report = outcome.report;
            let residual = outcome.residual;
            let residual_lists = outcome.residual_lists;
            to_original = outcome
                .residual_map
                .iter()
                .map(|&local| to_original[local as usize])
                .collect();

            let delta_r = residual.max_degree();
            let proceed = residual.vertex_count() > 0
                && delta_r >= stop_delta
                && delta_r as f64 > cfg.gamma
                && round + 1 < hard_cap;
            if !proceed {
                rounds.push(report);
                break;
            }

            // Trim to k' (smallest colour ids), pad with a shared block of
            // fresh colours to k'' = ceil(delta'/gamma).
            let k_dp = (delta_r as f64 / cfg.gamma).ceil() as usize;
            report.k_doubleprime = Some(k_dp as u32);
            if matches!(cfg.mode, NibbleMode::Strict) {
                // Numeric form of the padding chain: the trim size must
                // leave room below the next round's list size.
                assert!(
                    1.0 / cfg.gamma < 1.0 - report.epsilon - cfg.iota / 3.0,
                    "padding inequality violated: gamma {} epsilon {}",
                    cfg.gamma,
                    report.epsilon
                );
            }
            let trim_target = (report.k_prime as usize).min(k_dp);
            let trimmed: Vec<Vec<u32>> = residual_lists
                .lists()
                .iter()
                .map(|list| list.iter().copied().take(trim_target).collect())
                .collect();
            let max_deficit = trimmed
                .iter()
                .map(|l| k_dp - l.len().min(k_dp))
                .max()
                .unwrap_or(0);
            let block: Vec<u32> =
                (next_fresh..next_fresh + max_deficit as u32).collect();
            next_fresh += max_deficit as u32;
            let padded: Vec<Vec<u32>> = trimmed
                .into_iter()
                .map(|mut list| {
                    let need = k_dp - list.len();
                    list.extend_from_slice(&block[..need]);
                    list
                })
                .collect();
            lists = ListAssignment::from_lists(padded);
            gamma_graph = residual;
            rounds.push(report);
        }
    }

    let nibble_coloured = colouring.assigned_count();
    let greedy_coloured = n - nibble_coloured;
    next_fresh = next_fresh.max(1);
    let hint: Vec<u32> = (0..next_fresh).collect();
    let mut total = greedy_complete(g, &colouring, &hint);
    let mut validation = validate_colouring(g, &total);
    assert!(
        validation.passes,
        "driver must produce a proper colouring; conflicts: {:?}",
        validation.monochromatic_edges
    );

    // Unconditional delta + 1 guard.
    let mut full_greedy_fallback = false;
    if validation.colour_count > delta0 + 1 {
        total = greedy_complete(g, &PartialColouring::new(n), &[]);
        validation = validate_colouring(g, &total);
        assert!(validation.passes && validation.colour_count <= delta0 + 1);
        full_greedy_fallback = true;
    }

    let colour_count = validation.colour_count;
    let max_colour = total.max_colour();
    Ok(ColouringRun {
        colouring: total,
        validation,
        colour_count,
        max_colour,
        delta: delta0,
        sigma,
        sigma_hat,
        epsilon,
        budget,
        budget_colours,
        within_budget: colour_count as u64 <= budget_colours,
        rounds,
        nibble_coloured,
        greedy_coloured,
        full_greedy_fallback,
        hard_cap,
        epsilon_rule: cfg.epsilon_rule,
    })
}
