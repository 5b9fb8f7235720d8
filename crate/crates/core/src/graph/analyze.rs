//! Neighbourhood analyzers: local sparsity, codegree, quasirandomness,
//! degree cores, and independent pair/triple statistics.
//!
//! The central quantity is the sparsity parameter `sigma`: a graph with
//! maximum degree `D >= 2` is `sigma`-sparse when every neighbourhood
//! induces at most `(1 - sigma) * C(D, 2)` edges. All ratios here are exact
//! rationals; callers that need floats convert at the edge.

use serde::Serialize;

use super::{Graph, GraphError};
use crate::rational::{binomial, leq_three_halves_power, rat64_to_f64, ExactRatio, Rat64};

// ======================================================================
// Sparsity
// ======================================================================

/// Per-vertex neighbourhood edge counts and the derived sparsity value.
#[derive(Debug, Clone, Serialize)]
pub struct SparsityReport {
    /// Largest `sigma` such that the graph is `sigma`-sparse; 1 when the
    /// maximum degree is at most 1.
    pub sigma: ExactRatio,
    pub max_degree: usize,
    /// `per_vertex[v]` = number of edges induced by the neighbourhood of `v`.
    pub per_vertex: Vec<u64>,
    /// Vertex whose neighbourhood is densest (smallest id on ties); `None`
    /// only for the empty graph.
    pub worst_vertex: Option<u32>,
}

/// Number of edges induced by the neighbourhood of `v`.
pub fn neighbourhood_edge_count(g: &Graph, v: u32) -> u64 {
    let nbrs = g.neighbours(v);
    let mut twice: u64 = 0;
    for &u in nbrs {
        twice += super::sorted_intersection_len(nbrs, g.neighbours(u)) as u64;
    }
    debug_assert!(twice % 2 == 0);
    twice / 2
}

/// Measures the sparsity of `g` exactly.
pub fn sigma_sparsity(g: &Graph) -> SparsityReport {
    let delta = g.max_degree();
    let per_vertex: Vec<u64> = (0..g.vertex_count() as u32)
        .map(|v| neighbourhood_edge_count(g, v))
        .collect();
    let worst_vertex = per_vertex
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(v, _)| v as u32);
    let sigma = if delta <= 1 {
        Rat64::from_integer(1)
    } else {
        let pairs = binomial(delta as u64, 2) as i64;
        let worst = worst_vertex.map_or(0, |v| per_vertex[v as usize]) as i64;
        Rat64::from_integer(1) - Rat64::new(worst, pairs)
    };
    SparsityReport {
        sigma: ExactRatio(sigma),
        max_degree: delta,
        per_vertex,
        worst_vertex,
    }
}

/// Local sparsity at a single vertex: `1 - e(G[N(v)]) / C(D, 2)` with `D`
/// the global maximum degree (1 when `D <= 1`).
pub fn sigma_local(g: &Graph, v: u32) -> Rat64 {
    let delta = g.max_degree();
    if delta <= 1 {
        return Rat64::from_integer(1);
    }
    let pairs = binomial(delta as u64, 2) as i64;
    Rat64::from_integer(1) - Rat64::new(neighbourhood_edge_count(g, v) as i64, pairs)
}

// ======================================================================
// Codegree
// ======================================================================

/// Maximum codegree statistics.
#[derive(Debug, Clone, Serialize)]
pub struct CodegreeReport {
    /// Largest number of common neighbours over unordered vertex pairs.
    pub max_codegree: usize,
    /// A pair attaining it (smallest lexicographically); `None` when the
    /// graph has fewer than two vertices.
    pub worst_pair: Option<(u32, u32)>,
    /// Largest `sigma_hat` with `max_codegree <= (1 - sigma_hat) * D`;
    /// 1 when the maximum degree is 0.
    pub sigma_hat: ExactRatio,
}

/// Scans all unordered vertex pairs for the maximum codegree.
pub fn max_codegree(g: &Graph) -> CodegreeReport {
    let n = g.vertex_count() as u32;
    let mut best = 0usize;
    let mut worst_pair = None;
    for u in 0..n {
        for v in (u + 1)..n {
            let c = g.common_neighbour_count(u, v);
            if worst_pair.is_none() || c > best {
                best = c;
                worst_pair = Some((u, v));
            }
        }
    }
    let delta = g.max_degree();
    let sigma_hat = if delta == 0 {
        Rat64::from_integer(1)
    } else {
        Rat64::from_integer(1) - Rat64::new(best as i64, delta as i64)
    };
    CodegreeReport {
        max_codegree: best,
        worst_pair,
        sigma_hat: ExactRatio(sigma_hat),
    }
}

// ======================================================================
// Quasirandomness
// ======================================================================

/// Slack function used by quasirandomness and residual-list thresholds.
///
/// `Paper` evaluates as `sqrt(D) * ln(D)^p` with the exponent supplied by
/// the call site (5 for quasirandom deviations, 2 for list sizes);
/// `Scaled { c, p }` as `c * sqrt(D) * ln(D)^p`; `Absolute(t)` as the
/// constant `t`. `ln(D)` is clamped to 0 for `D <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SlackSpec {
    Paper,
    Scaled { c: f64, p: f64 },
    Absolute(f64),
}

impl SlackSpec {
    /// Evaluates the slack at maximum degree `delta`; `default_exponent`
    /// applies only to the `Paper` variant.
    pub fn eval(&self, delta: usize, default_exponent: f64) -> f64 {
        let d = delta as f64;
        let ln = if delta >= 2 { d.ln() } else { 0.0 };
        match *self {
            SlackSpec::Paper => d.sqrt() * ln.powf(default_exponent),
            SlackSpec::Scaled { c, p } => c * d.sqrt() * ln.powf(p),
            SlackSpec::Absolute(t) => t,
        }
    }
}

/// Outcome of a quasirandomness check over a vertex subset.
#[derive(Debug, Clone, Serialize)]
pub struct QuasirandomReport {
    pub mu: f64,
    pub threshold: f64,
    pub checked_pairs: u64,
    pub max_deviation: f64,
    /// Pair attaining the maximum deviation (`u <= v`).
    pub worst_pair: Option<(u32, u32)>,
    /// Number of pairs whose deviation exceeds the threshold.
    pub violations: u64,
    pub passes: bool,
}

/// Checks `mu`-quasirandomness of `subset` inside `g`: for every pair
/// `u <= v` of subset vertices the size of `N(u) ∩ N(v) ∩ subset` must stay
/// within the slack of `mu * |N(u) ∩ N(v)|`.
///
/// # Errors
///
/// `mu` outside `[0, 1]` or subset vertices out of range.
pub fn quasirandom_check(
    g: &Graph,
    subset: &[u32],
    mu: f64,
    slack: SlackSpec,
) -> Result<QuasirandomReport, GraphError> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(GraphError::Invalid(format!(
            "mu must lie in [0, 1], got {mu}"
        )));
    }
    let mut members: Vec<u32> = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&v) = members.last() {
        if v as usize >= g.vertex_count() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: g.vertex_count(),
            });
        }
    }
    let threshold = slack.eval(g.max_degree(), 5.0);
    let mut max_deviation = 0.0f64;
    let mut worst_pair = None;
    let mut violations = 0u64;
    let mut checked_pairs = 0u64;
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i..] {
            let nu = g.neighbours(u);
            let nv = g.neighbours(v);
            let codegree = super::sorted_intersection_len(nu, nv);
            let in_subset = intersection_with_sorted(nu, nv, &members);
            let deviation = (in_subset as f64 - mu * codegree as f64).abs();
            checked_pairs += 1;
            if worst_pair.is_none() || deviation > max_deviation {
                max_deviation = deviation;
                worst_pair = Some((u, v));
            }
            if deviation > threshold {
                violations += 1;
            }
        }
    }
    Ok(QuasirandomReport {
        mu,
        threshold,
        checked_pairs,
        max_deviation,
        worst_pair,
        violations,
        passes: violations == 0,
    })
}

/// Size of `a ∩ b ∩ c` for ascending slices.
fn intersection_with_sorted(a: &[u32], b: &[u32], c: &[u32]) -> usize {
    let mut count = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if c.binary_search(&a[i]).is_ok() {
                    count += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    count
}

// ======================================================================
// Degree cores
// ======================================================================

/// A maximum subgraph of minimum degree `d` plus the removal order.
#[derive(Debug, Clone, Serialize)]
pub struct CoreResult {
    /// Vertices of the core, ascending.
    pub core: Vec<u32>,
    /// Peeled vertices in removal order.
    pub peel_order: Vec<u32>,
}

/// Iteratively removes vertices of degree `< d` (FIFO over ascending
/// seed order, so the peel order is deterministic). The remainder is the
/// unique maximal induced subgraph with minimum degree at least `d`.
pub fn min_degree_core(g: &Graph, d: usize) -> CoreResult {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queued = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for v in 0..n {
        if degree[v] < d {
            queue.push_back(v as u32);
            queued[v] = true;
        }
    }
    let mut peel_order = Vec::new();
    while let Some(v) = queue.pop_front() {
        removed[v as usize] = true;
        peel_order.push(v);
        for &u in g.neighbours(v) {
            let u = u as usize;
            if !removed[u] {
                degree[u] -= 1;
                if degree[u] < d && !queued[u] {
                    queue.push_back(u as u32);
                    queued[u] = true;
                }
            }
        }
    }
    let core = (0..n as u32).filter(|&v| !removed[v as usize]).collect();
    CoreResult { core, peel_order }
}

// ======================================================================
// Independent pairs and triples
// ======================================================================

/// A nonadjacent pair inside a root neighbourhood.
#[derive(Debug, Clone, Serialize)]
pub struct IndependentPair {
    pub u: u32,
    pub v: u32,
    /// `|N(u) ∩ N(v)|`.
    pub common: usize,
    /// Normalized codegree `|N(u) ∩ N(v)| / D`.
    pub ell: ExactRatio,
}

/// Independent pair/triple statistics of one neighbourhood.
#[derive(Debug, Clone, Serialize)]
pub struct NeighbourhoodReport {
    pub root: u32,
    /// All nonadjacent pairs within `N(root)`, `u < v` lexicographic.
    pub independent_pairs: Vec<IndependentPair>,
    /// Number of pairwise-nonadjacent triples within `N(root)`.
    pub independent_triples: u64,
    /// Local sparsity at the root.
    pub sigma_r: ExactRatio,
    /// `sigma_r^{3/2} * C(D, 3)` as a float, for reporting.
    pub triple_bound: f64,
    /// Exact evaluation of `independent_triples <= sigma_r^{3/2} * C(D, 3)`.
    pub triple_bound_holds: bool,
}

/// Enumerates independent pairs and triples in `N(root)` and evaluates the
/// triple-count bound exactly.
pub fn independent_pairs_and_triples(g: &Graph, root: u32) -> NeighbourhoodReport {
    let delta = g.max_degree();
    let nbrs = g.neighbours(root);
    let mut independent_pairs = Vec::new();
    for (i, &u) in nbrs.iter().enumerate() {
        for &v in &nbrs[i + 1..] {
            if !g.has_edge(u, v) {
                let common = g.common_neighbour_count(u, v);
                independent_pairs.push(IndependentPair {
                    u,
                    v,
                    common,
                    ell: ExactRatio(Rat64::new(common as i64, delta.max(1) as i64)),
                });
            }
        }
    }
    let mut independent_triples = 0u64;
    for (i, &u) in nbrs.iter().enumerate() {
        for (j, &v) in nbrs.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                continue;
            }
            for &w in &nbrs[j + 1..] {
                if !g.has_edge(u, w) && !g.has_edge(v, w) {
                    independent_triples += 1;
                }
            }
        }
    }
    let sigma_r = sigma_local(g, root);
    let triples_cap = binomial(delta as u64, 3);
    let triple_bound = rat64_to_f64(&sigma_r).powf(1.5) * triples_cap as f64;
    let triple_bound_holds =
        leq_three_halves_power(independent_triples as u128, &sigma_r, triples_cap);
    NeighbourhoodReport {
        root,
        independent_pairs,
        independent_triples,
        sigma_r: ExactRatio(sigma_r),
        triple_bound,
        triple_bound_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct;

    // ---- sparsity ----

    #[test]
    fn sigma_of_triangle_free_graph_is_one() {
        let c5 = construct::cycle(5).unwrap();
        let report = sigma_sparsity(&c5);
        assert_eq!(report.sigma.value(), Rat64::from_integer(1));
        assert_eq!(report.max_degree, 2);
        assert!(report.per_vertex.iter().all(|&e| e == 0));
    }

    #[test]
    fn sigma_of_complete_graph_is_zero() {
        let k5 = construct::complete(5).unwrap();
        let report = sigma_sparsity(&k5);
        assert_eq!(report.sigma.value(), Rat64::from_integer(0));
        // Every neighbourhood of K_5 induces K_4: 6 edges.
        assert!(report.per_vertex.iter().all(|&e| e == 6));
    }

    #[test]
    fn sigma_handles_low_degree() {
        let k2 = construct::complete(2).unwrap();
        assert_eq!(sigma_sparsity(&k2).sigma.value(), Rat64::from_integer(1));
        assert_eq!(
            sigma_sparsity(&Graph::edgeless(4)).sigma.value(),
            Rat64::from_integer(1)
        );
    }

    // ---- codegree ----

    #[test]
    fn codegree_of_petersen_is_one() {
        let p = construct::petersen();
        let report = max_codegree(&p);
        assert_eq!(report.max_codegree, 1);
        assert_eq!(report.sigma_hat.value(), Rat64::new(2, 3));
    }

    #[test]
    fn codegree_of_complete_graph() {
        let k5 = construct::complete(5).unwrap();
        let report = max_codegree(&k5);
        assert_eq!(report.max_codegree, 3);
        assert_eq!(report.sigma_hat.value(), Rat64::new(1, 4));
    }

    // ---- quasirandomness ----

    #[test]
    fn quasirandom_flags_k4_subset() {
        let k4 = construct::complete(4).unwrap();
        let report = quasirandom_check(&k4, &[0, 1], 0.5, SlackSpec::Absolute(0.0)).unwrap();
        assert!(!report.passes);
        assert!(report.max_deviation >= 0.5);
    }

    #[test]
    fn quasirandom_rejects_bad_mu() {
        let k4 = construct::complete(4).unwrap();
        assert!(quasirandom_check(&k4, &[0], 1.5, SlackSpec::Paper).is_err());
    }

    #[test]
    fn slack_eval_handles_degenerate_degrees() {
        assert_eq!(SlackSpec::Paper.eval(0, 5.0), 0.0);
        assert_eq!(SlackSpec::Paper.eval(1, 5.0), 0.0);
        let d = 16usize;
        let expected = 4.0 * (16f64).ln().powi(5);
        assert!((SlackSpec::Paper.eval(d, 5.0) - expected).abs() < 1e-12);
        assert_eq!(SlackSpec::Absolute(3.5).eval(d, 5.0), 3.5);
    }

    // ---- cores ----

    #[test]
    fn core_of_clique_with_pendant() {
        // K_4 on {0..3} plus pendant 4 attached to 0.
        let g = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)],
        )
        .unwrap();
        let result = min_degree_core(&g, 3);
        assert_eq!(result.core, vec![0, 1, 2, 3]);
        assert_eq!(result.peel_order, vec![4]);
    }

    #[test]
    fn core_peels_everything_when_demand_too_high() {
        let c5 = construct::cycle(5).unwrap();
        let result = min_degree_core(&c5, 3);
        assert!(result.core.is_empty());
        assert_eq!(result.peel_order.len(), 5);
    }

    // ---- independent pairs/triples ----

    #[test]
    fn petersen_neighbourhood_stats() {
        let p = construct::petersen();
        let report = independent_pairs_and_triples(&p, 0);
        assert_eq!(report.independent_pairs.len(), 3);
        for pair in &report.independent_pairs {
            assert_eq!(pair.common, 1);
            assert_eq!(pair.ell.value(), Rat64::new(1, 3));
        }
        assert_eq!(report.independent_triples, 1);
        assert_eq!(report.sigma_r.value(), Rat64::from_integer(1));
        // Boundary case: 1 <= 1^{3/2} * C(3,3) = 1.
        assert!(report.triple_bound_holds);
    }

    #[test]
    fn clique_neighbourhood_has_no_independent_pairs() {
        let k5 = construct::complete(5).unwrap();
        let report = independent_pairs_and_triples(&k5, 0);
        assert!(report.independent_pairs.is_empty());
        assert_eq!(report.independent_triples, 0);
        assert!(report.triple_bound_holds);
    }
}
