//! Strong edge colouring: partitioning the edge set into induced matchings.
//!
//! Two edges may share a colour only if they are neither incident nor
//! joined by a third edge, which is exactly adjacency in the square of the
//! line graph. The pipeline therefore works on that square `H`:
//!
//! 1. peel `H` to its core of minimum degree `ceil((2 - epsilon) * delta^2)`;
//! 2. colour the core with the iterative list driver, capping the measured
//!    sparsity at the core constant 0.277;
//! 3. extend along the reversed peel order with a shared palette — each
//!    peeled vertex has fewer coloured neighbours than the palette is wide,
//!    so a free colour always exists;
//! 4. enforce the unconditional ceiling `2*delta^2 - 2*delta + 1` with a
//!    plain greedy recolouring if the assembled result ever exceeds it.
//!
//! On small graphs the core threshold usually exceeds every square degree,
//! so the core is empty and the pipeline is the pure reverse-peel greedy;
//! the report says which path ran rather than hiding it.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::colouring::{greedy_complete, validate_colouring, PartialColouring};
use crate::graph::analyze::min_degree_core;
use crate::graph::construct::square_line_graph;
use crate::graph::{Graph, GraphError};
use crate::nibble::{iterative_colour, NibbleConfig, NibbleError, NibbleReport};

// ==========================================================================
// Constants and errors
// ==========================================================================

/// Default savings constant for the core-degree threshold.
pub const DEFAULT_STRONG_EPSILON: f64 = 0.228;

/// Sparsity ceiling used when colouring the core: the square of a line
/// graph is guaranteed this much neighbourhood sparsity at the default
/// savings constant, so the measured value is never trusted beyond it.
pub const CORE_SIGMA_CAP: f64 = 0.277;

#[derive(Debug, Error)]
pub enum StrongError {
    #[error("strong edge colouring needs at least one edge")]
    Edgeless,
    #[error("epsilon {0} outside [0, 0.3]")]
    EpsilonOutOfRange(f64),
    #[error(transparent)]
    Nibble(#[from] NibbleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ==========================================================================
// Configuration
// ==========================================================================

/// Parameters of the strong-edge pipeline: the core threshold constant
/// plus the round configuration used on the core.
#[derive(Debug, Clone, Serialize)]
pub struct StrongConfig {
    /// Savings constant in `[0, 0.3]`; the core keeps square degree at
    /// least `ceil((2 - epsilon) * delta^2)` and the colour budget is the
    /// same quantity.
    pub epsilon: f64,
    /// Round configuration for colouring the core.
    pub nibble: NibbleConfig,
}

impl StrongConfig {
    /// Default savings constant around the given round configuration.
    pub fn new(nibble: NibbleConfig) -> Self {
        Self {
            epsilon: DEFAULT_STRONG_EPSILON,
            nibble,
        }
    }

    pub fn validate(&self) -> Result<(), StrongError> {
        if !self.epsilon.is_finite() || !(0.0..=0.3).contains(&self.epsilon) {
            return Err(StrongError::EpsilonOutOfRange(self.epsilon));
        }
        self.nibble.validate()?;
        Ok(())
    }
}

// ==========================================================================
// The colouring and its validation
// ==========================================================================

/// A strong edge colouring: every colour class is an induced matching.
/// Edges are keyed `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongColouring {
    /// Colour of each edge.
    pub edge_colours: BTreeMap<(u32, u32), u32>,
    /// Edges of each colour, ascending.
    pub classes: BTreeMap<u32, Vec<(u32, u32)>>,
}

impl StrongColouring {
    /// Builds the class index from a bare edge-to-colour map.
    pub fn from_edge_colours(edge_colours: BTreeMap<(u32, u32), u32>) -> Self {
        let mut classes: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for (&edge, &colour) in &edge_colours {
            classes.entry(colour).or_default().push(edge);
        }
        Self {
            edge_colours,
            classes,
        }
    }

    /// Colour of the edge `{u, v}`, in either endpoint order.
    pub fn colour_of(&self, u: u32, v: u32) -> Option<u32> {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.edge_colours.get(&key).copied()
    }

    pub fn colour_count(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_colours.len()
    }
}

// JSON object keys must be strings, so edges serialize as "u-v".
impl Serialize for StrongColouring {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct EdgeMap<'a>(&'a BTreeMap<(u32, u32), u32>);
        impl Serialize for EdgeMap<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (&(u, v), colour) in self.0 {
                    map.serialize_entry(&format!("{u}-{v}"), colour)?;
                }
                map.end()
            }
        }
        struct ClassMap<'a>(&'a BTreeMap<u32, Vec<(u32, u32)>>);
        impl Serialize for ClassMap<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (colour, edges) in self.0 {
                    let list: Vec<String> =
                        edges.iter().map(|&(u, v)| format!("{u}-{v}")).collect();
                    map.serialize_entry(&colour.to_string(), &list)?;
                }
                map.end()
            }
        }
        let mut st = serializer.serialize_struct("StrongColouring", 2)?;
        st.serialize_field("edge_colours", &EdgeMap(&self.edge_colours))?;
        st.serialize_field("classes", &ClassMap(&self.classes))?;
        st.end()
    }
}

/// One offending pair inside a colour class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StrongViolation {
    pub colour: u32,
    pub first: (u32, u32),
    pub second: (u32, u32),
    /// True when the two edges share an endpoint; false when a third edge
    /// joins their endpoints.
    pub incident: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StrongValidation {
    pub passes: bool,
    pub edge_count: usize,
    pub colour_count: usize,
    /// Edges of the graph the colouring does not assign.
    pub uncovered_edges: Vec<(u32, u32)>,
    /// Assigned keys that are not edges of the graph.
    pub unknown_edges: Vec<(u32, u32)>,
    pub violations: Vec<StrongViolation>,
}

/// Checks that every edge is covered and every colour class is an induced
/// matching: no two edges of a class share an endpoint or are joined by a
/// third edge. All offences are reported, none asserted.
pub fn validate_strong(g: &Graph, sc: &StrongColouring) -> StrongValidation {
    let mut uncovered = Vec::new();
    for (u, v) in g.edges() {
        if !sc.edge_colours.contains_key(&(u, v)) {
            uncovered.push((u, v));
        }
    }
    let mut unknown = Vec::new();
    for &(u, v) in sc.edge_colours.keys() {
        let in_range = (u as usize) < g.vertex_count() && (v as usize) < g.vertex_count();
        if !(in_range && u < v && g.has_edge(u, v)) {
            unknown.push((u, v));
        }
    }

    let mut violations = Vec::new();
    for (&colour, edges) in &sc.classes {
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                let incident = a == c || a == d || b == c || b == d;
                let joined = !incident
                    && (g.has_edge(a, c)
                        || g.has_edge(a, d)
                        || g.has_edge(b, c)
                        || g.has_edge(b, d));
                if incident || joined {
                    violations.push(StrongViolation {
                        colour,
                        first: edges[i],
                        second: edges[j],
                        incident,
                    });
                }
            }
        }
    }

    StrongValidation {
        passes: uncovered.is_empty() && unknown.is_empty() && violations.is_empty(),
        edge_count: g.edge_count(),
        colour_count: sc.colour_count(),
        uncovered_edges: uncovered,
        unknown_edges: unknown,
        violations,
    }
}

// ==========================================================================
// The pipeline
// ==========================================================================

/// Execution record of one strong-edge run.
#[derive(Debug, Clone, Serialize)]
pub struct StrongReport {
    pub edge_count: usize,
    /// Max degree of the input graph.
    pub delta: usize,
    /// Measured max degree of the squared line graph.
    pub square_delta: usize,
    /// Worst-case square degree `2 * delta^2` the analysis works against.
    pub square_delta_bound: u64,
    /// Core threshold `ceil((2 - epsilon) * delta^2)`.
    pub core_degree: usize,
    /// Square-graph vertices surviving the peel / removed by it.
    pub core_size: usize,
    pub peeled: usize,
    /// Max degree inside the core, when it is non-empty.
    pub core_delta: Option<usize>,
    /// Sparsity ceiling applied to the core colouring.
    pub sigma_cap: f64,
    /// Colour budget `(2 - epsilon) * delta^2` and its rounded form.
    pub budget: f64,
    pub budget_colours: u64,
    pub colour_count: usize,
    /// Unconditional ceiling `2*delta^2 - 2*delta + 1`.
    pub trivial_bound: u64,
    pub within_budget: bool,
    /// True when the assembled colouring exceeded the trivial bound and a
    /// plain greedy recolouring replaced it.
    pub trivial_fallback: bool,
    /// Round reports from colouring the core.
    pub core_rounds: Vec<NibbleReport>,
    pub core_greedy_fallback: bool,
}

/// Strong-edge-colours `g`. Always returns a covering colouring whose
/// classes are induced matchings, using at most `2*delta^2 - 2*delta + 1`
/// colours.
pub fn strong_edge_colour(
    g: &Graph,
    cfg: &StrongConfig,
) -> Result<(StrongColouring, StrongReport), StrongError> {
    cfg.validate()?;
    if g.edge_count() == 0 {
        return Err(StrongError::Edgeless);
    }
    let delta = g.max_degree();
    let (h, edge_map) = square_line_graph(g)?;
    let square_delta = h.max_degree();
    let core_degree = ((2.0 - cfg.epsilon) * (delta as f64).powi(2)).ceil() as usize;
    let core_result = min_degree_core(&h, core_degree);
    let core = core_result.core;
    let peel_order = core_result.peel_order;

    // Colour the core with the iterative driver under the capped sparsity.
    let mut hcol = PartialColouring::new(h.vertex_count());
    let mut core_rounds = Vec::new();
    let mut core_greedy_fallback = false;
    let mut core_delta = None;
    let mut palette_top = core_degree as u32;
    if !core.is_empty() {
        let (hf, to_h) = h.induced(&core);
        core_delta = Some(hf.max_degree());
        let mut ncfg = cfg.nibble.clone();
        ncfg.sigma_cap = Some(match ncfg.sigma_cap {
            Some(cap) => cap.min(CORE_SIGMA_CAP),
            None => CORE_SIGMA_CAP,
        });
        let run = iterative_colour(&hf, &ncfg)?;
        for (local, &orig) in to_h.iter().enumerate() {
            if let Some(c) = run.colouring.get(local as u32) {
                hcol.set(orig, c);
            }
        }
        core_rounds = run.rounds;
        core_greedy_fallback = run.full_greedy_fallback;
        if let Some(max) = run.max_colour {
            palette_top = palette_top.max(max + 1);
        }
    }

    // Reverse-peel extension over the shared palette. A vertex peeled at
    // threshold `d` had fewer than `d` neighbours still alive, and those
    // alive neighbours are exactly the ones coloured before it here.
    let palette: Vec<u32> = (0..palette_top).collect();
    for &v in peel_order.iter().rev() {
        let mut blocked: Vec<u32> = h
            .neighbours(v)
            .iter()
            .filter_map(|&u| hcol.get(u))
            .collect();
        assert!(
            blocked.len() < palette.len(),
            "peel extension found {} coloured neighbours against palette {}",
            blocked.len(),
            palette.len()
        );
        blocked.sort_unstable();
        blocked.dedup();
        let choice = palette
            .iter()
            .copied()
            .find(|c| blocked.binary_search(c).is_err())
            .expect("palette wider than the blocked set");
        hcol.set(v, choice);
    }

    let mut validation = validate_colouring(&h, &hcol);
    assert!(
        validation.passes && validation.uncoloured == 0,
        "square-graph colouring must be proper and total"
    );

    // Unconditional ceiling.
    let trivial_bound = (2 * delta as u64 * delta as u64).saturating_sub(2 * delta as u64) + 1;
    let mut trivial_fallback = false;
    if validation.colour_count as u64 > trivial_bound {
        hcol = greedy_complete(&h, &PartialColouring::new(h.vertex_count()), &[]);
        validation = validate_colouring(&h, &hcol);
        assert!(validation.passes && validation.colour_count as u64 <= trivial_bound);
        trivial_fallback = true;
    }

    let mut edge_colours = BTreeMap::new();
    for (i, &edge) in edge_map.iter().enumerate() {
        let colour = hcol.get(i as u32).expect("total colouring");
        edge_colours.insert(edge, colour);
    }
    let colouring = StrongColouring::from_edge_colours(edge_colours);

    let budget = (2.0 - cfg.epsilon) * (delta as f64).powi(2);
    let budget_colours = budget.ceil() as u64;
    let colour_count = validation.colour_count;
    let report = StrongReport {
        edge_count: g.edge_count(),
        delta,
        square_delta,
        square_delta_bound: 2 * delta as u64 * delta as u64,
        core_degree,
        core_size: core.len(),
        peeled: peel_order.len(),
        core_delta,
        sigma_cap: CORE_SIGMA_CAP,
        budget,
        budget_colours,
        colour_count,
        trivial_bound,
        within_budget: colour_count as u64 <= budget_colours,
        trivial_fallback,
        core_rounds,
        core_greedy_fallback,
    };
    Ok((colouring, report))
}

// ==========================================================================
// The core-density constant
// ==========================================================================

/// Edge-count coefficient of the fourth-degree term in the core density
/// estimate: `31/6 - 128/(3(10 - 3e)) + 4e - e^2` for `e` in `[0, 0.3]`.
pub fn theorem8_sparsity_constant(epsilon: f64) -> Result<f64, StrongError> {
    if !epsilon.is_finite() || !(0.0..=0.3).contains(&epsilon) {
        return Err(StrongError::EpsilonOutOfRange(epsilon));
    }
    Ok(31.0 / 6.0 - 128.0 / (3.0 * (10.0 - 3.0 * epsilon)) + 4.0 * epsilon - epsilon * epsilon)
}

/// Sparsity implied by the coefficient through `c <= (1 - sigma) * 2`,
/// the leading order of the pair count at degree `2 * delta^2`.
pub fn implied_core_sigma(epsilon: f64) -> Result<f64, StrongError> {
    Ok(1.0 - theorem8_sparsity_constant(epsilon)? / 2.0)
}

// ==========================================================================
// Tests
// ==========================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct, generate};
    use crate::oracle::brute_strong_index;

    fn config(gamma: f64, iota: f64, seed: u64) -> StrongConfig {
        StrongConfig::new(NibbleConfig::new(gamma, iota, seed).unwrap())
    }

    // ---- the density constant ----

    #[test]
    fn constant_matches_hand_values() {
        let at_zero = theorem8_sparsity_constant(0.0).unwrap();
        assert!((at_zero - 0.9).abs() < 1e-12, "got {at_zero}");
        let at_default = theorem8_sparsity_constant(DEFAULT_STRONG_EPSILON).unwrap();
        assert!(
            (1.446..=1.448).contains(&at_default),
            "got {at_default}"
        );
        let sigma = implied_core_sigma(DEFAULT_STRONG_EPSILON).unwrap();
        assert!((sigma - 0.277).abs() < 1e-3, "got {sigma}");
        assert!(theorem8_sparsity_constant(0.3).is_ok());
        assert!(theorem8_sparsity_constant(0.301).is_err());
        assert!(theorem8_sparsity_constant(-0.01).is_err());
        assert!(theorem8_sparsity_constant(f64::NAN).is_err());
    }

    // ---- validation ----

    #[test]
    fn rainbow_always_validates() {
        let g = construct::petersen();
        let edge_colours: BTreeMap<(u32, u32), u32> = g
            .edges()
            .enumerate()
            .map(|(i, e)| (e, i as u32))
            .collect();
        let sc = StrongColouring::from_edge_colours(edge_colours);
        let report = validate_strong(&g, &sc);
        assert!(report.passes);
        assert_eq!(report.colour_count, 15);
    }

    #[test]
    fn incident_pair_is_flagged() {
        let g = construct::path(3).unwrap();
        let mut edge_colours = BTreeMap::new();
        edge_colours.insert((0, 1), 0);
        edge_colours.insert((1, 2), 0);
        let sc = StrongColouring::from_edge_colours(edge_colours);
        let report = validate_strong(&g, &sc);
        assert!(!report.passes);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].incident);
    }

    #[test]
    fn joined_pair_is_flagged() {
        // The end edges of a path on four vertices are disjoint but the
        // middle edge joins them.
        let g = construct::path(4).unwrap();
        let mut edge_colours = BTreeMap::new();
        edge_colours.insert((0, 1), 0);
        edge_colours.insert((2, 3), 0);
        edge_colours.insert((1, 2), 1);
        let sc = StrongColouring::from_edge_colours(edge_colours);
        let report = validate_strong(&g, &sc);
        assert!(!report.passes);
        assert_eq!(report.violations.len(), 1);
        assert!(!report.violations[0].incident);
    }

    #[test]
    fn coverage_gaps_are_reported() {
        let g = construct::path(3).unwrap();
        let mut edge_colours = BTreeMap::new();
        edge_colours.insert((0, 1), 0);
        edge_colours.insert((0, 2), 3); // not an edge of the path
        let sc = StrongColouring::from_edge_colours(edge_colours);
        let report = validate_strong(&g, &sc);
        assert!(!report.passes);
        assert_eq!(report.uncovered_edges, vec![(1, 2)]);
        assert_eq!(report.unknown_edges, vec![(0, 2)]);
    }

    // ---- pipeline on named graphs ----

    #[test]
    fn short_path_needs_two() {
        let g = construct::path(3).unwrap();
        let (sc, report) = strong_edge_colour(&g, &config(3.0, 0.2, 1)).unwrap();
        assert!(validate_strong(&g, &sc).passes);
        assert_eq!(report.colour_count, 2);
    }

    #[test]
    fn five_cycle_needs_exactly_five() {
        let g = construct::cycle(5).unwrap();
        let (sc, report) = strong_edge_colour(&g, &config(3.0, 0.2, 1)).unwrap();
        assert!(validate_strong(&g, &sc).passes);
        assert_eq!(report.colour_count, 5);
        assert_eq!(brute_strong_index(&g).unwrap(), 5u32);
    }

    #[test]
    fn star_needs_one_colour_per_edge() {
        let g = construct::star(6).unwrap();
        let (sc, report) = strong_edge_colour(&g, &config(3.0, 0.2, 1)).unwrap();
        assert!(validate_strong(&g, &sc).passes);
        assert_eq!(report.colour_count, 6);
        assert_eq!(report.trivial_bound, 2 * 36 - 12 + 1);
    }

    #[test]
    fn edgeless_graph_is_rejected() {
        let g = Graph::edgeless(4);
        assert!(matches!(
            strong_edge_colour(&g, &config(3.0, 0.2, 1)),
            Err(StrongError::Edgeless)
        ));
    }

    #[test]
    fn bad_epsilon_is_rejected() {
        let mut cfg = config(3.0, 0.2, 1);
        cfg.epsilon = 0.35;
        let g = construct::cycle(5).unwrap();
        assert!(matches!(
            strong_edge_colour(&g, &cfg),
            Err(StrongError::EpsilonOutOfRange(_))
        ));
    }

    // ---- pipeline properties ----

    #[test]
    fn random_graphs_validate_and_respect_the_trivial_bound() {
        for seed in 0..20u64 {
            let g = generate::gnp_capped(18, 0.3, 8, seed).unwrap();
            if g.edge_count() == 0 {
                continue;
            }
            let (sc, report) = strong_edge_colour(&g, &config(3.0, 0.2, seed)).unwrap();
            let validation = validate_strong(&g, &sc);
            assert!(validation.passes, "seed {seed}");
            assert!(
                report.colour_count as u64 <= report.trivial_bound,
                "seed {seed}: {} > {}",
                report.colour_count,
                report.trivial_bound
            );
            assert_eq!(sc.edge_count(), g.edge_count());
        }
    }

    #[test]
    fn same_seed_reproduces_the_classes() {
        let g = generate::gnp(20, 0.3, 5).unwrap();
        let (a, _) = strong_edge_colour(&g, &config(3.0, 0.2, 9)).unwrap();
        let (b, _) = strong_edge_colour(&g, &config(3.0, 0.2, 9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn matches_brute_force_on_tiny_squares() {
        // Pure-greedy path agrees with the exact optimum on graphs whose
        // square line graph is complete (every class a single edge).
        for g in [
            construct::cycle(5).unwrap(),
            construct::star(4).unwrap(),
            construct::complete(4).unwrap(),
        ] {
            let (sc, report) = strong_edge_colour(&g, &config(3.0, 0.2, 0)).unwrap();
            assert!(validate_strong(&g, &sc).passes);
            assert_eq!(
                report.colour_count,
                brute_strong_index(&g).unwrap() as usize,
                "graph with {} edges",
                g.edge_count()
            );
        }
    }

    // ---- the core path ----

    /// 7-regular, girth 5, 50 vertices: ten 5-vertex rings, the first five
    /// wired as pentagons, the last five as pentagrams, ring `h` vertex `j`
    /// joined to ring `5 + i` vertex `h*i + j (mod 5)`.
    fn girth_five_seven_regular() -> Graph {
        let mut edges = Vec::new();
        let id = |ring: u32, j: u32| ring * 5 + j;
        for ring in 0..5 {
            for j in 0..5 {
                edges.push((id(ring, j), id(ring, (j + 1) % 5)));
            }
        }
        for ring in 5..10 {
            for j in 0..5 {
                edges.push((id(ring, j), id(ring, (j + 2) % 5)));
            }
        }
        for h in 0..5u32 {
            for i in 0..5u32 {
                for j in 0..5u32 {
                    edges.push((id(h, j), id(5 + i, (h * i + j) % 5)));
                }
            }
        }
        Graph::from_edges(50, &edges).unwrap()
    }

    #[test]
    fn dense_square_engages_the_core() {
        // Girth 5 and 7-regular make every square degree exactly
        // 2*7*6 = 84; the threshold at epsilon = 0.3 is ceil(1.7*49) = 84,
        // so the whole square survives the peel.
        let g = girth_five_seven_regular();
        assert!(g.is_regular(7));
        assert_eq!(g.max_degree(), 7);
        let mut cfg = config(6.0, 0.3, 3);
        cfg.epsilon = 0.3;
        cfg.nibble.max_retries = 4;
        let (sc, report) = strong_edge_colour(&g, &cfg).unwrap();
        assert!(validate_strong(&g, &sc).passes);
        assert_eq!(report.core_size, 175);
        assert_eq!(report.peeled, 0);
        assert_eq!(report.square_delta, 84);
        assert!(!report.core_rounds.is_empty());
        assert!(report.colour_count as u64 <= report.trivial_bound);
    }

    #[test]
    fn default_epsilon_peels_the_same_square_empty() {
        // At epsilon = 0.228 the threshold is ceil(1.772*49) = 87 > 84,
        // so the peel removes everything and pure greedy runs.
        let g = girth_five_seven_regular();
        let mut cfg = config(6.0, 0.3, 3);
        cfg.nibble.max_retries = 4;
        let (sc, report) = strong_edge_colour(&g, &cfg).unwrap();
        assert!(validate_strong(&g, &sc).passes);
        assert_eq!(report.core_size, 0);
        assert_eq!(report.peeled, 175);
        assert!(report.core_rounds.is_empty());
        assert!(report.colour_count as u64 <= report.trivial_bound);
    }
}
