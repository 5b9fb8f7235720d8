//! sparsecol: a graph-colouring toolkit built around randomized priority
//! sampling on locally sparse graphs.
//!
//! The crate provides four layers:
//!
//! * **Graph core** — simple undirected graphs, parsers for edge-list and
//!   DIMACS formats, neighbourhood sparsity and codegree analyzers, and the
//!   constructions the algorithms lean on (sharpness example, mirror
//!   regularization, blow-ups, squared line graphs, degree cores).
//! * **Sampler** — the randomized priority sampler that activates vertices
//!   and keeps local priority maxima, with exact membership formulas and a
//!   deterministic parallel Monte Carlo harness.
//! * **Colouring** — the one-round list-colouring step with bad-event
//!   detection and retries, the iterative driver that releases palette
//!   colours round by round (degree or codegree driven), greedy completion,
//!   and the strong-edge-colouring pipeline.
//! * **Oracles** — exact brute-force references: chromatic number, the
//!   exhaustive sampler distribution in exact rational arithmetic, and the
//!   strong chromatic index.
//!
//! Determinism is a design contract: every randomized routine draws from
//! keyed substreams ([`rng::substream`]) so identical inputs give identical
//! outputs on any worker count.

pub mod colouring;
pub mod graph;
pub mod lists;
pub mod nibble;
pub mod oracle;
pub mod rational;
pub mod rng;
pub mod sampler;
pub mod strong;

pub use colouring::{greedy_complete, validate_colouring, ColouringValidation, PartialColouring};
pub use graph::analyze::{
    independent_pairs_and_triples, max_codegree, min_degree_core, quasirandom_check,
    sigma_sparsity, CodegreeReport, CoreResult, NeighbourhoodReport, QuasirandomReport,
    SlackSpec, SparsityReport,
};
pub use graph::construct::{
    blow_up, colourwise_regularize, regularize, sharpness_construction, square_line_graph,
};
pub use graph::parse::{parse_graph, serialize_graph, GraphFormat};
pub use graph::{Graph, GraphError};
pub use lists::ListAssignment;
pub use nibble::{
    iterative_colour, iterative_colour_codegree, one_nibble, BadEventCounts, ColouringRun,
    EpsilonRule, NibbleConfig, NibbleError, NibbleMode, NibbleOutcome, NibbleReport, RoundDraws,
};
pub use oracle::{
    brute_chromatic, brute_chromatic_with_cap, brute_strong_index, exact_sampler_stats,
    exact_sampler_stats_with_cap, ExactRootStats, ExactSamplerStats, OracleError,
};
pub use rational::{BigRat, ExactRatio, Rat64, RationalJson};
pub use sampler::formulas::{
    bound_calculator, epsilon_col, epsilon_vu, expected_pairs_formula, membership_bracket,
    membership_probability_closed_form, membership_probability_exact,
    membership_probability_rational, mu, vu_crossover, BoundKind, ColourBound,
};
pub use sampler::stats::{monte_carlo_stats, RootStats, RootSummary, SampleStats};
pub use sampler::{sample_independent_set, SampleOutcome, SamplerConfig, SamplerError};
pub use strong::{
    implied_core_sigma, strong_edge_colour, theorem8_sparsity_constant, validate_strong,
    StrongColouring, StrongConfig, StrongError, StrongReport, StrongValidation, StrongViolation,
    CORE_SIGMA_CAP, DEFAULT_STRONG_EPSILON,
};
