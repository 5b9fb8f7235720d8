//! Property-based invariants: format round-trips, constructor contracts,
//! sampler pointwise guarantees, and per-round list bookkeeping, all over
//! randomized inputs.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use sparsecol::graph::analyze::sigma_sparsity;
use sparsecol::graph::construct::{blow_up, colourwise_regularize, regularize};
use sparsecol::sampler::trumps;
use sparsecol::{
    independent_pairs_and_triples, one_nibble, parse_graph, sample_independent_set,
    serialize_graph, Graph, GraphFormat, ListAssignment, NibbleConfig, SamplerConfig,
};

// ==========================================================================
// Strategies
// ==========================================================================

/// A random graph on `1..=max_n` vertices with roughly the given density.
fn arb_graph(max_n: usize, density: f64) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        prop::collection::vec(prop::bool::weighted(density.clamp(0.01, 0.99)), len).prop_map(
            move |mask| {
                let edges: Vec<(u32, u32)> = pairs
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &keep)| keep)
                    .map(|(&e, _)| e)
                    .collect();
                Graph::from_edges(n, &edges).unwrap()
            },
        )
    })
}

/// Uniform-size random lists over a small palette.
fn arb_lists(n: usize, k: usize, palette: u32) -> impl Strategy<Value = ListAssignment> {
    let colours: Vec<u32> = (0..palette).collect();
    prop::collection::vec(prop::sample::subsequence(colours, k), n)
        .prop_map(ListAssignment::from_lists)
}

fn edge_set(g: &Graph) -> Vec<(u32, u32)> {
    g.edges().collect()
}

/// Integration tests have no source root for regression files; keep the
/// case count explicit and skip persistence.
fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

// ==========================================================================
// Format round-trips
// ==========================================================================

proptest! {
    #![proptest_config(cases(64))]

    /// The edge-list encoding preserves every edge; vertex count shrinks to
    /// the largest endpoint because the format carries no isolated tail.
    #[test]
    fn edge_list_roundtrip(g in arb_graph(16, 0.3)) {
        let text = serialize_graph(&g, GraphFormat::EdgeList);
        let h = parse_graph(&text, GraphFormat::EdgeList).unwrap();
        prop_assert_eq!(edge_set(&h), edge_set(&g));
        let expect_n = g.edges().map(|(_, v)| v as usize + 1).max().unwrap_or(0);
        prop_assert_eq!(h.vertex_count(), expect_n);
    }

    /// The DIMACS encoding has a vertex-count header, so it round-trips the
    /// whole graph, isolated vertices included.
    #[test]
    fn dimacs_roundtrip(g in arb_graph(16, 0.3)) {
        let text = serialize_graph(&g, GraphFormat::Dimacs);
        let h = parse_graph(&text, GraphFormat::Dimacs).unwrap();
        prop_assert_eq!(h, g);
    }
}

// ==========================================================================
// Constructor contracts
// ==========================================================================

proptest! {
    #![proptest_config(cases(48))]

    /// Mirror doubling: regular output of the requested degree, the input
    /// induced on its original ids, sparsity never reduced.
    #[test]
    fn regularize_contract(g in arb_graph(10, 0.35), extra in 0usize..3) {
        let target = g.max_degree() + extra;
        let r = regularize(&g, target).unwrap();
        prop_assert!(r.is_regular(target));
        let original: Vec<u32> = (0..g.vertex_count() as u32).collect();
        let (induced, _) = r.induced(&original);
        prop_assert_eq!(edge_set(&induced), edge_set(&g));
        prop_assert!(sigma_sparsity(&r).sigma.0 >= sigma_sparsity(&g).sigma.0);
    }

    /// Blow-up: `t` independent copies per vertex, complete bipartite
    /// between adjacent classes, sparsity never reduced.
    #[test]
    fn blow_up_contract(g in arb_graph(12, 0.3), t in 1usize..4) {
        let b = blow_up(&g, t).unwrap();
        let n = g.vertex_count();
        prop_assert_eq!(b.vertex_count(), n * t);
        for v in 0..n {
            for copy in 0..t {
                let id = (copy * n + v) as u32;
                prop_assert_eq!(b.degree(id), g.degree(v as u32) * t);
            }
        }
        prop_assert!(sigma_sparsity(&b).sigma.0 >= sigma_sparsity(&g).sigma.0);
    }

    /// Colour-regularization: every colour's class induces a regular graph
    /// of the requested degree, the input survives induced, and the first
    /// `n` lists are unchanged.
    #[test]
    fn colourwise_regularize_contract(
        (g, lists, extra) in (arb_graph(8, 0.3), 1usize..4, 0usize..2).prop_flat_map(
            |(g, k, extra)| {
                let n = g.vertex_count();
                (Just(g), arb_lists(n, k, (k + 2) as u32), Just(extra))
            },
        ),
    ) {
        let delta = g.max_degree() + extra;
        let (g1, l1) = colourwise_regularize(&g, &lists, delta).unwrap();

        let original: Vec<u32> = (0..g.vertex_count() as u32).collect();
        let (induced, _) = g1.induced(&original);
        prop_assert_eq!(edge_set(&induced), edge_set(&g));
        for v in 0..g.vertex_count() as u32 {
            prop_assert_eq!(l1.list(v), lists.list(v));
        }

        let used: std::collections::BTreeSet<u32> =
            l1.lists().iter().flatten().copied().collect();
        for &c in &used {
            let class: Vec<u32> = (0..g1.vertex_count() as u32)
                .filter(|&v| l1.list(v).contains(&c))
                .collect();
            let (sub, _) = g1.induced(&class);
            prop_assert!(
                sub.is_regular(delta),
                "colour {} class is not {}-regular", c, delta
            );
            prop_assert!(sigma_sparsity(&sub).sigma.0 >= sigma_sparsity(&g).sigma.0);
        }
    }
}

// ==========================================================================
// Analyzer inequalities
// ==========================================================================

proptest! {
    #![proptest_config(cases(48))]

    /// Independent-triple counts never exceed the sigma^{3/2} C(D,3) bound.
    #[test]
    fn triple_bound_every_vertex(g in arb_graph(18, 0.35)) {
        for v in 0..g.vertex_count() as u32 {
            let report = independent_pairs_and_triples(&g, v);
            prop_assert!(
                report.triple_bound_holds,
                "vertex {}: {} triples over bound {}",
                v, report.independent_triples, report.triple_bound
            );
        }
    }
}

// ==========================================================================
// Sampler pointwise guarantees
// ==========================================================================

proptest! {
    #![proptest_config(cases(64))]

    /// Each draw yields exactly the activated local priority maxima: an
    /// independent subset of the activated set, and nothing outside it.
    #[test]
    fn sampled_set_is_activated_local_maxima(
        g in arb_graph(14, 0.3),
        gamma_num in 1u32..5,
        seed in 0u64..1000,
    ) {
        // Activation gamma / max(1, degree) must stay within [0, 1].
        let gamma = f64::from(gamma_num) / 4.0;
        let cfg = SamplerConfig::new(gamma, seed);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let out = sample_independent_set(&g, &cfg, &mut rng).unwrap();

        let active = |v: u32| out.activated.binary_search(&v).is_ok();
        for &v in &out.independent {
            prop_assert!(active(v), "sampled vertex {} was never activated", v);
        }
        for (i, &u) in out.independent.iter().enumerate() {
            for &v in &out.independent[i + 1..] {
                prop_assert!(!g.has_edge(u, v), "edge {}-{} inside the sample", u, v);
            }
        }
        // Recompute membership from the recorded draws.
        for &v in &out.activated {
            let wins = g.neighbours(v).iter().all(|&u| {
                !active(u)
                    || trumps(
                        out.priorities[v as usize],
                        out.priorities[u as usize],
                        v,
                        u,
                    )
            });
            let sampled = out.independent.binary_search(&v).is_ok();
            prop_assert_eq!(wins, sampled, "vertex {} membership mismatch", v);
        }
    }
}

// ==========================================================================
// Round bookkeeping
// ==========================================================================

proptest! {
    #![proptest_config(cases(32))]

    /// After a round: the partial colouring is proper, colours come from the
    /// vertex's own list, and every residual list is exactly the original
    /// list minus the colours taken by coloured neighbours.
    #[test]
    fn nibble_round_bookkeeping(
        g in arb_graph(12, 0.3),
        k in 2usize..6,
        seed in 0u64..200,
    ) {
        let mut cfg = NibbleConfig::new(3.0, 0.3, seed).unwrap();
        cfg.max_retries = 4;
        let lists = ListAssignment::uniform(g.vertex_count(), k);
        let out = one_nibble(&g, &lists, &cfg, 0).unwrap();

        for (u, v) in g.edges() {
            if let (Some(cu), Some(cv)) = (out.colouring.get(u), out.colouring.get(v)) {
                prop_assert_ne!(cu, cv, "monochromatic edge {}-{}", u, v);
            }
        }
        for v in 0..g.vertex_count() as u32 {
            if let Some(c) = out.colouring.get(v) {
                prop_assert!(lists.list(v).contains(&c));
            }
        }
        for (local, &v) in out.residual_map.iter().enumerate() {
            prop_assert!(out.colouring.get(v).is_none());
            let taken: std::collections::BTreeSet<u32> = g
                .neighbours(v)
                .iter()
                .filter_map(|&u| out.colouring.get(u))
                .collect();
            let expect: Vec<u32> = lists
                .list(v)
                .iter()
                .copied()
                .filter(|c| !taken.contains(c))
                .collect();
            prop_assert_eq!(out.residual_lists.list(local as u32), &expect[..]);
        }
    }
}
