//! Graph constructions: named small graphs, the sharpness example, mirror
//! regularization, blow-ups, colour-wise regularization, and the squared
//! line graph.
//!
//! All size-increasing constructions are capped at [`VERTEX_CAP`] vertices
//! so a careless parameter cannot exhaust memory.

use num::traits::Signed;

use super::{Graph, GraphError};
use crate::lists::ListAssignment;
use crate::rational::Rat64;

/// Hard ceiling on constructed vertex counts.
pub const VERTEX_CAP: u64 = 1 << 20;

// ======================================================================
// Named graphs
// ======================================================================

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    check_cap(n as u128)?;
    let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::Invalid(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    check_cap(n as u128)?;
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|v| (v, (v + 1) % n as u32)).collect();
    Graph::from_edges(n, &edges)
}

/// Path `P_n` on `n` vertices.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    check_cap(n as u128)?;
    let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

/// Star with `leaves` leaves attached to vertex 0.
pub fn star(leaves: usize) -> Result<Graph, GraphError> {
    check_cap(leaves as u128 + 1)?;
    let edges: Vec<(u32, u32)> = (1..=leaves as u32).map(|v| (0, v)).collect();
    Graph::from_edges(leaves + 1, &edges)
}

/// The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5)); // outer cycle
        edges.push((i, i + 5)); // spoke
        edges.push((i + 5, (i + 2) % 5 + 5)); // pentagram
    }
    Graph::from_edges(10, &edges).expect("Petersen edge list is valid")
}

/// The Chvátal graph: 4-regular, triangle-free, 12 vertices, 24 edges.
pub fn chvatal() -> Graph {
    let edges = [
        (0, 1),
        (0, 4),
        (0, 6),
        (0, 9),
        (1, 2),
        (1, 5),
        (1, 7),
        (2, 3),
        (2, 6),
        (2, 8),
        (3, 4),
        (3, 7),
        (3, 9),
        (4, 5),
        (4, 8),
        (5, 10),
        (5, 11),
        (6, 10),
        (6, 11),
        (7, 8),
        (7, 11),
        (8, 10),
        (9, 10),
        (9, 11),
    ];
    Graph::from_edges(12, &edges).expect("Chvátal edge list is valid")
}

// ======================================================================
// Sharpness construction
// ======================================================================

/// Builds the extremal example for the sparse colouring bound: a clique of
/// size `q = max(1, floor(sqrt(1 - sigma) * delta))` whose vertices each
/// carry `delta + 1 - q` pendant leaves, making every clique vertex have
/// degree exactly `delta`.
///
/// The floor is computed exactly from the rational `sigma` (no floating
/// point), so boundary values of `sqrt(1 - sigma) * delta` land on the
/// mathematically correct side.
///
/// # Errors
///
/// `delta` must be at least 1 and `sigma` must lie in `(0, 1]`.
pub fn sharpness_construction(delta: usize, sigma: Rat64) -> Result<Graph, GraphError> {
    if delta == 0 {
        return Err(GraphError::Invalid("delta must be at least 1".into()));
    }
    if sigma <= Rat64::from_integer(0) || sigma > Rat64::from_integer(1) {
        return Err(GraphError::Invalid(format!(
            "sigma must lie in (0, 1], got {sigma}"
        )));
    }
    let q = clique_size(delta, sigma).max(1);
    let pendants_per_vertex = delta + 1 - q;
    let n = q + q * pendants_per_vertex;
    check_cap(n as u128)?;
    let mut edges = Vec::new();
    for u in 0..q as u32 {
        for v in (u + 1)..q as u32 {
            edges.push((u, v));
        }
    }
    let mut next = q as u32;
    for u in 0..q as u32 {
        for _ in 0..pendants_per_vertex {
            edges.push((u, next));
            next += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Exact `floor(sqrt(1 - sigma) * delta)`: the largest `q` with
/// `q^2 * den <= (den - num) * delta^2`.
pub fn clique_size(delta: usize, sigma: Rat64) -> usize {
    debug_assert!(!sigma.is_negative() && sigma <= Rat64::from_integer(1));
    let num = *sigma.numer() as i128;
    let den = *sigma.denom() as i128;
    let target = (den - num) * (delta as i128) * (delta as i128);
    let (mut lo, mut hi) = (0i128, delta as i128);
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if mid * mid * den <= target {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo as usize
}

// ======================================================================
// Regularization and blow-ups
// ======================================================================

/// Raises every degree to exactly `target_delta` by mirror doubling: take
/// a disjoint copy of the current graph and join each deficient vertex to
/// its own copy. Each doubling adds 1 to every deficient degree and no
/// doubling creates a triangle, so neighbourhood edge counts are preserved
/// and the original graph stays induced on the first vertices.
///
/// # Errors
///
/// `target_delta` below the current maximum degree, or more than
/// [`VERTEX_CAP`] vertices required.
pub fn regularize(g: &Graph, target_delta: usize) -> Result<Graph, GraphError> {
    if target_delta < g.max_degree() {
        return Err(GraphError::Invalid(format!(
            "target degree {target_delta} below maximum degree {}",
            g.max_degree()
        )));
    }
    let mut h = g.clone();
    while !h.is_regular(target_delta) {
        let n = h.vertex_count();
        check_cap(2 * n as u128)?;
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(2 * h.edge_count() + n);
        for (u, v) in h.edges() {
            edges.push((u, v));
            edges.push((u + n as u32, v + n as u32));
        }
        for v in 0..n as u32 {
            if h.degree(v) < target_delta {
                edges.push((v, v + n as u32));
            }
        }
        h = Graph::from_edges(2 * n, &edges)?;
    }
    Ok(h)
}

/// `t`-fold blow-up: each vertex becomes `t` independent copies and copies
/// of adjacent vertices are completely joined. Copy `j` of vertex `v` gets
/// id `v + j * n`, so copy 0 is the original graph.
pub fn blow_up(g: &Graph, t: usize) -> Result<Graph, GraphError> {
    if t == 0 {
        return Err(GraphError::Invalid("blow-up factor must be positive".into()));
    }
    let n = g.vertex_count();
    check_cap(n as u128 * t as u128)?;
    let mut edges = Vec::with_capacity(g.edge_count() * t * t);
    for (u, v) in g.edges() {
        for i in 0..t as u32 {
            for j in 0..t as u32 {
                edges.push((u + i * n as u32, v + j * n as u32));
            }
        }
    }
    Graph::from_edges(n * t, &edges)
}

/// Colour-wise regularization: produces a supergraph `G1` of `g` together
/// with extended lists such that for every colour `c` the subgraph induced
/// by `{v : c in L1(v)}` is exactly `delta`-regular.
///
/// Steps: mirror-regularize to degree `delta` (copies inherit the list of
/// their original), round the palette up to `N`, the smallest multiple of
/// the list size `k` covering every colour in use, then blow up by `N/k`,
/// handing copy 0 its original list and the remaining copies the unused
/// colours in ascending order, `k` at a time — so the lists of the copies
/// of a vertex partition `{0, .., N-1}`.
///
/// # Errors
///
/// Lists must be non-empty and share one size; `delta` must be at least
/// the maximum degree; the result must stay under [`VERTEX_CAP`].
pub fn colourwise_regularize(
    g: &Graph,
    lists: &ListAssignment,
    delta: usize,
) -> Result<(Graph, ListAssignment), GraphError> {
    let k = lists
        .check_uniform(g.vertex_count())
        .map_err(|e| GraphError::Invalid(e.to_string()))?;
    let n = g.vertex_count();
    let h = regularize(g, delta)?;
    let m = h.vertex_count();
    // Copies produced by doubling sit at v + j*n, so original index = v mod n.
    let list_of = |v: usize| lists.list((v % n) as u32);
    let max_colour = lists
        .lists()
        .iter()
        .filter_map(|l| l.last().copied())
        .max()
        .unwrap_or(0) as usize;
    let palette_n = k * (max_colour / k + 1);
    let t = palette_n / k;
    let g1 = blow_up(&h, t)?;
    let mut new_lists: Vec<Vec<u32>> = vec![Vec::new(); m * t];
    for v in 0..m {
        let own: Vec<u32> = list_of(v).to_vec();
        new_lists[v] = own.clone();
        // Unused colours ascending, chunked into lists of size k for the
        // remaining copies.
        let mut rest: Vec<u32> = (0..palette_n as u32)
            .filter(|c| own.binary_search(c).is_err())
            .collect();
        debug_assert_eq!(rest.len(), (t - 1) * k);
        for j in 1..t {
            let chunk: Vec<u32> = rest.drain(..k).collect();
            new_lists[v + j * m] = chunk;
        }
    }
    Ok((g1, ListAssignment::from_lists(new_lists)))
}

// ======================================================================
// Squared line graph
// ======================================================================

/// Builds the square of the line graph: one vertex per edge of `g`, two
/// vertices adjacent when the corresponding edges share an endpoint or are
/// joined by an edge of `g`. Returns the graph together with the edge
/// table mapping each new vertex id to its original edge `(u, v)`, `u < v`,
/// in lexicographic order.
///
/// A strong edge colouring of `g` is exactly a proper colouring of this
/// graph.
///
/// # Errors
///
/// The graph must have at least one edge.
pub fn square_line_graph(g: &Graph) -> Result<(Graph, Vec<(u32, u32)>), GraphError> {
    let edge_table: Vec<(u32, u32)> = g.edges().collect();
    if edge_table.is_empty() {
        return Err(GraphError::Invalid(
            "squared line graph needs at least one edge".into(),
        ));
    }
    let m = edge_table.len();
    let mut edges_at: Vec<Vec<u32>> = vec![Vec::new(); g.vertex_count()];
    for (id, &(u, v)) in edge_table.iter().enumerate() {
        edges_at[u as usize].push(id as u32);
        edges_at[v as usize].push(id as u32);
    }
    let mut adjacency: Vec<(u32, u32)> = Vec::new();
    let mut stamp = vec![u32::MAX; m];
    for (id, &(u, v)) in edge_table.iter().enumerate() {
        let id = id as u32;
        // Edges at u, v (incident) and at neighbours of u, v (at distance 1
        // in the line graph) are exactly the vertices adjacent to `id`.
        let mut witnesses: Vec<u32> = vec![u, v];
        witnesses.extend_from_slice(g.neighbours(u));
        witnesses.extend_from_slice(g.neighbours(v));
        for w in witnesses {
            for &other in &edges_at[w as usize] {
                if other > id && stamp[other as usize] != id {
                    stamp[other as usize] = id;
                    adjacency.push((id, other));
                }
            }
        }
    }
    let h = Graph::from_edges(m, &adjacency)?;
    Ok((h, edge_table))
}

fn check_cap(requested: u128) -> Result<(), GraphError> {
    if requested > VERTEX_CAP as u128 {
        return Err(GraphError::TooLarge {
            requested,
            cap: VERTEX_CAP,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::analyze::sigma_sparsity;

    // ---- named graphs ----

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert!(p.is_regular(3));
        // Girth 5: no triangles, no 4-cycles worth spot-checking here; the
        // codegree test elsewhere pins common neighbours to 1.
        assert_eq!(sigma_sparsity(&p).sigma.value(), Rat64::from_integer(1));
    }

    #[test]
    fn chvatal_shape() {
        let g = chvatal();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 24);
        assert!(g.is_regular(4));
        // Triangle-free.
        for (u, v) in g.edges() {
            assert_eq!(g.common_neighbour_count(u, v), 0, "triangle at ({u},{v})");
        }
    }

    // ---- sharpness construction ----

    #[test]
    fn sharpness_matches_worked_example() {
        // delta = 10, sigma = 0.19: q = floor(sqrt(0.81) * 10) = 9, so two
        // pendants per clique vertex and sigma(G) = 1 - 28/45.
        let g = sharpness_construction(10, Rat64::new(19, 100)).unwrap();
        assert_eq!(g.vertex_count(), 9 + 9 * 2);
        for v in 0..9 {
            assert_eq!(g.degree(v), 10);
        }
        for v in 9..27 {
            assert_eq!(g.degree(v as u32), 1);
        }
        let report = sigma_sparsity(&g);
        assert_eq!(
            report.sigma.value(),
            Rat64::from_integer(1) - Rat64::new(28, 45)
        );
    }

    #[test]
    fn sharpness_boundary_cases() {
        // delta = 1, sigma = 1/2: q = max(1, floor(sqrt(1/2))) = 1, a single
        // clique vertex with one pendant: K_2.
        let g = sharpness_construction(1, Rat64::new(1, 2)).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        // delta = 4, sigma = 1: the construction degenerates to a star.
        let g = sharpness_construction(4, Rat64::from_integer(1)).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.degree(0), 4);
    }

    #[test]
    fn clique_size_is_exact_at_boundaries() {
        // sigma = 0.19, delta = 10: sqrt(0.81)*10 = 9 exactly.
        assert_eq!(clique_size(10, Rat64::new(19, 100)), 9);
        // sigma = 3/4, delta = 2: sqrt(1/4)*2 = 1 exactly.
        assert_eq!(clique_size(2, Rat64::new(3, 4)), 1);
        // sigma = 1: floor(0) = 0 (the caller clamps to 1).
        assert_eq!(clique_size(7, Rat64::from_integer(1)), 0);
    }

    #[test]
    fn sharpness_rejects_bad_parameters() {
        assert!(sharpness_construction(0, Rat64::new(1, 2)).is_err());
        assert!(sharpness_construction(5, Rat64::from_integer(0)).is_err());
        assert!(sharpness_construction(5, Rat64::new(3, 2)).is_err());
    }

    // ---- regularize / blow-up ----

    #[test]
    fn regularize_path_to_cycle() {
        // P_3 regularized to degree 2 doubles once into C_6.
        let p3 = path(3).unwrap();
        let h = regularize(&p3, 2).unwrap();
        assert_eq!(h.vertex_count(), 6);
        assert!(h.is_regular(2));
        assert!(h.is_connected());
        // Original graph stays induced on the first vertices.
        let (induced, _) = h.induced(&[0, 1, 2]);
        assert_eq!(induced, p3);
    }

    #[test]
    fn regularize_keeps_regular_graphs_unchanged() {
        let c5 = cycle(5).unwrap();
        assert_eq!(regularize(&c5, 2).unwrap(), c5);
    }

    #[test]
    fn regularize_never_decreases_sparsity() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let before = sigma_sparsity(&g).sigma.value();
        let h = regularize(&g, 4).unwrap();
        assert!(h.is_regular(4));
        let after = sigma_sparsity(&h).sigma.value();
        assert!(after >= before, "sigma dropped from {before} to {after}");
    }

    #[test]
    fn regularize_rejects_low_target() {
        let k4 = complete(4).unwrap();
        assert!(regularize(&k4, 2).is_err());
    }

    #[test]
    fn blow_up_of_c5_is_triangle_free_regular() {
        let c5 = cycle(5).unwrap();
        let b = blow_up(&c5, 10).unwrap();
        assert_eq!(b.vertex_count(), 50);
        assert!(b.is_regular(20));
        assert_eq!(sigma_sparsity(&b).sigma.value(), Rat64::from_integer(1));
        // Copy 0 is the original.
        let (induced, _) = b.induced(&[0, 1, 2, 3, 4]);
        assert_eq!(induced, c5);
    }

    // ---- colourwise regularization ----

    #[test]
    fn colourwise_regularize_is_identity_on_trivial_input() {
        let g = Graph::edgeless(1);
        let lists = ListAssignment::from_lists(vec![vec![0]]);
        let (g1, l1) = colourwise_regularize(&g, &lists, 0).unwrap();
        assert_eq!(g1.vertex_count(), 1);
        assert_eq!(l1.list(0), &[0]);
    }

    #[test]
    fn colourwise_regularize_per_colour_subgraphs_are_regular() {
        // P_3 with staggered lists of size 2 over colours {0,1,2,3}.
        let g = path(3).unwrap();
        let lists =
            ListAssignment::from_lists(vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        let delta = 2;
        let (g1, l1) = colourwise_regularize(&g, &lists, delta).unwrap();
        let palette: u32 = 4;
        for c in 0..palette {
            let holders: Vec<u32> = (0..g1.vertex_count() as u32)
                .filter(|&v| l1.list(v).contains(&c))
                .collect();
            let (sub, _) = g1.induced(&holders);
            assert!(
                sub.is_regular(delta),
                "colour {c} induces an irregular subgraph"
            );
        }
        // Original lists survive on the original vertices.
        for v in 0..3 {
            assert_eq!(l1.list(v), lists.list(v));
        }
    }

    // ---- squared line graph ----

    #[test]
    fn square_line_graph_of_c5_is_k5() {
        let c5 = cycle(5).unwrap();
        let (h, table) = square_line_graph(&c5).unwrap();
        assert_eq!(table.len(), 5);
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.edge_count(), 10); // K_5
    }

    #[test]
    fn square_line_graph_of_path() {
        // P_4 has 3 edges; in the square all three are mutually adjacent
        // except the two end edges, which sit at distance exactly 1 via the
        // middle edge — they are joined by an edge of g, hence adjacent too.
        let p4 = path(4).unwrap();
        let (h, _) = square_line_graph(&p4).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn square_line_graph_needs_edges() {
        assert!(square_line_graph(&Graph::edgeless(3)).is_err());
    }

    #[test]
    fn degree_bound_of_squared_line_graph() {
        let p = petersen();
        let (h, _) = square_line_graph(&p).unwrap();
        let delta = p.max_degree();
        assert!(h.max_degree() <= 2 * delta * (delta - 1));
    }
}
