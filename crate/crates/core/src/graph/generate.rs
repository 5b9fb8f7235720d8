//! Seeded random graph generators.
//!
//! Everything here is deterministic in the seed: generators draw from a
//! dedicated ChaCha substream (see [`crate::rng`]) so the same parameters
//! always reproduce the same graph, independent of caller state.

use rand::Rng;

use super::{Graph, GraphError};
use crate::rng::substream;

/// Erdős–Rényi `G(n, p)`: each pair becomes an edge independently with
/// probability `p`, pairs visited in lexicographic order.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::Invalid(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = substream(seed, 0);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// `G(n, p)` conditioned on maximum degree at most `max_degree`: pairs are
/// visited in lexicographic order and an edge is added with probability `p`
/// only while both endpoints have spare degree. Degrees are bounded by
/// construction, so no rejection loop is needed.
pub fn gnp_capped(n: usize, p: f64, max_degree: usize, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::Invalid(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = substream(seed, 0);
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            // Draw unconditionally to keep the stream position independent
            // of earlier acceptances.
            let coin = rng.random::<f64>() < p;
            if coin && degree[u as usize] < max_degree && degree[v as usize] < max_degree {
                degree[u as usize] += 1;
                degree[v as usize] += 1;
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random `d`-regular simple graph: starts from a circulant base and mixes
/// it with `20 * |E|` random degree-preserving double-edge swaps (each swap
/// rejected if it would create a loop or parallel edge).
///
/// # Errors
///
/// Requires `d < n` and `n * d` even.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    if d >= n {
        return Err(GraphError::Invalid(format!(
            "degree {d} must be below vertex count {n}"
        )));
    }
    if n * d % 2 != 0 {
        return Err(GraphError::Invalid(format!(
            "n * d must be even, got n = {n}, d = {d}"
        )));
    }
    if d == 0 {
        return Ok(Graph::edgeless(n));
    }
    // Circulant base: offsets 1..=d/2, plus the antipodal matching when d
    // is odd (n is even in that case because n * d is even).
    let mut edge_list: Vec<(u32, u32)> = Vec::with_capacity(n * d / 2);
    let mut edge_set = std::collections::HashSet::with_capacity(n * d / 2);
    let push = |set: &mut std::collections::HashSet<(u32, u32)>,
                    list: &mut Vec<(u32, u32)>,
                    u: u32,
                    v: u32| {
        let e = (u.min(v), u.max(v));
        if set.insert(e) {
            list.push(e);
        }
    };
    for o in 1..=(d / 2) as u32 {
        for v in 0..n as u32 {
            push(&mut edge_set, &mut edge_list, v, (v + o) % n as u32);
        }
    }
    if d % 2 == 1 {
        for v in 0..(n / 2) as u32 {
            push(&mut edge_set, &mut edge_list, v, v + (n / 2) as u32);
        }
    }
    debug_assert_eq!(edge_list.len(), n * d / 2);

    let mut rng = substream(seed, 0);
    let m = edge_list.len();
    for _ in 0..20 * m {
        let i = rng.random_range(0..m);
        let j = rng.random_range(0..m);
        if i == j {
            continue;
        }
        let (a, b) = edge_list[i];
        let (c, d2) = edge_list[j];
        let (c, d2) = if rng.random::<bool>() { (c, d2) } else { (d2, c) };
        if a == c || a == d2 || b == c || b == d2 {
            continue;
        }
        let new1 = (a.min(c), a.max(c));
        let new2 = (b.min(d2), b.max(d2));
        if edge_set.contains(&new1) || edge_set.contains(&new2) {
            continue;
        }
        edge_set.remove(&edge_list[i]);
        edge_set.remove(&edge_list[j]);
        edge_set.insert(new1);
        edge_set.insert(new2);
        edge_list[i] = new1;
        edge_list[j] = new2;
    }
    Graph::from_edges(n, &edge_list)
}
