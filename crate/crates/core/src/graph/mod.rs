//! Simple undirected graphs with dense vertex ids.
//!
//! Vertices are `0..vertex_count()` and the structure is immutable once
//! built: no self-loops, no parallel edges, every adjacency list sorted
//! ascending. All analyzers and colouring routines in this crate assume
//! those invariants, so construction goes through [`Graph::from_edges`]
//! (or the parsers / generators built on top of it) which enforces them.

use thiserror::Error;

pub mod analyze;
pub mod construct;
pub mod generate;
pub mod parse;

/// Errors raised while building or transforming graphs.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(u32),
    #[error("vertex {vertex} out of range for graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: u32, vertex_count: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("construction would produce {requested} vertices, exceeding the cap of {cap}")]
    TooLarge { requested: u128, cap: u64 },
    #[error("{0}")]
    Invalid(String),
}

/// An immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    /// `adjacency[v]` lists the neighbours of `v`, sorted ascending.
    adjacency: Vec<Vec<u32>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `vertex_count` vertices from an edge list.
    ///
    /// Duplicate edges are collapsed; `(u, v)` and `(v, u)` denote the same
    /// edge.
    ///
    /// # Errors
    ///
    /// Rejects self-loops and endpoints `>= vertex_count`.
    pub fn from_edges(vertex_count: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w as usize >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        debug_assert!(edge_count % 2 == 0);
        Ok(Self {
            adjacency,
            edge_count: edge_count / 2,
        })
    }

    /// The graph on `vertex_count` vertices with no edges.
    pub fn edgeless(vertex_count: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); vertex_count],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbours of `v`, sorted ascending.
    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    /// Maximum degree; 0 for the empty or edgeless graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Iterates over edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Number of common neighbours of distinct vertices `u` and `v`.
    pub fn common_neighbour_count(&self, u: u32, v: u32) -> usize {
        sorted_intersection_len(self.neighbours(u), self.neighbours(v))
    }

    /// Induced subgraph on `vertices` (deduplicated, sorted internally).
    ///
    /// Returns the subgraph together with the map from new ids to old ids;
    /// new vertex `i` corresponds to original vertex `mapping[i]`.
    pub fn induced(&self, vertices: &[u32]) -> (Graph, Vec<u32>) {
        let mut mapping: Vec<u32> = vertices.to_vec();
        mapping.sort_unstable();
        mapping.dedup();
        debug_assert!(mapping.iter().all(|&v| (v as usize) < self.vertex_count()));
        let mut adjacency = vec![Vec::new(); mapping.len()];
        let mut edge_count = 0;
        for (new_u, &old_u) in mapping.iter().enumerate() {
            let list = &mut adjacency[new_u];
            for &old_v in self.neighbours(old_u) {
                if let Ok(new_v) = mapping.binary_search(&old_v) {
                    list.push(new_v as u32);
                }
            }
            // Neighbours were visited in ascending old order and the mapping
            // is monotone, so each list is already sorted.
            debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
            edge_count += list.len();
        }
        (
            Graph {
                adjacency,
                edge_count: edge_count / 2,
            },
            mapping,
        )
    }

    /// True if the graph is connected (vacuously true for 0 or 1 vertices).
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &u in self.neighbours(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == n
    }

    /// Checks that `d`-regularity holds for every vertex.
    pub fn is_regular(&self, d: usize) -> bool {
        self.adjacency.iter().all(|list| list.len() == d)
    }
}

/// Length of the intersection of two ascending slices.
pub(crate) fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_dedups_and_sorts() {
        let g = Graph::from_edges(4, &[(1, 0), (0, 1), (2, 3), (0, 3)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.neighbours(0), &[1, 3]);
        assert_eq!(g.neighbours(3), &[0, 2]);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(1, 2));
    }

    #[test]
    fn from_edges_rejects_self_loop_and_range() {
        assert!(matches!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
    }

    #[test]
    fn edges_iterator_is_lexicographic() {
        let g = Graph::from_edges(4, &[(2, 3), (0, 2), (0, 1)]).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (2, 3)]);
    }

    #[test]
    fn induced_subgraph_remaps_ids() {
        // Path 0-1-2-3; induce on {0, 2, 3}.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (h, map) = g.induced(&[3, 0, 2]);
        assert_eq!(map, vec![0, 2, 3]);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 1);
        assert!(h.has_edge(1, 2)); // old edge (2, 3)
        assert_eq!(h.degree(0), 0);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::edgeless(1).is_connected());
        assert!(!Graph::edgeless(2).is_connected());
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.is_connected());
    }
}
