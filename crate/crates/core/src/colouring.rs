//! Partial vertex colourings, validation, and greedy completion.

use serde::Serialize;

use crate::graph::Graph;

/// A colouring defined on a subset of the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialColouring {
    colours: Vec<Option<u32>>,
}

impl PartialColouring {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            colours: vec![None; vertex_count],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.colours.len()
    }

    pub fn get(&self, v: u32) -> Option<u32> {
        self.colours[v as usize]
    }

    pub fn set(&mut self, v: u32, colour: u32) {
        self.colours[v as usize] = Some(colour);
    }

    /// Number of coloured vertices.
    pub fn assigned_count(&self) -> usize {
        self.colours.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.colours.iter().all(Option::is_some)
    }

    /// Vertices without a colour, ascending.
    pub fn uncoloured(&self) -> Vec<u32> {
        self.colours
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.is_none().then_some(v as u32))
            .collect()
    }

    /// Distinct colours in use.
    pub fn colour_count(&self) -> usize {
        let mut used: Vec<u32> = self.colours.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    pub fn max_colour(&self) -> Option<u32> {
        self.colours.iter().flatten().copied().max()
    }

    /// Copies every assignment of `other` into `self`.
    ///
    /// # Panics
    ///
    /// In debug builds, if the domains overlap with conflicting colours.
    pub fn absorb(&mut self, other: &PartialColouring) {
        debug_assert_eq!(self.colours.len(), other.colours.len());
        for (mine, theirs) in self.colours.iter_mut().zip(&other.colours) {
            if let Some(c) = theirs {
                debug_assert!(mine.is_none() || mine.as_ref() == Some(c));
                *mine = Some(*c);
            }
        }
    }

    /// View of the underlying assignment vector.
    pub fn assignments(&self) -> &[Option<u32>] {
        &self.colours
    }
}

/// Result of checking a partial colouring for properness.
#[derive(Debug, Clone, Serialize)]
pub struct ColouringValidation {
    /// Edges whose two endpoints are coloured alike.
    pub monochromatic_edges: Vec<(u32, u32)>,
    pub passes: bool,
    pub assigned: usize,
    pub uncoloured: usize,
    pub colour_count: usize,
    pub max_colour: Option<u32>,
}

/// Lists every monochromatic edge within the coloured domain. Uncoloured
/// endpoints never conflict.
pub fn validate_colouring(g: &Graph, colouring: &PartialColouring) -> ColouringValidation {
    let mut monochromatic_edges = Vec::new();
    for (u, v) in g.edges() {
        if let (Some(cu), Some(cv)) = (colouring.get(u), colouring.get(v)) {
            if cu == cv {
                monochromatic_edges.push((u, v));
            }
        }
    }
    let assigned = colouring.assigned_count();
    ColouringValidation {
        passes: monochromatic_edges.is_empty(),
        monochromatic_edges,
        assigned,
        uncoloured: g.vertex_count() - assigned,
        colour_count: colouring.colour_count(),
        max_colour: colouring.max_colour(),
    }
}

/// Completes `partial` greedily over the uncoloured vertices in
/// smallest-last order: repeatedly remove a minimum-degree vertex (ties to
/// the smallest id) from the uncoloured induced subgraph, then colour in
/// reverse removal order. Each vertex receives the first colour — trying
/// `palette_hint` in order, then fresh colours above the hint — absent from
/// its coloured neighbourhood.
pub fn greedy_complete(
    g: &Graph,
    partial: &PartialColouring,
    palette_hint: &[u32],
) -> PartialColouring {
    let mut result = partial.clone();
    let order = smallest_last_order(g, &partial.uncoloured());
    let mut hint: Vec<u32> = palette_hint.to_vec();
    hint.sort_unstable();
    hint.dedup();
    let fresh_base = hint.last().map_or(0, |&m| m + 1);
    for &v in order.iter().rev() {
        let mut blocked: Vec<u32> = g
            .neighbours(v)
            .iter()
            .filter_map(|&u| result.get(u))
            .collect();
        blocked.sort_unstable();
        blocked.dedup();
        let choice = hint
            .iter()
            .copied()
            .find(|c| blocked.binary_search(c).is_err())
            .unwrap_or_else(|| {
                // All hint colours blocked: first free colour at or above
                // the hint range.
                let mut c = fresh_base;
                while blocked.binary_search(&c).is_ok() {
                    c += 1;
                }
                c
            });
        result.set(v, choice);
    }
    result
}

/// Smallest-last (degeneracy) removal order of `subset` within the induced
/// subgraph `g[subset]`.
pub fn smallest_last_order(g: &Graph, subset: &[u32]) -> Vec<u32> {
    let mut alive: Vec<u32> = subset.to_vec();
    alive.sort_unstable();
    alive.dedup();
    let mut in_set = vec![false; g.vertex_count()];
    for &v in &alive {
        in_set[v as usize] = true;
    }
    let mut degree = vec![0usize; g.vertex_count()];
    for &v in &alive {
        degree[v as usize] = g
            .neighbours(v)
            .iter()
            .filter(|&&u| in_set[u as usize])
            .count();
    }
    let mut order = Vec::with_capacity(alive.len());
    let mut remaining = alive;
    while !remaining.is_empty() {
        // Minimum degree, smallest id on ties. The scan is quadratic overall
        // but the graphs here are desk-scale.
        let (idx, &v) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| (degree[v as usize], v))
            .expect("non-empty");
        remaining.swap_remove(idx);
        in_set[v as usize] = false;
        order.push(v);
        for &u in g.neighbours(v) {
            if in_set[u as usize] {
                degree[u as usize] -= 1;
            }
        }
    }
    order
}
