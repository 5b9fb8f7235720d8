//! Colour lists attached to vertices.
//!
//! A [`ListAssignment`] stores one sorted colour list per vertex plus the
//! low-water mark for fresh colours: `next_fresh` is always strictly larger
//! than every colour appearing in any list, so palette extensions never
//! collide with colours already in play.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ListError {
    #[error("expected {expected} lists, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("vertex {vertex}: lists must be non-empty")]
    Empty { vertex: usize },
    #[error("lists must share one size; vertex {vertex} has {got}, expected {expected}")]
    NonUniform {
        vertex: usize,
        got: usize,
        expected: usize,
    },
}

/// Per-vertex colour lists with a fresh-colour watermark.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListAssignment {
    lists: Vec<Vec<u32>>,
    next_fresh: u32,
}

impl ListAssignment {
    /// Gives every one of `n` vertices the shared palette `{0, .., k-1}`.
    pub fn uniform(n: usize, k: usize) -> Self {
        let palette: Vec<u32> = (0..k as u32).collect();
        Self {
            lists: vec![palette; n],
            next_fresh: k as u32,
        }
    }

    /// Wraps explicit lists; each is sorted and deduplicated, and the
    /// watermark is set just above the largest colour present.
    pub fn from_lists(mut lists: Vec<Vec<u32>>) -> Self {
        let mut max_colour: Option<u32> = None;
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
            if let Some(&m) = list.last() {
                max_colour = Some(max_colour.map_or(m, |c| c.max(m)));
            }
        }
        Self {
            lists,
            next_fresh: max_colour.map_or(0, |m| m + 1),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, v: u32) -> &[u32] {
        &self.lists[v as usize]
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }

    pub fn next_fresh(&self) -> u32 {
        self.next_fresh
    }

    /// The common list size, if all lists agree (`None` otherwise or when
    /// there are no vertices).
    pub fn uniform_size(&self) -> Option<usize> {
        let first = self.lists.first()?.len();
        self.lists
            .iter()
            .all(|l| l.len() == first)
            .then_some(first)
    }

    /// Requires exactly `n` lists of one common size.
    pub fn check_uniform(&self, n: usize) -> Result<usize, ListError> {
        if self.lists.len() != n {
            return Err(ListError::WrongCount {
                expected: n,
                got: self.lists.len(),
            });
        }
        let expected = self.lists.first().map_or(0, Vec::len);
        if expected == 0 && n > 0 {
            return Err(ListError::Empty { vertex: 0 });
        }
        for (vertex, list) in self.lists.iter().enumerate() {
            if list.is_empty() {
                return Err(ListError::Empty { vertex });
            }
            if list.len() != expected {
                return Err(ListError::NonUniform {
                    vertex,
                    got: list.len(),
                    expected,
                });
            }
        }
        Ok(expected)
    }

    /// Reserves `count` brand-new colours and returns them (contiguous,
    /// ascending). Advances the watermark.
    pub fn allocate_fresh(&mut self, count: u32) -> std::ops::Range<u32> {
        let start = self.next_fresh;
        self.next_fresh += count;
        start..self.next_fresh
    }

    /// Replaces the list of `v`, keeping the watermark above every colour.
    pub fn replace(&mut self, v: u32, mut list: Vec<u32>) {
        list.sort_unstable();
        list.dedup();
        if let Some(&m) = list.last() {
            self.next_fresh = self.next_fresh.max(m + 1);
        }
        self.lists[v as usize] = list;
    }
}
