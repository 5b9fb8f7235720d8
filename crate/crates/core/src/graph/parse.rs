//! Graph file formats: plain edge lists and DIMACS `.col`.
//!
//! Edge-list files contain one `u v` pair per line with 0-based vertex ids;
//! blank lines and lines starting with `#` are ignored and the vertex count
//! is `max id + 1`. DIMACS files carry an explicit `p edge <n> <m>` header,
//! `c` comment lines, and 1-based `e u v` edge lines; ids are shifted down
//! by one on parse and up by one on serialization.

use super::{Graph, GraphError};

/// Supported external graph encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

impl GraphFormat {
    /// Guesses the format from a file name, defaulting to the edge list.
    pub fn from_path_hint(path: &str) -> Self {
        if path.rsplit('.').next().is_some_and(|ext| ext.eq_ignore_ascii_case("col")) {
            GraphFormat::Dimacs
        } else {
            GraphFormat::EdgeList
        }
    }
}

/// Parses `text` in the given format.
///
/// # Errors
///
/// Reports malformed lines with their 1-based line number, out-of-range
/// endpoints, and self-loops.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut max_vertex: Option<u32> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let u = parse_vertex(parts.next(), line_no)?;
        let v = parse_vertex(parts.next(), line_no)?;
        if parts.next().is_some() {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("expected exactly two vertex ids, got extra tokens in {line:?}"),
            });
        }
        max_vertex = Some(max_vertex.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let vertex_count = max_vertex.map_or(0, |m| m as usize + 1);
    Graph::from_edges(vertex_count, &edges)
}

fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if declared.is_some() {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: "duplicate problem line".into(),
                });
            }
            let mut parts = rest.split_whitespace();
            if parts.next() != Some("edge") {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: "problem line must read `p edge <n> <m>`".into(),
                });
            }
            let n: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::Parse {
                    line: line_no,
                    message: "missing or invalid vertex count".into(),
                })?;
            let _m: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::Parse {
                    line: line_no,
                    message: "missing or invalid edge count".into(),
                })?;
            declared = Some(n);
        } else if let Some(rest) = line.strip_prefix('e') {
            let n = declared.ok_or_else(|| GraphError::Parse {
                line: line_no,
                message: "edge line before problem line".into(),
            })?;
            let mut parts = rest.split_whitespace();
            let u = parse_vertex(parts.next(), line_no)?;
            let v = parse_vertex(parts.next(), line_no)?;
            for w in [u, v] {
                if w == 0 || w as usize > n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        vertex_count: n,
                    });
                }
            }
            edges.push((u - 1, v - 1));
        } else {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("unrecognized line {line:?}"),
            });
        }
    }
    let n = declared.ok_or_else(|| GraphError::Parse {
        line: text.lines().count().max(1),
        message: "missing problem line".into(),
    })?;
    Graph::from_edges(n, &edges)
}

fn parse_vertex(token: Option<&str>, line_no: usize) -> Result<u32, GraphError> {
    let token = token.ok_or_else(|| GraphError::Parse {
        line: line_no,
        message: "missing vertex id".into(),
    })?;
    token.parse().map_err(|_| GraphError::Parse {
        line: line_no,
        message: format!("invalid vertex id {token:?}"),
    })
}

/// Serializes `g` in the given format.
///
/// The output is canonical: edges sorted lexicographically with `u < v`, no
/// comments. Note that trailing isolated vertices are representable only in
/// DIMACS (the edge-list encoding infers the vertex count from edge
/// endpoints).
pub fn serialize_graph(g: &Graph, format: GraphFormat) -> String {
    let mut out = String::new();
    match format {
        GraphFormat::EdgeList => {
            for (u, v) in g.edges() {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
        GraphFormat::Dimacs => {
            out.push_str(&format!("p edge {} {}\n", g.vertex_count(), g.edge_count()));
            for (u, v) in g.edges() {
                out.push_str(&format!("e {} {}\n", u + 1, v + 1));
            }
        }
    }
    out
}
