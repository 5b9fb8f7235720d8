//! Report envelope, artifact I/O, and the colouring interchange formats.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use sparsecol::{parse_graph, Graph, GraphFormat, PartialColouring};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::Invalid(message.into())
    }
}

/// The one schema every JSON artifact shares: the command, its fully
/// resolved parameters, a wall-clock stamp (the single field excluded from
/// determinism comparisons), and the command-specific payload flattened
/// alongside.
#[derive(Serialize)]
struct Envelope<S: Serialize, P: Serialize> {
    command: &'static str,
    spec: S,
    timestamp_unix: u64,
    #[serde(flatten)]
    payload: P,
}

/// Serializes the enveloped report, writing to `out` or stdout.
pub fn emit<S: Serialize, P: Serialize>(
    command: &'static str,
    spec: S,
    payload: P,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let envelope = Envelope {
        command,
        spec,
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        payload,
    };
    let mut text = serde_json::to_string_pretty(&envelope)?;
    text.push('\n');
    write_text(&text, out)
}

/// Writes `text` to `out`, or to stdout when no path is given.
pub fn write_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reads and parses a graph file, honouring an explicit format override or
/// guessing from the file name.
pub fn load_graph(path: &Path, format: Option<FormatArg>) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let format = match format {
        Some(arg) => arg.into(),
        None => GraphFormat::from_path_hint(&path.to_string_lossy()),
    };
    parse_graph(&text, format)
        .map_err(|err| CliError::invalid(format!("{}: {err}", path.display())))
}

/// Format selector exposed on every graph-reading flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormatArg {
    EdgeList,
    Dimacs,
}

impl From<FormatArg> for GraphFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::Dimacs => GraphFormat::Dimacs,
        }
    }
}

// ==========================================================================
// Colouring interchange
// ==========================================================================

/// Vertex colouring interchange view: a JSON object mapping vertex id to
/// colour id, keys emitted in numeric order.
pub struct VertexMap<'a>(pub &'a PartialColouring);

impl Serialize for VertexMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let assigned = self
            .0
            .assignments()
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)));
        let mut map = serializer.serialize_map(None)?;
        for (v, c) in assigned {
            map.serialize_entry(&v.to_string(), &c)?;
        }
        map.end()
    }
}

/// Reads a `{vertex: colour}` JSON object into a partial colouring over
/// `n` vertices, rejecting malformed keys and out-of-range vertices.
pub fn parse_vertex_map(
    object: &serde_json::Map<String, serde_json::Value>,
    n: usize,
) -> Result<PartialColouring, CliError> {
    let mut colouring = PartialColouring::new(n);
    for (key, value) in object {
        let vertex: usize = key
            .parse()
            .map_err(|_| CliError::invalid(format!("bad vertex key {key:?}")))?;
        if vertex >= n {
            return Err(CliError::invalid(format!(
                "vertex {vertex} outside the graph (order {n})"
            )));
        }
        let colour = value
            .as_u64()
            .filter(|&c| c <= u32::MAX as u64)
            .ok_or_else(|| CliError::invalid(format!("bad colour for vertex {key}: {value}")))?;
        colouring.set(vertex as u32, colour as u32);
    }
    Ok(colouring)
}

/// Reads a `{"u-v": colour}` JSON object into an edge-to-colour map with
/// normalized `u < v` keys.
pub fn parse_edge_map(
    object: &serde_json::Map<String, serde_json::Value>,
) -> Result<std::collections::BTreeMap<(u32, u32), u32>, CliError> {
    let mut edges = std::collections::BTreeMap::new();
    for (key, value) in object {
        let (u, v) = key
            .split_once('-')
            .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<u32>().ok()?)))
            .ok_or_else(|| CliError::invalid(format!("bad edge key {key:?}")))?;
        if u == v {
            return Err(CliError::invalid(format!("edge key {key:?} is a loop")));
        }
        let colour = value
            .as_u64()
            .filter(|&c| c <= u32::MAX as u64)
            .ok_or_else(|| CliError::invalid(format!("bad colour for edge {key}: {value}")))?;
        let normalized = if u < v { (u, v) } else { (v, u) };
        edges.insert(normalized, colour as u32);
    }
    Ok(edges)
}

/// Parses a comma-separated root list, with `all` meaning every vertex.
pub fn parse_roots(spec: &str, n: usize) -> Result<Vec<u32>, CliError> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok((0..n as u32).collect());
    }
    spec.split(',')
        .map(|part| {
            let root: u32 = part
                .trim()
                .parse()
                .map_err(|_| CliError::invalid(format!("bad root {part:?}")))?;
            if (root as usize) < n {
                Ok(root)
            } else {
                Err(CliError::invalid(format!(
                    "root {root} outside the graph (order {n})"
                )))
            }
        })
        .collect()
}

/// Parses a comma-separated list of positive floats (grid axes).
pub fn parse_float_list(spec: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, CliError> = spec
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| CliError::invalid(format!("bad {flag} value {part:?}")))
        })
        .collect();
    let values = values?;
    if values.is_empty() {
        return Err(CliError::invalid(format!("{flag} list is empty")));
    }
    Ok(values)
}
