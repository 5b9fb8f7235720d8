//! `verify` — validate a colouring artifact against a graph, exiting 1 on
//! any violation.
//!
//! Accepts three artifact shapes: a bare `{vertex: colour}` map, a bare
//! `{"u-v": colour}` strong map, or a full report from `colour`/`strong`
//! (the embedded `colouring`/`edge_colours` object is used). Keys with a
//! dash select the strong interpretation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use serde::Serialize;
use sparsecol::{
    validate_colouring, validate_strong, ColouringValidation, Graph, StrongColouring,
    StrongValidation,
};

use crate::report::{emit, load_graph, parse_edge_map, parse_vertex_map, CliError, FormatArg};

#[derive(Args)]
pub struct VerifyArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,

    /// Colouring artifact (JSON).
    #[arg(long)]
    colouring: PathBuf,

    /// Input encoding (defaults from the file name).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,

    /// Report file; stdout when omitted.
    #[arg(long = "json", short = 'o')]
    json: Option<PathBuf>,
}

#[derive(Serialize)]
struct Spec {
    graph: String,
    colouring: String,
    format: Option<FormatArg>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Payload {
    Vertex {
        total: bool,
        valid: bool,
        validation: ColouringValidation,
    },
    Strong {
        valid: bool,
        validation: StrongValidation,
    },
}

pub fn run(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let g = load_graph(&args.graph, args.format)?;
    let text = fs::read_to_string(&args.colouring).map_err(|source| CliError::Io {
        path: args.colouring.clone(),
        source,
    })?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let payload = build_payload(&g, &value)?;
    let valid = match &payload {
        Payload::Vertex { total, valid, .. } => *total && *valid,
        Payload::Strong { valid, .. } => *valid,
    };
    let spec = Spec {
        graph: args.graph.display().to_string(),
        colouring: args.colouring.display().to_string(),
        format: args.format,
    };
    emit("verify", spec, payload, args.json.as_deref())?;
    Ok(if valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn build_payload(g: &Graph, value: &serde_json::Value) -> Result<Payload, CliError> {
    let object = value
        .as_object()
        .ok_or_else(|| CliError::invalid("colouring artifact must be a JSON object"))?;

    // Full reports embed the map under a known key.
    let map = if let Some(inner) = object.get("edge_colours").and_then(|v| v.as_object()) {
        inner
    } else if let Some(inner) = object.get("colouring").and_then(|v| v.as_object()) {
        if let Some(edges) = inner.get("edge_colours").and_then(|v| v.as_object()) {
            edges
        } else {
            inner
        }
    } else {
        object
    };

    let strong = map.keys().any(|key| key.contains('-'));
    if strong {
        let edges = parse_edge_map(map)?;
        let colouring = StrongColouring::from_edge_colours(edges);
        let validation = validate_strong(g, &colouring);
        Ok(Payload::Strong {
            valid: validation.passes,
            validation,
        })
    } else {
        let colouring = parse_vertex_map(map, g.vertex_count())?;
        let validation = validate_colouring(g, &colouring);
        Ok(Payload::Vertex {
            total: validation.uncoloured == 0,
            valid: validation.passes,
            validation,
        })
    }
}
