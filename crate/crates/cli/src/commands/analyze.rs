//! `analyze` — degree, sparsity, and codegree report.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use serde::Serialize;
use sparsecol::{max_codegree, sigma_sparsity, CodegreeReport, SparsityReport};

use crate::report::{emit, load_graph, CliError, FormatArg};

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,

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
    format: Option<FormatArg>,
}

#[derive(Serialize)]
struct Payload {
    vertex_count: usize,
    edge_count: usize,
    max_degree: usize,
    min_degree: usize,
    is_connected: bool,
    sparsity: SparsityReport,
    codegree: CodegreeReport,
}

pub fn run(args: AnalyzeArgs) -> Result<ExitCode, CliError> {
    let g = load_graph(&args.graph, args.format)?;
    let payload = Payload {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        max_degree: g.max_degree(),
        min_degree: (0..g.vertex_count() as u32)
            .map(|v| g.degree(v))
            .min()
            .unwrap_or(0),
        is_connected: g.is_connected(),
        sparsity: sigma_sparsity(&g),
        codegree: max_codegree(&g),
    };
    let spec = Spec {
        graph: args.graph.display().to_string(),
        format: args.format,
    };
    emit("analyze", spec, payload, args.json.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
