//! `oracle` — exact brute-force references: chromatic number, exhaustive
//! sampler distribution in exact rationals, strong chromatic index.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Subcommand};
use serde::Serialize;
use sparsecol::rational::{parse_rational, RationalJson};
use sparsecol::{
    brute_chromatic_with_cap, brute_strong_index, exact_sampler_stats_with_cap,
};

use crate::report::{emit, load_graph, CliError, FormatArg};

#[derive(Args)]
pub struct OracleArgs {
    #[command(subcommand)]
    what: What,
}

/// Flags shared by every oracle mode.
#[derive(Args)]
struct Common {
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

#[derive(Subcommand)]
enum What {
    /// Exact chromatic number (branch and bound, default cap 24 vertices).
    Chromatic {
        #[command(flatten)]
        common: Common,
        /// Vertex cap override, at most 32.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Exhaustive distribution of the random independent-set procedure.
    Sampler {
        #[command(flatten)]
        common: Common,
        /// Activation probability as an exact fraction `p/q`.
        #[arg(long, value_name = "P/Q")]
        gamma_over_delta: String,
        /// Enumerate priority orderings only for activation subsets up to
        /// this size (closed forms cover memberships beyond it).
        #[arg(long)]
        permutation_cap: Option<usize>,
    },
    /// Exact strong chromatic index (at most 24 edges).
    Strong {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Serialize)]
struct Spec {
    graph: String,
    format: Option<FormatArg>,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma_over_delta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cap: Option<usize>,
}

#[derive(Serialize)]
struct ChromaticPayload {
    chromatic_number: u32,
    vertex_count: usize,
    edge_count: usize,
    max_degree: usize,
}

#[derive(Serialize)]
struct ExactRootJson {
    root: u32,
    p_nonempty: RationalJson,
    e_size: RationalJson,
    e_pairs: RationalJson,
    e_triples: RationalJson,
}

#[derive(Serialize)]
struct SamplerPayload {
    activation: RationalJson,
    expected_set_size: RationalJson,
    membership: Vec<RationalJson>,
    roots: Vec<ExactRootJson>,
    permutation_cap: usize,
    skipped_subsets: u64,
}

#[derive(Serialize)]
struct StrongPayload {
    strong_chromatic_index: u32,
    edge_count: usize,
}

pub fn run(args: OracleArgs) -> Result<ExitCode, CliError> {
    let common = match &args.what {
        What::Chromatic { common, .. } => common,
        What::Sampler { common, .. } => common,
        What::Strong { common } => common,
    };
    let g = load_graph(&common.graph, common.format)?;
    let graph = common.graph.display().to_string();
    let format = common.format;
    let json = common.json.clone();
    let oops = |err: sparsecol::OracleError| CliError::invalid(err.to_string());
    match args.what {
        What::Chromatic { cap, .. } => {
            let cap = cap.unwrap_or(sparsecol::oracle::BRUTE_VERTEX_CAP);
            let chromatic_number = brute_chromatic_with_cap(&g, cap).map_err(oops)?;
            let spec = Spec {
                graph,
                format,
                mode: "chromatic",
                gamma_over_delta: None,
                cap: Some(cap),
            };
            let payload = ChromaticPayload {
                chromatic_number,
                vertex_count: g.vertex_count(),
                edge_count: g.edge_count(),
                max_degree: g.max_degree(),
            };
            emit("oracle", spec, payload, json.as_deref())?;
        }
        What::Sampler {
            gamma_over_delta,
            permutation_cap,
            ..
        } => {
            let activation = parse_rational(&gamma_over_delta).ok_or_else(|| {
                CliError::invalid(format!("bad activation fraction {gamma_over_delta:?}"))
            })?;
            let cap = permutation_cap.unwrap_or(sparsecol::oracle::DEFAULT_PERMUTATION_CAP);
            let stats = exact_sampler_stats_with_cap(&g, activation, cap).map_err(oops)?;
            let spec = Spec {
                graph,
                format,
                mode: "sampler",
                gamma_over_delta: Some(gamma_over_delta),
                cap: Some(cap),
            };
            let payload = SamplerPayload {
                activation: RationalJson::from(&stats.activation),
                expected_set_size: RationalJson::from(&stats.expected_set_size()),
                membership: stats.membership.iter().map(RationalJson::from).collect(),
                roots: stats
                    .roots
                    .iter()
                    .map(|r| ExactRootJson {
                        root: r.root,
                        p_nonempty: RationalJson::from(&r.p_nonempty),
                        e_size: RationalJson::from(&r.e_size),
                        e_pairs: RationalJson::from(&r.e_pairs),
                        e_triples: RationalJson::from(&r.e_triples),
                    })
                    .collect(),
                permutation_cap: stats.permutation_cap,
                skipped_subsets: stats.skipped_subsets,
            };
            emit("oracle", spec, payload, json.as_deref())?;
        }
        What::Strong { .. } => {
            let strong_chromatic_index = brute_strong_index(&g).map_err(oops)?;
            let spec = Spec {
                graph,
                format,
                mode: "strong",
                gamma_over_delta: None,
                cap: None,
            };
            let payload = StrongPayload {
                strong_chromatic_index,
                edge_count: g.edge_count(),
            };
            emit("oracle", spec, payload, json.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
