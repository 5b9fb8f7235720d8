//! `sample` — Monte Carlo statistics of the random independent-set
//! procedure, with the exact membership formula alongside each root.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use serde::Serialize;
use sparsecol::sampler::formulas::membership_probability_exact;
use sparsecol::{monte_carlo_stats, Graph, RootSummary, SamplerConfig};

use crate::report::{emit, load_graph, parse_roots, CliError, FormatArg};

#[derive(Args)]
pub struct SampleArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,

    /// Input encoding (defaults from the file name).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,

    /// Activation intensity; the activation probability is gamma over the
    /// effective maximum degree.
    #[arg(long)]
    gamma: f64,

    #[arg(long, default_value_t = 100_000)]
    trials: u64,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Roots to track: `all` or a comma-separated id list.
    #[arg(long, default_value = "all")]
    roots: String,

    /// Use this degree instead of the measured maximum.
    #[arg(long)]
    delta_override: Option<usize>,

    /// Report file; stdout when omitted.
    #[arg(long = "json", short = 'o')]
    json: Option<PathBuf>,
}

#[derive(Serialize)]
struct Spec {
    graph: String,
    format: Option<FormatArg>,
    gamma: f64,
    trials: u64,
    seed: u64,
    roots: Vec<u32>,
    delta_override: Option<usize>,
}

/// Per-root statistics under the documented interchange names.
#[derive(Serialize)]
pub struct RootReport {
    pub root: u32,
    pub p_in: f64,
    pub stderr_p_in: f64,
    /// Exact membership probability from the binomial formula.
    pub p_in_formula: f64,
    pub e_ir: f64,
    pub stderr_e_ir: f64,
    pub p_nonempty: f64,
    pub stderr_p_nonempty: f64,
    pub e_pairs: f64,
    pub stderr_e_pairs: f64,
    pub e_triples: f64,
    pub stderr_e_triples: f64,
    /// `p_nonempty / e_ir`, absent while the size estimate is zero.
    pub ratio: Option<f64>,
}

impl RootReport {
    fn new(summary: &RootSummary, formula: f64) -> Self {
        Self {
            root: summary.root,
            p_in: summary.p_in,
            stderr_p_in: summary.p_in_stderr,
            p_in_formula: formula,
            e_ir: summary.mean_size,
            stderr_e_ir: summary.mean_size_stderr,
            p_nonempty: summary.p_nonempty,
            stderr_p_nonempty: summary.p_nonempty_stderr,
            e_pairs: summary.mean_pairs,
            stderr_e_pairs: summary.mean_pairs_stderr,
            e_triples: summary.mean_triples,
            stderr_e_triples: summary.mean_triples_stderr,
            ratio: summary.ratio,
        }
    }
}

#[derive(Serialize)]
struct Payload {
    trials: u64,
    gamma: f64,
    activation: f64,
    delta_eff: usize,
    roots: Vec<RootReport>,
}

/// Runs the harness and shapes the per-root report rows; shared with the
/// sweep command.
pub fn collect(
    g: &Graph,
    cfg: &SamplerConfig,
    roots: &[u32],
    trials: u64,
) -> Result<(f64, usize, Vec<RootReport>), CliError> {
    let stats =
        monte_carlo_stats(g, roots, cfg, trials).map_err(|err| CliError::invalid(err.to_string()))?;
    let rows = stats
        .summaries()
        .iter()
        .map(|summary| {
            let formula = membership_probability_exact(g, summary.root, cfg)
                .map_err(|err| CliError::invalid(err.to_string()))?;
            Ok(RootReport::new(summary, formula))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok((stats.activation, stats.delta_eff, rows))
}

pub fn run(args: SampleArgs) -> Result<ExitCode, CliError> {
    let g = load_graph(&args.graph, args.format)?;
    let roots = parse_roots(&args.roots, g.vertex_count())?;
    let mut cfg = SamplerConfig::new(args.gamma, args.seed);
    cfg.delta_override = args.delta_override;
    let (activation, delta_eff, rows) = collect(&g, &cfg, &roots, args.trials)?;
    let spec = Spec {
        graph: args.graph.display().to_string(),
        format: args.format,
        gamma: args.gamma,
        trials: args.trials,
        seed: args.seed,
        roots: roots.clone(),
        delta_override: args.delta_override,
    };
    let payload = Payload {
        trials: args.trials,
        gamma: args.gamma,
        activation,
        delta_eff,
        roots: rows,
    };
    emit("sample", spec, payload, args.json.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
