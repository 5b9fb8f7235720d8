//! `gen` — write a graph family to a file or stdout.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Subcommand};
use sparsecol::graph::{construct, generate};
use sparsecol::rational::parse_rational;
use sparsecol::{serialize_graph, Graph, GraphFormat};

use crate::report::{write_text, CliError, FormatArg};

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    family: Family,

    /// Output file; stdout when omitted.
    #[arg(short = 'o', long = "out", global = true)]
    out: Option<PathBuf>,

    /// Output encoding (defaults to the edge list, or DIMACS for `.col`).
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Family {
    /// Clique of size max{1, floor(sqrt(1-sigma)*delta)}, each clique
    /// vertex padded with pendants up to degree delta.
    Sharpness {
        #[arg(long)]
        delta: usize,
        /// Sparsity target in (0, 1], as a fraction `p/q` or a decimal.
        #[arg(long)]
        sigma: String,
    },
    /// Complete graph on `n` vertices.
    Complete {
        #[arg(long)]
        n: usize,
    },
    /// Cycle on `n` vertices.
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// Path on `n` vertices.
    Path {
        #[arg(long)]
        n: usize,
    },
    /// Star with the given number of leaves.
    Star {
        #[arg(long)]
        leaves: usize,
    },
    /// The Petersen graph.
    Petersen,
    /// The Chvatal graph.
    Chvatal,
    /// `n` vertices, no edges.
    Edgeless {
        #[arg(long)]
        n: usize,
    },
    /// Erdos-Renyi graph, each pair an edge with probability `p`.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resample edges of vertices that would exceed this degree.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Random `d`-regular graph (pairing model with retries).
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Replace each vertex of a base graph by `copies` twins.
    Blowup {
        /// Base graph file.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        copies: usize,
        /// Input encoding of the base graph.
        #[arg(long, value_enum)]
        input_format: Option<FormatArg>,
    },
    /// Square of the line graph of a base graph.
    Lsquare {
        /// Base graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Input encoding of the base graph.
        #[arg(long, value_enum)]
        input_format: Option<FormatArg>,
    },
}

pub fn run(args: GenArgs) -> Result<ExitCode, CliError> {
    let graph = build(&args.family)?;
    let format = match (&args.format, &args.out) {
        (Some(arg), _) => (*arg).into(),
        (None, Some(path)) => GraphFormat::from_path_hint(&path.to_string_lossy()),
        (None, None) => GraphFormat::EdgeList,
    };
    write_text(&serialize_graph(&graph, format), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn build(family: &Family) -> Result<Graph, CliError> {
    let invalid = |err: sparsecol::GraphError| CliError::invalid(err.to_string());
    match family {
        Family::Sharpness { delta, sigma } => {
            let sigma = parse_rational(sigma)
                .ok_or_else(|| CliError::invalid(format!("bad sigma {sigma:?}")))?;
            construct::sharpness_construction(*delta, sigma).map_err(invalid)
        }
        Family::Complete { n } => construct::complete(*n).map_err(invalid),
        Family::Cycle { n } => construct::cycle(*n).map_err(invalid),
        Family::Path { n } => construct::path(*n).map_err(invalid),
        Family::Star { leaves } => construct::star(*leaves).map_err(invalid),
        Family::Petersen => Ok(construct::petersen()),
        Family::Chvatal => Ok(construct::chvatal()),
        Family::Edgeless { n } => Ok(Graph::edgeless(*n)),
        Family::Gnp {
            n,
            p,
            seed,
            max_degree,
        } => match max_degree {
            Some(cap) => generate::gnp_capped(*n, *p, *cap, *seed).map_err(invalid),
            None => generate::gnp(*n, *p, *seed).map_err(invalid),
        },
        Family::Regular { n, d, seed } => generate::random_regular(*n, *d, *seed).map_err(invalid),
        Family::Blowup {
            graph,
            copies,
            input_format,
        } => {
            let base = crate::report::load_graph(graph, *input_format)?;
            construct::blow_up(&base, *copies).map_err(invalid)
        }
        Family::Lsquare {
            graph,
            input_format,
        } => {
            let base = crate::report::load_graph(graph, *input_format)?;
            let (square, _) = construct::square_line_graph(&base).map_err(invalid)?;
            Ok(square)
        }
    }
}
