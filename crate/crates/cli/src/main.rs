//! Command-line front end for the curvature library: `compute` renders edge
//! and node curvatures of an input graph, `verify` runs seeded suites of the
//! exact identities the library promises, and `oracle` exposes the transport
//! backends directly for a pair of measures.

mod oracle;
mod render;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvkit::curvature::{
    default_lly_grid, lly_limit_estimate, lly_tree_closed, orc_definitional, orc_tree_closed,
    steinerberger_solve, steinerberger_solve_float, steinerberger_tree_closed, CurvatureError,
};
use curvkit::graph::{build_graph, parse_edge_list, EdgeListError, Graph, GraphError,
    DEFAULT_MAX_NODES};
use curvkit::rational::{parse_rational, Rational};
use curvkit::transport::{MeasureError, TransportError};
use num::{One, Signed};
use rayon::prelude::*;

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_GRAPH: u8 = 3;
pub const EXIT_SIZE: u8 = 4;
pub const EXIT_VERIFY: u8 = 5;
pub const EXIT_MEASURE: u8 = 6;

/// Node count above which `compute` switches the node-curvature system from
/// exact elimination to floating-point least squares unless a mode is forced.
/// Trees are exempt: their closed form is exact at any size.
pub const FLOAT_AUTO_THRESHOLD: usize = 500;

/// Terminal failure carrying the process exit code.
#[derive(Debug)]
pub struct AppError {
    pub code: u8,
    pub message: String,
}

impl AppError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        AppError {
            code,
            message: message.into(),
        }
    }
}

impl From<GraphError> for AppError {
    fn from(e: GraphError) -> Self {
        let code = match e {
            GraphError::TooLarge { .. } => EXIT_SIZE,
            _ => EXIT_GRAPH,
        };
        AppError::new(code, format!("graph error: {e}"))
    }
}

impl From<EdgeListError> for AppError {
    fn from(e: EdgeListError) -> Self {
        AppError::new(EXIT_PARSE, format!("parse error: {e}"))
    }
}

impl From<MeasureError> for AppError {
    fn from(e: MeasureError) -> Self {
        AppError::new(EXIT_MEASURE, format!("measure error: {e}"))
    }
}

impl From<TransportError> for AppError {
    fn from(e: TransportError) -> Self {
        match e {
            TransportError::Graph(g) => g.into(),
            TransportError::Measure(m) => m.into(),
            TransportError::MeasureSizeMismatch { .. } => {
                AppError::new(EXIT_MEASURE, format!("measure error: {e}"))
            }
            TransportError::TooLargeForLp { .. } => {
                AppError::new(EXIT_SIZE, format!("size error: {e}"))
            }
            TransportError::AlphaOutOfRange { .. } => {
                AppError::new(EXIT_PARSE, format!("parse error: {e}"))
            }
            TransportError::Lp(_) | TransportError::WitnessViolation { .. } => {
                AppError::new(EXIT_VERIFY, format!("solver error: {e}"))
            }
        }
    }
}

impl From<CurvatureError> for AppError {
    fn from(e: CurvatureError) -> Self {
        match e {
            CurvatureError::Graph(g) => g.into(),
            CurvatureError::Transport(t) => t.into(),
            CurvatureError::SameNode(_)
            | CurvatureError::AlphaOutOfRange { .. }
            | CurvatureError::InvalidGrid { .. } => {
                AppError::new(EXIT_PARSE, format!("parse error: {e}"))
            }
            CurvatureError::NotCombinatorial { .. } => {
                AppError::new(EXIT_GRAPH, format!("graph error: {e}"))
            }
            CurvatureError::InternalInconsistency { .. } => {
                AppError::new(EXIT_VERIFY, format!("internal error: {e}"))
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "curvkit",
    version,
    about = "Curvature of weighted graphs: lazy-walk edge curvature, its laziness limit, \
             and distance-system node curvature, in exact rational arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute edge and node curvatures of a graph
    Compute(ComputeArgs),
    /// Run seeded verification suites over the library's exact identities
    Verify(verify::VerifyArgs),
    /// Evaluate the transport distance between two measures by each backend
    Oracle(oracle::OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Dot,
}

#[derive(Args)]
pub struct ComputeArgs {
    /// Graph file: one `u v [w]` edge per line, `#` starts a comment
    input: PathBuf,
    /// Laziness values in [0, 1), comma-separated or repeated; fractions
    /// (`1/2`) and decimals (`0.5`) are read exactly
    #[arg(long, value_delimiter = ',', default_value = "1/2")]
    alpha: Vec<String>,
    /// Emit every node pair instead of edges only
    #[arg(long)]
    all_pairs: bool,
    /// Force exact arithmetic for the node-curvature system
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Force floating-point arithmetic for the node-curvature system
    #[arg(long)]
    float: bool,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Significant digits in decimal renderings
    #[arg(long, default_value_t = 6)]
    precision: usize,
    /// Node-count bound (overrides CURVKIT_MAX_N and the built-in default)
    #[arg(long)]
    max_n: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Verify(args) => verify::cmd_verify(args),
        Command::Oracle(args) => oracle::cmd_oracle(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Size bound: explicit flag, then the CURVKIT_MAX_N environment variable,
/// then the library default.
pub fn resolve_max_n(flag: Option<usize>) -> Result<usize, AppError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("CURVKIT_MAX_N") {
        Ok(raw) => raw.parse::<usize>().map_err(|_| {
            AppError::new(
                EXIT_PARSE,
                format!("CURVKIT_MAX_N must be a positive integer, got `{raw}`"),
            )
        }),
        Err(_) => Ok(DEFAULT_MAX_NODES),
    }
}

pub fn load_graph(path: &Path, max_n: usize) -> Result<Graph, AppError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        AppError::new(
            EXIT_PARSE,
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    let edges = parse_edge_list(&text)?;
    Ok(build_graph(&edges, max_n)?)
}

/// Parses, validates, sorts, and deduplicates a laziness list.
pub fn parse_alphas(raw: &[String]) -> Result<Vec<Rational>, AppError> {
    let mut out = Vec::with_capacity(raw.len());
    for tok in raw {
        let a = parse_rational(tok)
            .map_err(|e| AppError::new(EXIT_PARSE, format!("bad alpha `{tok}`: {e}")))?;
        if a.is_negative() || a >= Rational::one() {
            return Err(AppError::new(
                EXIT_PARSE,
                format!("alpha {tok} is outside [0, 1)"),
            ));
        }
        out.push(a);
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(AppError::new(EXIT_PARSE, "at least one alpha is required"));
    }
    Ok(out)
}

fn cmd_compute(args: ComputeArgs) -> Result<ExitCode, AppError> {
    let max_n = resolve_max_n(args.max_n)?;
    let g = load_graph(&args.input, max_n)?;
    let alphas = parse_alphas(&args.alpha)?;
    if args.format == Format::Dot && alphas.len() != 1 {
        return Err(AppError::new(
            EXIT_PARSE,
            "dot output supports exactly one alpha",
        ));
    }

    let pairs: Vec<(usize, usize)> = if args.all_pairs {
        (0..g.n())
            .flat_map(|i| ((i + 1)..g.n()).map(move |j| (i, j)))
            .collect()
    } else {
        g.edges().iter().map(|e| (e.tail, e.head)).collect()
    };

    let per_pair: Vec<Vec<render::EdgeRow>> = pairs
        .par_iter()
        .map(|&(i, j)| edge_rows(&g, i, j, &alphas))
        .collect::<Result<_, _>>()?;
    let edges: Vec<render::EdgeRow> = per_pair.into_iter().flatten().collect();

    // Node curvature: trees have an exact closed form at any size; otherwise
    // solve the distance system, exactly by default up to the threshold.
    let float_mode = args.float || (!args.exact && !g.is_tree() && g.n() > FLOAT_AUTO_THRESHOLD);
    let nodes = if float_mode {
        let s = steinerberger_solve_float(&g)?;
        render::NodeValues::Float {
            values: s.values,
            residual: s.residual,
            solvable: s.solvable,
        }
    } else if g.is_tree() {
        let s = steinerberger_tree_closed(&g)?;
        render::NodeValues::Exact {
            values: s.values,
            residual: s.residual,
            solvable: s.solvable,
            method: "closed-form",
        }
    } else {
        let s = steinerberger_solve(&g)?;
        render::NodeValues::Exact {
            values: s.values,
            residual: s.residual,
            solvable: s.solvable,
            method: "definitional",
        }
    };

    let report = render::ComputeReport {
        n: g.n(),
        m: g.m(),
        is_tree: g.is_tree(),
        arithmetic: if float_mode { "float" } else { "exact" },
        alphas,
        edges,
        node_ids: g.original_ids().to_vec(),
        nodes,
        precision: args.precision,
    };
    let text = match args.format {
        Format::Tsv => render::render_tsv(&report),
        Format::Json => render::render_json(&report),
        Format::Dot => render::render_dot(&report),
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn edge_rows(
    g: &Graph,
    i: usize,
    j: usize,
    alphas: &[Rational],
) -> Result<Vec<render::EdgeRow>, AppError> {
    let mut out = Vec::with_capacity(alphas.len());
    if g.is_tree() {
        let lly = lly_tree_closed(g, i, j)?.lly.expect("closed route fills lly");
        for alpha in alphas {
            let orc = orc_tree_closed(g, i, j, alpha)?
                .orc
                .expect("closed route fills orc");
            out.push(render::EdgeRow {
                i: g.original_id(i),
                j: g.original_id(j),
                alpha: alpha.clone(),
                orc,
                lly: lly.clone(),
                method: "closed-form",
            });
        }
    } else {
        // No exact laziness limit exists off trees; report the monotone grid
        // estimate from the definitional route instead.
        let lly = lly_limit_estimate(g, i, j, &default_lly_grid())?.estimate;
        for alpha in alphas {
            let orc = orc_definitional(g, i, j, alpha)?
                .orc
                .expect("definitional route fills orc");
            out.push(render::EdgeRow {
                i: g.original_id(i),
                j: g.original_id(j),
                alpha: alpha.clone(),
                orc,
                lly: lly.clone(),
                method: "definitional",
            });
        }
    }
    Ok(out)
}
