//! One-shot optimal-transport queries: read two probability measures from
//! JSON files, compute their Wasserstein-1 distance with each requested
//! backend, and optionally print the optimizer as a witness.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, ValueEnum};
use curvkit::graph::{Graph, Metric};
use curvkit::rational::{fmt_exact, parse_rational, Rational};
use curvkit::transport::{
    check_witness, w1_lp_oracle, w1_mincost_flow, w1_tree, Measure, TransportMethod, Witness,
    LP_MAX_NODES,
};
use num::{BigInt, Zero};
use serde_json::{json, Value};

use crate::{load_graph, render, resolve_max_n, AppError, EXIT_MEASURE, EXIT_PARSE, EXIT_VERIFY};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    /// Every backend that applies to the input (tree flow on trees, min-cost
    /// flow always, simplex up to its size bound)
    All,
    /// Cumulant flow along tree edges
    Tree,
    /// Successive-shortest-path min-cost flow
    Mcf,
    /// Dense exact simplex on the coupling polytope
    Lp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricChoice {
    /// Shortest-path distance counting edges
    Hop,
    /// Shortest-path distance summing edge weights
    Weighted,
}

#[derive(Args)]
pub struct OracleArgs {
    /// Graph file (one `u v [weight]` edge per line)
    input: PathBuf,
    /// Source measure: JSON array of exact masses, one per node
    #[arg(long)]
    mu: PathBuf,
    /// Target measure: JSON array of exact masses, one per node
    #[arg(long)]
    nu: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodChoice::All)]
    method: MethodChoice,
    #[arg(long, value_enum, default_value_t = MetricChoice::Hop)]
    metric: MetricChoice,
    /// Print the optimal flow or coupling after each cost line
    #[arg(long)]
    emit_witness: bool,
    /// Significant digits in decimal renderings
    #[arg(long, default_value_t = 6)]
    precision: usize,
    /// Node-count bound (overrides CURVKIT_MAX_N and the built-in default)
    #[arg(long)]
    max_n: Option<usize>,
}

pub fn cmd_oracle(args: OracleArgs) -> Result<ExitCode, AppError> {
    let max_n = resolve_max_n(args.max_n)?;
    let g = load_graph(&args.input, max_n)?;
    let mu = load_measure(&args.mu, &g)?;
    let nu = load_measure(&args.nu, &g)?;
    let metric = match args.metric {
        MetricChoice::Hop => Metric::Hop,
        MetricChoice::Weighted => Metric::Weighted,
    };
    let methods: Vec<TransportMethod> = match args.method {
        MethodChoice::All => {
            let mut v = Vec::new();
            if g.is_tree() {
                v.push(TransportMethod::TreeFlow);
            }
            v.push(TransportMethod::MinCostFlow);
            if g.n() <= LP_MAX_NODES {
                v.push(TransportMethod::LpOracle);
            }
            v
        }
        MethodChoice::Tree => vec![TransportMethod::TreeFlow],
        MethodChoice::Mcf => vec![TransportMethod::MinCostFlow],
        MethodChoice::Lp => vec![TransportMethod::LpOracle],
    };

    let mut out = String::new();
    let mut costs: Vec<Rational> = Vec::new();
    for method in methods {
        let result = match method {
            TransportMethod::TreeFlow => w1_tree(&g, &mu, &nu, metric)?,
            TransportMethod::MinCostFlow => w1_mincost_flow(&g, &mu, &nu, metric)?,
            TransportMethod::LpOracle => w1_lp_oracle(&g, &mu, &nu, metric)?,
        };
        check_witness(&g, &mu, &nu, &result, metric)?;
        out.push_str(&format!(
            "method={} cost={}\n",
            method.label(),
            render::cell(&result.cost, args.precision)
        ));
        if args.emit_witness {
            out.push_str(&format!("witness={}\n", witness_json(&g, &result.witness)));
        }
        costs.push(result.cost);
    }
    if costs.len() >= 2 {
        let agree = costs.windows(2).all(|w| w[0] == w[1]);
        out.push_str(if agree {
            "agreement: exact\n"
        } else {
            "agreement: MISMATCH\n"
        });
        if !agree {
            print!("{out}");
            return Ok(ExitCode::from(EXIT_VERIFY));
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

/// Reads a measure file: a JSON array with one entry per node, each entry an
/// integer or a string holding an exact rational like "1/3" or "0.25".
fn load_measure(path: &Path, g: &Graph) -> Result<Measure, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| AppError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let entries = value.as_array().ok_or_else(|| {
        AppError::new(
            EXIT_PARSE,
            format!("{}: measure must be a JSON array of masses", path.display()),
        )
    })?;
    let mut masses = Vec::with_capacity(entries.len());
    for (idx, entry) in entries.iter().enumerate() {
        let mass = match entry {
            Value::String(s) => parse_rational(s).map_err(|e| {
                AppError::new(
                    EXIT_PARSE,
                    format!("{}: entry {idx}: {e}", path.display()),
                )
            })?,
            Value::Number(num) => match num.as_i64() {
                Some(int) => Rational::from_integer(BigInt::from(int)),
                None => {
                    return Err(AppError::new(
                        EXIT_PARSE,
                        format!(
                            "{}: entry {idx}: write non-integer masses as strings \
                             (e.g. \"1/3\") so they stay exact",
                            path.display()
                        ),
                    ))
                }
            },
            _ => {
                return Err(AppError::new(
                    EXIT_PARSE,
                    format!(
                        "{}: entry {idx}: masses must be integers or rational strings",
                        path.display()
                    ),
                ))
            }
        };
        masses.push(mass);
    }
    if masses.len() != g.n() {
        return Err(AppError::new(
            EXIT_MEASURE,
            format!(
                "{}: measure has {} entries but the graph has {} nodes",
                path.display(),
                masses.len(),
                g.n()
            ),
        ));
    }
    Ok(Measure::new(masses)?)
}

/// Renders a witness as one line of JSON. Flows list signed mass per edge in
/// the graph's tail-to-head orientation; couplings list individual moves.
fn witness_json(g: &Graph, witness: &Witness) -> String {
    let items: Vec<Value> = match witness {
        Witness::Flow(flow) => g
            .edges()
            .iter()
            .zip(flow)
            .filter(|(_, f)| !f.is_zero())
            .map(|(e, f)| {
                json!({
                    "edge": [g.original_id(e.tail), g.original_id(e.head)],
                    "flow": fmt_exact(f),
                })
            })
            .collect(),
        Witness::Coupling(entries) => entries
            .iter()
            .map(|entry| {
                json!({
                    "from": g.original_id(entry.col),
                    "to": g.original_id(entry.row),
                    "mass": fmt_exact(&entry.mass),
                })
            })
            .collect(),
    };
    serde_json::to_string(&items).expect("witness serializes")
}
