//! Seeded verification suites: generate reproducible random instances, run
//! the exact checks the library exposes, and report one line per instance
//! plus a per-suite summary. Instances are derived purely from
//! `(seed, suite, instance-index)`, so runs are byte-identical regardless of
//! worker-thread count or scheduling.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, ValueEnum};
use curvkit::curvature::{
    comparison_check, degree_diameter_check, distance_identity_check,
    reverse_bonnet_myers_check, CheckStatus,
};
use curvkit::gen::{random_connected_graph, random_measure, random_tree, rng_for, Weighting};
use curvkit::graph::{Graph, Metric};
use curvkit::rational::{rat, Rational};
use curvkit::transport::{
    lazy_walk_measure, w1_lp_oracle, w1_mincost_flow, w1_tree, Measure, LP_MAX_NODES,
};
use rand::Rng;
use rayon::prelude::*;

use crate::{load_graph, parse_alphas, resolve_max_n, AppError, EXIT_PARSE, EXIT_VERIFY};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Distance identity at every node of random trees
    Identities,
    /// Equality and chain comparisons on every edge of random trees
    Comparisons,
    /// Agreement of the three transport backends
    Oracles,
    /// Degree-diameter and norm-diameter bounds
    Bounds,
    /// Everything above
    All,
}

impl Suite {
    fn name(&self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Comparisons => "comparisons",
            Suite::Oracles => "oracles",
            Suite::Bounds => "bounds",
            Suite::All => "all",
        }
    }

    fn id(&self) -> u64 {
        match self {
            Suite::Identities => 1,
            Suite::Comparisons => 2,
            Suite::Oracles => 3,
            Suite::Bounds => 4,
            Suite::All => 0,
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Optional graph file: run the suite's checks on this graph instead of
    /// seeded random instances
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    suite: Suite,
    /// Inclusive node-count range for generated instances, as `A..B`
    #[arg(long, default_value = "2..20")]
    n: String,
    /// Generated instances per suite
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Master seed; fixing it fixes every generated instance
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Laziness grid for curvature comparisons
    #[arg(long, value_delimiter = ',', default_value = "0,1/4,1/2,3/4")]
    alpha: Vec<String>,
    /// Worker threads (0 = library default)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Node-count bound (overrides CURVKIT_MAX_N and the built-in default)
    #[arg(long)]
    max_n: Option<usize>,
}

/// Tallies of one instance's checks plus its report line.
#[derive(Default)]
struct Counts {
    pass: usize,
    fail: usize,
    flagged: usize,
    skipped: usize,
    error: Option<String>,
}

impl Counts {
    fn add(&mut self, status: CheckStatus) {
        match status {
            CheckStatus::Pass => self.pass += 1,
            CheckStatus::Fail => self.fail += 1,
            CheckStatus::Flagged => self.flagged += 1,
            CheckStatus::NotApplicable => self.skipped += 1,
        }
    }

    fn agree(&mut self, ok: bool) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
        }
    }

    fn error(&mut self, message: String) {
        self.fail += 1;
        if self.error.is_none() {
            self.error = Some(message);
        }
    }

    fn line(&self, suite: &str, tag: &str, n: usize) -> String {
        let checks = self.pass + self.fail + self.flagged + self.skipped;
        let status = if self.fail > 0 { "fail" } else { "pass" };
        let mut s = format!(
            "{suite} {tag} n={n} checks={checks} pass={} flagged={} skipped={} fail={} status={status}",
            self.pass, self.flagged, self.skipped, self.fail
        );
        if let Some(e) = &self.error {
            s.push_str(&format!(" error=\"{e}\""));
        }
        s
    }
}

struct Outcome {
    line: String,
    pass: usize,
    fail: usize,
    flagged: usize,
    skipped: usize,
}

impl Outcome {
    fn from_counts(c: Counts, suite: &str, tag: &str, n: usize) -> Self {
        Outcome {
            line: c.line(suite, tag, n),
            pass: c.pass,
            fail: c.fail,
            flagged: c.flagged,
            skipped: c.skipped,
        }
    }
}

fn parse_range(raw: &str, max_n: usize) -> Result<(usize, usize), AppError> {
    let bad = || {
        AppError::new(
            EXIT_PARSE,
            format!("size range must be `A..B` with 2 <= A <= B, got `{raw}`"),
        )
    };
    let (lo, hi) = raw.split_once("..").ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo < 2 || lo > hi {
        return Err(bad());
    }
    if hi > max_n {
        return Err(AppError::new(
            EXIT_PARSE,
            format!("size range end {hi} exceeds the node bound {max_n}"),
        ));
    }
    Ok((lo, hi))
}

pub fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, AppError> {
    let max_n = resolve_max_n(args.max_n)?;
    let (lo, hi) = parse_range(&args.n, max_n)?;
    let alphas = parse_alphas(&args.alpha)?;
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::Identities,
            Suite::Comparisons,
            Suite::Oracles,
            Suite::Bounds,
        ],
        s => vec![s],
    };

    let input = match &args.input {
        Some(path) => Some(load_graph(path, max_n)?),
        None => None,
    };

    let run = || -> Result<Vec<(Suite, Vec<Outcome>)>, AppError> {
        suites
            .iter()
            .map(|&suite| {
                let outcomes = match &input {
                    Some(g) => vec![run_on_input(suite, g, &alphas)?],
                    None => (0..args.count as u64)
                        .into_par_iter()
                        .map(|k| run_generated(suite, args.seed, k, lo, hi, &alphas))
                        .collect(),
                };
                Ok((suite, outcomes))
            })
            .collect()
    };
    let results = if args.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build()
            .map_err(|e| AppError::new(EXIT_PARSE, format!("cannot build thread pool: {e}")))?;
        pool.install(run)?
    } else {
        run()?
    };

    let mut out = String::new();
    let mut total_fail = 0usize;
    let mut summaries = Vec::new();
    for (suite, outcomes) in &results {
        let (mut p, mut f, mut g, mut s) = (0, 0, 0, 0);
        for o in outcomes {
            out.push_str(&o.line);
            out.push('\n');
            p += o.pass;
            f += o.fail;
            g += o.flagged;
            s += o.skipped;
        }
        total_fail += f;
        summaries.push(format!(
            "suite={} instances={} checks={} pass={p} flagged={g} skipped={s} fail={f}",
            suite.name(),
            outcomes.len(),
            p + f + g + s
        ));
    }
    for line in summaries {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(if total_fail == 0 {
        "result: PASS\n"
    } else {
        "result: FAIL\n"
    });
    print!("{out}");
    Ok(if total_fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    })
}

fn weighting_for(k: u64) -> Weighting {
    if k.is_multiple_of(2) {
        Weighting::Unit
    } else {
        Weighting::SmallRationals
    }
}

fn run_generated(
    suite: Suite,
    seed: u64,
    k: u64,
    lo: usize,
    hi: usize,
    alphas: &[Rational],
) -> Outcome {
    let mut rng = rng_for(seed, (suite.id() << 32) | k);
    let tag = format!("instance={k}");
    match suite {
        Suite::Identities => {
            let n = rng.gen_range(lo..=hi);
            let g = random_tree(&mut rng, n, Weighting::Unit);
            let mut c = Counts::default();
            for i in 0..n {
                match distance_identity_check(&g, i) {
                    Ok(r) => c.add(r.status),
                    Err(e) => c.error(e.to_string()),
                }
            }
            Outcome::from_counts(c, suite.name(), &tag, n)
        }
        Suite::Comparisons => {
            let n = rng.gen_range(lo..=hi);
            let g = random_tree(&mut rng, n, Weighting::Unit);
            let mut c = Counts::default();
            for e in g.edges() {
                for alpha in alphas {
                    match comparison_check(&g, e.tail, e.head, alpha) {
                        Ok(r) => c.add(r.status),
                        Err(err) => c.error(err.to_string()),
                    }
                }
            }
            Outcome::from_counts(c, suite.name(), &tag, n)
        }
        Suite::Oracles => {
            // The simplex oracle is the budget: clamp sizes to stay dense-LP
            // friendly while honoring the requested range where possible.
            let o_hi = hi.min(12);
            let o_lo = lo.min(o_hi);
            let n = rng.gen_range(o_lo..=o_hi);
            let g = random_tree(&mut rng, n, weighting_for(k));
            let mut c = Counts::default();
            let mut pairs: Vec<(Measure, Measure)> = Vec::with_capacity(3);
            for _ in 0..2 {
                pairs.push((random_measure(&mut rng, &g), random_measure(&mut rng, &g)));
            }
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let alpha = rat(rng.gen_range(0..4), 4);
            pairs.push((
                lazy_walk_measure(&g, i, &alpha).expect("alpha is in range"),
                lazy_walk_measure(&g, j, &alpha).expect("alpha is in range"),
            ));
            for (mu, nu) in &pairs {
                let t = w1_tree(&g, mu, nu, Metric::Hop);
                let m = w1_mincost_flow(&g, mu, nu, Metric::Hop);
                let l = w1_lp_oracle(&g, mu, nu, Metric::Hop);
                match (t, m, l) {
                    (Ok(t), Ok(m), Ok(l)) => {
                        c.agree(t.cost == m.cost);
                        c.agree(m.cost == l.cost);
                    }
                    (t, m, l) => {
                        for r in [t.err(), m.err(), l.err()].into_iter().flatten() {
                            c.error(r.to_string());
                        }
                    }
                }
            }
            if n >= 3 {
                let extra = rng.gen_range(1..=3);
                let h = random_connected_graph(&mut rng, n.min(8), extra, weighting_for(k));
                let mu = random_measure(&mut rng, &h);
                let nu = random_measure(&mut rng, &h);
                match (
                    w1_mincost_flow(&h, &mu, &nu, Metric::Hop),
                    w1_lp_oracle(&h, &mu, &nu, Metric::Hop),
                ) {
                    (Ok(m), Ok(l)) => c.agree(m.cost == l.cost),
                    (m, l) => {
                        for r in [m.err(), l.err()].into_iter().flatten() {
                            c.error(r.to_string());
                        }
                    }
                }
            }
            Outcome::from_counts(c, suite.name(), &tag, n)
        }
        Suite::Bounds => {
            let n = rng.gen_range(lo..=hi);
            let g = random_tree(&mut rng, n, Weighting::Unit);
            let mut c = Counts::default();
            for check in [degree_diameter_check(&g), reverse_bonnet_myers_check(&g)] {
                match check {
                    Ok(r) => c.add(r.status),
                    Err(e) => c.error(e.to_string()),
                }
            }
            if !k.is_multiple_of(2) {
                let h = random_connected_graph(&mut rng, n.min(10), 2, Weighting::Unit);
                match reverse_bonnet_myers_check(&h) {
                    Ok(r) => c.add(r.status),
                    Err(e) => c.error(e.to_string()),
                }
            }
            Outcome::from_counts(c, suite.name(), &tag, n)
        }
        Suite::All => unreachable!("expanded before dispatch"),
    }
}

/// Runs one suite's checks on a user-provided graph. Precondition failures
/// (identities on a non-tree, comparisons on a weighted graph) surface as
/// hard errors with the graph-invariant exit code rather than check failures.
fn run_on_input(suite: Suite, g: &Graph, alphas: &[Rational]) -> Result<Outcome, AppError> {
    let n = g.n();
    let mut c = Counts::default();
    match suite {
        Suite::Identities => {
            for i in 0..n {
                c.add(distance_identity_check(g, i)?.status);
            }
        }
        Suite::Comparisons => {
            for e in g.edges() {
                for alpha in alphas {
                    c.add(comparison_check(g, e.tail, e.head, alpha)?.status);
                }
            }
        }
        Suite::Oracles => {
            let alpha = rat(1, 2);
            for e in g.edges() {
                let mu = lazy_walk_measure(g, e.tail, &alpha)?;
                let nu = lazy_walk_measure(g, e.head, &alpha)?;
                let m = w1_mincost_flow(g, &mu, &nu, Metric::Hop)?;
                if g.is_tree() {
                    let t = w1_tree(g, &mu, &nu, Metric::Hop)?;
                    c.agree(t.cost == m.cost);
                }
                if n <= LP_MAX_NODES {
                    let l = w1_lp_oracle(g, &mu, &nu, Metric::Hop)?;
                    c.agree(m.cost == l.cost);
                }
            }
        }
        Suite::Bounds => {
            if g.is_tree() && g.is_combinatorial() {
                c.add(degree_diameter_check(g)?.status);
            } else {
                c.skipped += 1;
            }
            c.add(reverse_bonnet_myers_check(g)?.status);
        }
        Suite::All => unreachable!("expanded before dispatch"),
    }
    Ok(Outcome::from_counts(c, suite.name(), "input", n))
}
