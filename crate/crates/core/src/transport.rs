//! Probability measures on graph nodes and exact 1-Wasserstein distances.
//!
//! Three independent evaluation routes are provided deliberately:
//!
//! * [`w1_tree`] — edge-cumulant evaluation, valid only on trees, where mass
//!   balance determines the optimal flow uniquely;
//! * [`w1_mincost_flow`] — successive-shortest-path min-cost flow, valid on
//!   any connected graph;
//! * [`w1_lp_oracle`] — the transportation linear program solved by exact
//!   simplex, slow but as close to the definition as it gets.
//!
//! Each route returns a [`TransportResult`] carrying the optimal cost and a
//! checkable certificate ([`Witness`]); [`check_witness`] re-validates a
//! certificate using nothing but the graph, the marginals, and the metric.
//! The routes share no transport logic, so agreement between them is a
//! meaningful correctness signal, and the test suites lean on exactly that.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Metric};
use crate::rational::{fmt_exact, Rational};
use crate::simplex::{self, LpError};

/// A probability measure on the nodes of a graph: nonnegative masses,
/// summing to exactly one.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    masses: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("a measure needs at least one node")]
    Empty,
    #[error("mass at node {node} is negative ({mass})")]
    NegativeMass { node: usize, mass: String },
    #[error("masses sum to {total}, expected exactly 1")]
    NotNormalized { total: String },
}

impl Measure {
    pub fn new(masses: Vec<Rational>) -> Result<Self, MeasureError> {
        if masses.is_empty() {
            return Err(MeasureError::Empty);
        }
        if let Some((node, mass)) = masses
            .iter()
            .enumerate()
            .find(|(_, m)| m.is_negative())
        {
            return Err(MeasureError::NegativeMass {
                node,
                mass: fmt_exact(mass),
            });
        }
        let total: Rational = masses.iter().sum();
        if !total.is_one() {
            return Err(MeasureError::NotNormalized {
                total: fmt_exact(&total),
            });
        }
        Ok(Measure { masses })
    }

    /// Unit mass at node `at` of an `n`-node graph.
    pub fn dirac(n: usize, at: usize) -> Self {
        assert!(at < n, "dirac node {at} out of range for {n} nodes");
        let mut masses = vec![Rational::zero(); n];
        masses[at] = Rational::one();
        Measure { masses }
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.masses[i]
    }

    /// Nodes carrying positive mass, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_positive())
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransportMethod {
    TreeFlow,
    MinCostFlow,
    LpOracle,
}

impl TransportMethod {
    pub fn label(&self) -> &'static str {
        match self {
            TransportMethod::TreeFlow => "tree",
            TransportMethod::MinCostFlow => "mcf",
            TransportMethod::LpOracle => "lp",
        }
    }
}

/// A checkable certificate for a claimed transport cost.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Signed flow per canonical edge; positive values move mass from the
    /// edge's tail to its head.
    Flow(Vec<Rational>),
    /// Sparse transport plan; row marginals recover `nu`, column marginals
    /// recover `mu`.
    Coupling(Vec<CouplingEntry>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingEntry {
    pub row: usize,
    pub col: usize,
    pub mass: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportResult {
    pub cost: Rational,
    pub witness: Witness,
    pub method: TransportMethod,
}

/// Node budget for the exact LP oracle; the dense tableau grows with the
/// product of the two supports, so this route is reserved for small graphs.
pub const LP_MAX_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransportError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("measure covers {measure} nodes but the graph has {nodes}")]
    MeasureSizeMismatch { measure: usize, nodes: usize },
    #[error("alpha = {alpha} is outside [0, 1]")]
    AlphaOutOfRange { alpha: String },
    #[error("the LP oracle is limited to {bound} nodes, this graph has {nodes}")]
    TooLargeForLp { nodes: usize, bound: usize },
    #[error("transport program unsolvable: {0} (solver bug)")]
    Lp(#[from] LpError),
    #[error("witness rejected: {reason}")]
    WitnessViolation { reason: String },
}

fn check_size(g: &Graph, m: &Measure) -> Result<(), TransportError> {
    if m.len() != g.n() {
        return Err(TransportError::MeasureSizeMismatch {
            measure: m.len(),
            nodes: g.n(),
        });
    }
    Ok(())
}

fn edge_cost(g: &Graph, edge: usize, metric: Metric) -> Rational {
    match metric {
        Metric::Hop => Rational::one(),
        Metric::Weighted => g.weight(edge).clone(),
    }
}

/// The one-step distribution of the `alpha`-lazy random walk started at `i`:
/// mass `alpha` stays at `i`, the rest spreads over the neighbors of `i`
/// proportionally to edge weight. Requires `0 <= alpha <= 1`.
pub fn lazy_walk_measure(
    g: &Graph,
    i: usize,
    alpha: &Rational,
) -> Result<Measure, TransportError> {
    g.check_node(i)?;
    if alpha.is_negative() || alpha > &Rational::one() {
        return Err(TransportError::AlphaOutOfRange {
            alpha: fmt_exact(alpha),
        });
    }
    let mut masses = vec![Rational::zero(); g.n()];
    masses[i] = alpha.clone();
    let spread = Rational::one() - alpha;
    if !spread.is_zero() {
        let dw = g.weighted_degree(i);
        for nb in g.neighbors(i) {
            masses[nb.node] = &spread * g.weight(nb.edge) / dw;
        }
    }
    debug_assert!(masses.iter().sum::<Rational>().is_one());
    Ok(Measure { masses })
}

/// For each canonical edge `(tail, head)` of a tree, the total `mu`-mass in
/// the component of `tail` after deleting that edge.
///
/// On a tree the balanced flow between two measures is unique: the flow on an
/// edge must equal the surplus of the tail-side component, i.e. the
/// difference of the two cumulant vectors. That observation is the whole
/// tree fast path.
pub fn tree_edge_cumulant(g: &Graph, mu: &Measure) -> Result<Vec<Rational>, TransportError> {
    g.require_tree()?;
    check_size(g, mu)?;
    let n = g.n();
    // Root at 0; record each node's parent link and a BFS order.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for nb in g.neighbors(x) {
            if !seen[nb.node] {
                seen[nb.node] = true;
                parent[nb.node] = Some((x, nb.edge));
                order.push(nb.node);
            }
        }
    }
    // Subtree masses by processing children before parents.
    let mut sub: Vec<Rational> = mu.masses().to_vec();
    for &v in order.iter().rev() {
        if let Some((p, _)) = parent[v] {
            let mass = sub[v].clone();
            sub[p] += mass;
        }
    }
    let cumulant = g
        .edges()
        .iter()
        .map(|e| {
            // The endpoint whose parent link is this edge is the child; the
            // tail side is either that subtree or its complement.
            if parent[e.head].map(|(_, pe)| pe) == Some(e.index) {
                Rational::one() - &sub[e.head]
            } else {
                debug_assert_eq!(parent[e.tail].map(|(_, pe)| pe), Some(e.index));
                sub[e.tail].clone()
            }
        })
        .collect();
    Ok(cumulant)
}

/// Exact 1-Wasserstein distance between two measures on a tree, via the
/// unique balanced flow. Fails on graphs with cycles.
pub fn w1_tree(
    g: &Graph,
    mu: &Measure,
    nu: &Measure,
    metric: Metric,
) -> Result<TransportResult, TransportError> {
    let kmu = tree_edge_cumulant(g, mu)?;
    let knu = tree_edge_cumulant(g, nu)?;
    let mut cost = Rational::zero();
    let mut flow = Vec::with_capacity(g.m());
    for e in g.edges() {
        let j = &kmu[e.index] - &knu[e.index];
        cost += edge_cost(g, e.index, metric) * j.abs();
        flow.push(j);
    }
    Ok(TransportResult {
        cost,
        witness: Witness::Flow(flow),
        method: TransportMethod::TreeFlow,
    })
}

/// Exact 1-Wasserstein distance on any connected graph, by min-cost flow.
///
/// Each edge carries a pair of opposed arcs with the metric cost and
/// unlimited capacity. Successive shortest paths route the surplus of `mu`
/// over `nu` to the deficits, with Dijkstra running on reduced costs under
/// node potentials so all arc costs stay nonnegative. Exact arithmetic makes
/// termination a lattice argument: every augmentation moves a positive
/// multiple of one over the common denominator of the masses.
pub fn w1_mincost_flow(
    g: &Graph,
    mu: &Measure,
    nu: &Measure,
    metric: Metric,
) -> Result<TransportResult, TransportError> {
    check_size(g, mu)?;
    check_size(g, nu)?;
    let n = g.n();
    let m = g.m();
    let cost: Vec<Rational> = (0..m).map(|e| edge_cost(g, e, metric)).collect();
    // Arc 2e runs tail -> head of edge e, arc 2e+1 the reverse.
    let arc_from = |x: usize, e: usize| -> usize {
        if g.edges()[e].tail == x {
            2 * e
        } else {
            2 * e + 1
        }
    };
    let mut flow = vec![Rational::zero(); 2 * m];
    let mut excess: Vec<Rational> = mu
        .masses()
        .iter()
        .zip(nu.masses())
        .map(|(a, b)| a - b)
        .collect();
    let mut pot = vec![Rational::zero(); n];

    while let Some(s) = (0..n).find(|&v| excess[v].is_positive()) {
        // Shortest reduced-cost distances from s over the residual graph.
        let mut dist: Vec<Option<Rational>> = vec![None; n];
        let mut parent: Vec<Option<(usize, usize, bool)>> = vec![None; n];
        let mut heap = BinaryHeap::new();
        dist[s] = Some(Rational::zero());
        heap.push(Reverse((Rational::zero(), s)));
        while let Some(Reverse((d, x))) = heap.pop() {
            if dist[x].as_ref() != Some(&d) {
                continue;
            }
            for nb in g.neighbors(x) {
                let y = nb.node;
                let fwd = arc_from(x, nb.edge);
                // Cancelling opposed flow is always cheaper than pushing
                // forward, so at most one direction ever carries flow.
                let cancels = flow[fwd ^ 1].is_positive();
                let step = if cancels {
                    -&cost[nb.edge]
                } else {
                    cost[nb.edge].clone()
                };
                let reduced = step + &pot[x] - &pot[y];
                debug_assert!(!reduced.is_negative(), "potential invariant broken");
                let nd = &d + &reduced;
                let better = match &dist[y] {
                    None => true,
                    Some(old) => nd < *old,
                };
                if better {
                    dist[y] = Some(nd.clone());
                    parent[y] = Some((x, nb.edge, cancels));
                    heap.push(Reverse((nd, y)));
                }
            }
        }
        // Nearest deficit node; ties break to the smallest index.
        let t = (0..n)
            .filter(|&v| excess[v].is_negative())
            .min_by(|&a, &b| dist[a].cmp(&dist[b]).then(a.cmp(&b)))
            .expect("balanced marginals leave a deficit while surplus remains");
        let dt = dist[t].clone().expect("graph is connected");

        let mut delta = excess[s].clone().min(-excess[t].clone());
        let mut v = t;
        while v != s {
            let (x, e, cancels) = parent[v].expect("path reaches the source");
            if cancels {
                let opposed = arc_from(x, e) ^ 1;
                if flow[opposed] < delta {
                    delta = flow[opposed].clone();
                }
            }
            v = x;
        }
        debug_assert!(delta.is_positive());
        let mut v = t;
        while v != s {
            let (x, e, cancels) = parent[v].expect("path reaches the source");
            let fwd = arc_from(x, e);
            if cancels {
                flow[fwd ^ 1] -= &delta;
            } else {
                flow[fwd] += &delta;
            }
            v = x;
        }
        excess[s] -= &delta;
        excess[t] += &delta;
        // Standard potential update; keeps reduced costs nonnegative.
        for v in 0..n {
            let dv = dist[v].clone().expect("graph is connected");
            pot[v] += if dv < dt { dv } else { dt.clone() };
        }
    }

    let mut total = Rational::zero();
    let mut net = Vec::with_capacity(m);
    for e in 0..m {
        let j = &flow[2 * e] - &flow[2 * e + 1];
        total += &cost[e] * j.abs();
        net.push(j);
    }
    Ok(TransportResult {
        cost: total,
        witness: Witness::Flow(net),
        method: TransportMethod::MinCostFlow,
    })
}

/// Exact 1-Wasserstein distance via the transportation linear program,
/// restricted to the supports of the two measures (zero marginals force the
/// corresponding plan entries to zero, so the restriction is lossless).
pub fn w1_lp_oracle(
    g: &Graph,
    mu: &Measure,
    nu: &Measure,
    metric: Metric,
) -> Result<TransportResult, TransportError> {
    check_size(g, mu)?;
    check_size(g, nu)?;
    if g.n() > LP_MAX_NODES {
        return Err(TransportError::TooLargeForLp {
            nodes: g.n(),
            bound: LP_MAX_NODES,
        });
    }
    let rows = nu.support();
    let cols = mu.support();
    let dist_rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|&r| distance_row(g, r, metric))
        .collect();
    let nr = rows.len();
    let nc = cols.len();
    let vars = nr * nc;
    let mut a = vec![vec![Rational::zero(); vars]; nr + nc];
    let mut b = Vec::with_capacity(nr + nc);
    for ri in 0..nr {
        for ci in 0..nc {
            a[ri][ri * nc + ci] = Rational::one();
        }
        b.push(nu.get(rows[ri]).clone());
    }
    for ci in 0..nc {
        for ri in 0..nr {
            a[nr + ci][ri * nc + ci] = Rational::one();
        }
        b.push(mu.get(cols[ci]).clone());
    }
    let c: Vec<Rational> = (0..vars)
        .map(|k| dist_rows[k / nc][cols[k % nc]].clone())
        .collect();
    let sol = simplex::solve_min(&a, &b, &c)?;
    let entries = sol
        .x
        .iter()
        .enumerate()
        .filter(|(_, mass)| mass.is_positive())
        .map(|(k, mass)| CouplingEntry {
            row: rows[k / nc],
            col: cols[k % nc],
            mass: mass.clone(),
        })
        .collect();
    Ok(TransportResult {
        cost: sol.objective,
        witness: Witness::Coupling(entries),
        method: TransportMethod::LpOracle,
    })
}

fn distance_row(g: &Graph, src: usize, metric: Metric) -> Vec<Rational> {
    match metric {
        Metric::Hop => g
            .hop_distances(src)
            .into_iter()
            .map(|d| Rational::from_integer(d.into()))
            .collect(),
        Metric::Weighted => g.weighted_distances(src),
    }
}

fn violation<T>(reason: String) -> Result<T, TransportError> {
    Err(TransportError::WitnessViolation { reason })
}

/// Re-derives feasibility and cost of a transport certificate from scratch,
/// using only the graph, the marginals, and the metric.
pub fn check_witness(
    g: &Graph,
    mu: &Measure,
    nu: &Measure,
    result: &TransportResult,
    metric: Metric,
) -> Result<(), TransportError> {
    check_size(g, mu)?;
    check_size(g, nu)?;
    match &result.witness {
        Witness::Flow(flow) => {
            if flow.len() != g.m() {
                return violation(format!(
                    "flow has {} entries for {} edges",
                    flow.len(),
                    g.m()
                ));
            }
            let net = g.apply_incidence(flow);
            for (v, net_v) in net.iter().enumerate() {
                let want = mu.get(v) - nu.get(v);
                if *net_v != want {
                    return violation(format!(
                        "mass balance fails at node {v}: flow divergence {} vs surplus {}",
                        fmt_exact(net_v),
                        fmt_exact(&want)
                    ));
                }
            }
            let mut total = Rational::zero();
            for e in g.edges() {
                total += edge_cost(g, e.index, metric) * flow[e.index].abs();
            }
            if total != result.cost {
                return violation(format!(
                    "claimed cost {} but the flow costs {}",
                    fmt_exact(&result.cost),
                    fmt_exact(&total)
                ));
            }
        }
        Witness::Coupling(entries) => {
            let mut row_sum = vec![Rational::zero(); g.n()];
            let mut col_sum = vec![Rational::zero(); g.n()];
            let mut dist_cache: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
            let mut total = Rational::zero();
            for entry in entries {
                if entry.row >= g.n() || entry.col >= g.n() {
                    return violation(format!(
                        "plan entry ({}, {}) out of node range",
                        entry.row, entry.col
                    ));
                }
                if entry.mass.is_negative() {
                    return violation(format!(
                        "plan entry ({}, {}) carries negative mass {}",
                        entry.row,
                        entry.col,
                        fmt_exact(&entry.mass)
                    ));
                }
                row_sum[entry.row] += &entry.mass;
                col_sum[entry.col] += &entry.mass;
                let drow = dist_cache
                    .entry(entry.row)
                    .or_insert_with(|| distance_row(g, entry.row, metric));
                total += &drow[entry.col] * &entry.mass;
            }
            for v in 0..g.n() {
                if &row_sum[v] != nu.get(v) {
                    return violation(format!(
                        "row marginal at node {v} is {}, expected {}",
                        fmt_exact(&row_sum[v]),
                        fmt_exact(nu.get(v))
                    ));
                }
                if &col_sum[v] != mu.get(v) {
                    return violation(format!(
                        "column marginal at node {v} is {}, expected {}",
                        fmt_exact(&col_sum[v]),
                        fmt_exact(mu.get(v))
                    ));
                }
            }
            if total != result.cost {
                return violation(format!(
                    "claimed cost {} but the plan costs {}",
                    fmt_exact(&result.cost),
                    fmt_exact(&total)
                ));
            }
        }
    }
    Ok(())
}
