//! The three curvature engines and machine checks for their interrelations.
//!
//! Edge curvatures come in two independently implemented routes that must
//! agree exactly:
//!
//! * definitional — build the lazy walk measures and pay for an optimal
//!   transport solve ([`orc_definitional`]);
//! * closed form — evaluate the tree formulas directly from degrees, weights,
//!   and the geodesic ([`orc_tree_closed`], [`lly_tree_closed`]).
//!
//! Node curvature assigns each node the entry of a vector `k` solving
//! `D k = n 1` against the hop distance matrix `D`, in the minimal-norm
//! least-squares sense when the system is singular ([`steinerberger_solve`]),
//! with a closed form on trees ([`steinerberger_tree_closed`]).
//!
//! The `*_check` functions evaluate, with exact arithmetic, the relations the
//! library promises between these quantities (equality of the three
//! curvatures on tree edges, inequality chains, a degree-diameter bound, a
//! norm-diameter bound, and a distance identity) and report both sides as
//! witnesses in a [`TheoremReport`].

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Metric};
use crate::linalg;
use crate::rational::{fmt_exact, rat, Rational};
use crate::transport::{
    self, lazy_walk_measure, TransportError, TransportMethod,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Definitional,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Definitional => "definitional",
        }
    }
}

/// Curvature attached to a node pair. `alpha`, `orc`, and `lly` are filled
/// by whichever operation produced the value; a lazy-walk curvature always
/// carries its `alpha`, the lazy-walk limit carries none.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCurvature {
    pub i: usize,
    pub j: usize,
    pub alpha: Option<Rational>,
    pub orc: Option<Rational>,
    pub lly: Option<Rational>,
    pub method: Method,
}

/// Node curvature vector together with the exact max-norm residual of
/// `D k - n 1` and the verdict on whether the system was solved exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeCurvature {
    pub values: Vec<Rational>,
    pub residual: Rational,
    pub solvable: bool,
}

/// Floating-point counterpart of [`NodeCurvature`] for graphs too large for
/// exact elimination.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatNodeCurvature {
    pub values: Vec<f64>,
    pub residual: f64,
    pub solvable: bool,
}

/// Residual tolerance per node for the float route: a float solve counts as
/// exact when the max-norm residual is at most this times the node count.
pub const FLOAT_RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A strict inequality held only with equality; reported, not failed.
    Flagged,
    NotApplicable,
}

impl CheckStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Flagged => "flagged",
            CheckStatus::NotApplicable => "not-applicable",
        }
    }
}

/// Outcome of one exact property check: which property family ran, on what
/// instance, the predicate that was evaluated, and the evaluated quantities
/// that decide it.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub check: &'static str,
    pub instance: String,
    pub predicate: String,
    pub status: CheckStatus,
    pub witnesses: Vec<(&'static str, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurvatureError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error("curvature between node {0} and itself is undefined")]
    SameNode(usize),
    #[error("alpha = {alpha} is outside [0, 1)")]
    AlphaOutOfRange { alpha: String },
    #[error("{op} requires unit edge weights")]
    NotCombinatorial { op: &'static str },
    #[error("invalid alpha grid: {reason}")]
    InvalidGrid { reason: String },
    #[error("internal inconsistency: {reason}")]
    InternalInconsistency { reason: String },
}

fn validate_pair(g: &Graph, i: usize, j: usize) -> Result<(), CurvatureError> {
    g.check_node(i)?;
    g.check_node(j)?;
    if i == j {
        return Err(CurvatureError::SameNode(i));
    }
    Ok(())
}

fn validate_alpha(alpha: &Rational) -> Result<(), CurvatureError> {
    if alpha.is_negative() || alpha >= &Rational::one() {
        return Err(CurvatureError::AlphaOutOfRange {
            alpha: fmt_exact(alpha),
        });
    }
    Ok(())
}

/// Lazy-walk edge curvature straight from its definition:
/// `1 - W1(m_i, m_j) / d(i, j)` with hop distance. Uses the tree flow on
/// trees and min-cost flow otherwise.
pub fn orc_definitional(
    g: &Graph,
    i: usize,
    j: usize,
    alpha: &Rational,
) -> Result<EdgeCurvature, CurvatureError> {
    let method = if g.is_tree() {
        TransportMethod::TreeFlow
    } else {
        TransportMethod::MinCostFlow
    };
    orc_via_transport(g, i, j, alpha, method)
}

/// Definitional lazy-walk curvature with an explicit choice of transport
/// backend, for cross-validating the backends against each other.
pub fn orc_via_transport(
    g: &Graph,
    i: usize,
    j: usize,
    alpha: &Rational,
    transport: TransportMethod,
) -> Result<EdgeCurvature, CurvatureError> {
    validate_pair(g, i, j)?;
    validate_alpha(alpha)?;
    let mi = lazy_walk_measure(g, i, alpha)?;
    let mj = lazy_walk_measure(g, j, alpha)?;
    let moved = match transport {
        TransportMethod::TreeFlow => transport::w1_tree(g, &mi, &mj, Metric::Hop)?,
        TransportMethod::MinCostFlow => {
            transport::w1_mincost_flow(g, &mi, &mj, Metric::Hop)?
        }
        TransportMethod::LpOracle => transport::w1_lp_oracle(g, &mi, &mj, Metric::Hop)?,
    };
    let d = g.pair_distance(i, j, Metric::Hop);
    let orc = Rational::one() - moved.cost / d;
    Ok(EdgeCurvature {
        i,
        j,
        alpha: Some(alpha.clone()),
        orc: Some(orc),
        lly: None,
        method: Method::Definitional,
    })
}

/// Shared geodesic-endpoint term of the tree closed forms: at each endpoint,
/// neighbors off the geodesic count positively and the geodesic neighbor
/// negatively, weighted by edge weight over weighted degree. For adjacent
/// pairs the geodesic is the connecting edge itself.
fn geodesic_end_sum(g: &Graph, path: &[usize]) -> Rational {
    let i = path[0];
    let j = *path.last().expect("geodesic has at least two nodes");
    let first = g
        .edge_between(i, path[1])
        .expect("consecutive geodesic nodes are adjacent");
    let last = g
        .edge_between(path[path.len() - 2], j)
        .expect("consecutive geodesic nodes are adjacent");
    let dwi = g.weighted_degree(i);
    let dwj = g.weighted_degree(j);
    let two = rat(2, 1);
    (dwi - &two * g.weight(first)) / dwi + (dwj - two * g.weight(last)) / dwj
}

/// Closed-form lazy-walk curvature on a weighted tree.
///
/// Adjacent pairs use a single absolute-value expression valid for every
/// `alpha` in `[0, 1)`: the term inside `|..|` is the flow across the
/// connecting edge, which changes sign once the walk is lazy enough to keep
/// the edge's own mass exchange below its share. Non-adjacent pairs scale
/// the geodesic-endpoint term by `-(1 - alpha) / d(i, j)`.
pub fn orc_tree_closed(
    g: &Graph,
    i: usize,
    j: usize,
    alpha: &Rational,
) -> Result<EdgeCurvature, CurvatureError> {
    g.require_tree()?;
    validate_pair(g, i, j)?;
    validate_alpha(alpha)?;
    let keep = Rational::one() - alpha;
    let orc = if let Some(e) = g.edge_between(i, j) {
        let w = g.weight(e);
        let dwi = g.weighted_degree(i);
        let dwj = g.weighted_degree(j);
        let spread_i = &keep * &(dwi - w) / dwi;
        let spread_j = &keep * &(dwj - w) / dwj;
        let across = (Rational::one() - &keep * &(w / dwi + w / dwj)).abs();
        Rational::one() - spread_i - spread_j - across
    } else {
        let path = g.geodesic(i, j)?;
        let d = rat((path.len() - 1) as i64, 1);
        -keep * geodesic_end_sum(g, &path) / d
    };
    Ok(EdgeCurvature {
        i,
        j,
        alpha: Some(alpha.clone()),
        orc: Some(orc),
        lly: None,
        method: Method::ClosedForm,
    })
}

/// Closed-form lazy-walk limit curvature on a weighted tree: the
/// geodesic-endpoint term scaled by `-1 / d(i, j)`, for any node pair.
pub fn lly_tree_closed(
    g: &Graph,
    i: usize,
    j: usize,
) -> Result<EdgeCurvature, CurvatureError> {
    g.require_tree()?;
    validate_pair(g, i, j)?;
    let path = g.geodesic(i, j)?;
    let d = rat((path.len() - 1) as i64, 1);
    let lly = -geodesic_end_sum(g, &path) / d;
    Ok(EdgeCurvature {
        i,
        j,
        alpha: None,
        orc: None,
        lly: Some(lly),
        method: Method::ClosedForm,
    })
}

/// The grid estimate of the lazy-walk limit curvature.
#[derive(Debug, Clone, PartialEq)]
pub struct LlyLimitEstimate {
    /// Ratio at the last grid point; on trees this equals the closed form
    /// exactly once the grid reaches 1/2.
    pub estimate: Rational,
    /// The ratio `orc(alpha) / (1 - alpha)` at each grid point.
    pub sequence: Vec<Rational>,
}

/// Default grid for [`lly_limit_estimate`]: dyadic points closing in on 1.
pub fn default_lly_grid() -> Vec<Rational> {
    vec![rat(1, 2), rat(3, 4), rat(7, 8), rat(15, 16), rat(31, 32)]
}

/// Estimates the lazy-walk limit curvature on any connected graph by
/// evaluating `orc(alpha) / (1 - alpha)` over a strictly increasing grid.
/// The ratio is non-decreasing in `alpha`; a decrease is reported as an
/// internal error since it can only come from a transport bug. The estimate
/// is a lower bound for the true limit, exact on trees for grids ending at
/// or above 1/2.
pub fn lly_limit_estimate(
    g: &Graph,
    i: usize,
    j: usize,
    grid: &[Rational],
) -> Result<LlyLimitEstimate, CurvatureError> {
    validate_pair(g, i, j)?;
    if grid.is_empty() {
        return Err(CurvatureError::InvalidGrid {
            reason: "grid is empty".into(),
        });
    }
    for pair in grid.windows(2) {
        if pair[0] >= pair[1] {
            return Err(CurvatureError::InvalidGrid {
                reason: format!(
                    "grid is not strictly increasing at {} >= {}",
                    fmt_exact(&pair[0]),
                    fmt_exact(&pair[1])
                ),
            });
        }
    }
    if let Some(bad) = grid
        .iter()
        .find(|a| a.is_negative() || *a >= &Rational::one())
    {
        return Err(CurvatureError::InvalidGrid {
            reason: format!("alpha = {} is outside [0, 1)", fmt_exact(bad)),
        });
    }
    let mut sequence = Vec::with_capacity(grid.len());
    for alpha in grid {
        let orc = orc_definitional(g, i, j, alpha)?
            .orc
            .expect("definitional route always fills orc");
        sequence.push(orc / (Rational::one() - alpha));
    }
    for (k, pair) in sequence.windows(2).enumerate() {
        if pair[1] < pair[0] {
            return Err(CurvatureError::InternalInconsistency {
                reason: format!(
                    "ratio decreased from {} to {} between alpha = {} and {}",
                    fmt_exact(&pair[0]),
                    fmt_exact(&pair[1]),
                    fmt_exact(&grid[k]),
                    fmt_exact(&grid[k + 1])
                ),
            });
        }
    }
    let estimate = sequence.last().expect("grid is nonempty").clone();
    Ok(LlyLimitEstimate { estimate, sequence })
}

/// Closed-form node curvature on trees: `n (2 - deg(i)) / (n - 1)`.
/// Edge weights do not enter — the defining system uses hop distances.
pub fn steinerberger_tree_closed(g: &Graph) -> Result<NodeCurvature, CurvatureError> {
    g.require_tree()?;
    let n = g.n() as i64;
    let values = (0..g.n())
        .map(|v| rat(n * (2 - g.degree(v) as i64), n - 1))
        .collect();
    Ok(NodeCurvature {
        values,
        residual: Rational::zero(),
        solvable: true,
    })
}

/// Weighted-metric variant of the tree closed form: when the defining system
/// is posed against the weighted shortest-path matrix instead, the solution
/// on a tree is the same vector rescaled by total weight,
/// `2 n (2 - deg(i)) / vol_w` with `vol_w` the sum of weighted degrees.
pub fn steinerberger_tree_closed_weighted(
    g: &Graph,
) -> Result<NodeCurvature, CurvatureError> {
    g.require_tree()?;
    let n = g.n() as i64;
    let vol = g.volume();
    let values = (0..g.n())
        .map(|v| rat(2 * n * (2 - g.degree(v) as i64), 1) / &vol)
        .collect();
    Ok(NodeCurvature {
        values,
        residual: Rational::zero(),
        solvable: true,
    })
}

/// Node curvature on any connected graph: the minimal-norm least-squares
/// solution of `D k = n 1` over the hop distance matrix, solved exactly.
/// `solvable` reports whether the system is consistent (residual zero); on
/// trees the matrix is nonsingular and this equals the closed form.
pub fn steinerberger_solve(g: &Graph) -> Result<NodeCurvature, CurvatureError> {
    let n = g.n();
    let dm = g.distance_matrix();
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| dm.row(i).iter().map(|&d| BigInt::from(d)).collect())
        .collect();
    let b = vec![BigInt::from(n); n];
    let solve = linalg::solve_symmetric_least_squares(&a, &b).map_err(|e| {
        CurvatureError::InternalInconsistency {
            reason: format!("distance system solve failed: {e}"),
        }
    })?;
    let residual = solve
        .residual
        .iter()
        .map(|r| r.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let solvable = residual.is_zero();
    Ok(NodeCurvature {
        values: solve.values,
        residual,
        solvable,
    })
}

/// Floating-point route for node curvature on graphs too large for exact
/// elimination: SVD least squares with `solvable` meaning the max-norm
/// residual stays within [`FLOAT_RESIDUAL_TOL`] per node.
pub fn steinerberger_solve_float(g: &Graph) -> Result<FloatNodeCurvature, CurvatureError> {
    let n = g.n();
    let dm = g.distance_matrix();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| dm.row(i).iter().map(|&d| d as f64).collect())
        .collect();
    let b = vec![n as f64; n];
    let (values, residual) = linalg::solve_least_squares_f64(&a, &b);
    Ok(FloatNodeCurvature {
        values,
        residual,
        solvable: residual <= FLOAT_RESIDUAL_TOL * n as f64,
    })
}

fn instance_pair(g: &Graph, i: usize, j: usize, alpha: Option<&Rational>) -> String {
    match alpha {
        Some(a) => format!(
            "n={}, edge {{{}, {}}}, alpha={}",
            g.n(),
            g.original_id(i),
            g.original_id(j),
            fmt_exact(a)
        ),
        None => format!(
            "n={}, pair {{{}, {}}}",
            g.n(),
            g.original_id(i),
            g.original_id(j)
        ),
    }
}

/// Exact per-node check of the tree distance identity
/// `2 sum_j d(i,j) = vol/2 + sum_j d(i,j) deg(j)` (hop distances,
/// combinatorial degrees; for a tree `vol/2 = n - 1`).
pub fn distance_identity_check(g: &Graph, i: usize) -> Result<TheoremReport, CurvatureError> {
    g.require_tree()?;
    g.check_node(i)?;
    if !g.is_combinatorial() {
        return Err(CurvatureError::NotCombinatorial {
            op: "the distance identity check",
        });
    }
    let dist = g.hop_distances(i);
    let mut lhs: u128 = 0;
    let mut weighted: u128 = 0;
    for (v, &d) in dist.iter().enumerate() {
        lhs += 2 * d as u128;
        weighted += d as u128 * g.degree(v) as u128;
    }
    let rhs = (g.n() as u128 - 1) + weighted;
    Ok(TheoremReport {
        check: "tree-distance-identity",
        instance: format!("n={}, node {}", g.n(), g.original_id(i)),
        predicate: "2*sum_j d(i,j) == vol/2 + sum_j d(i,j)*deg(j)".into(),
        status: if lhs == rhs {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        witnesses: vec![
            ("left", rat(lhs as i64, 1)),
            ("right", rat(rhs as i64, 1)),
        ],
    })
}

/// Weighted-metric variant of the distance identity: with shortest paths
/// measured by total edge weight, `2 sum_j D(i,j) = vol_w/2 + sum_j D(i,j)
/// deg(j)` still holds on trees (degrees stay combinatorial).
pub fn distance_identity_check_weighted(
    g: &Graph,
    i: usize,
) -> Result<TheoremReport, CurvatureError> {
    g.require_tree()?;
    g.check_node(i)?;
    let dist = g.weighted_distances(i);
    let mut lhs = Rational::zero();
    let mut weighted = Rational::zero();
    for (v, d) in dist.iter().enumerate() {
        lhs += rat(2, 1) * d;
        weighted += rat(g.degree(v) as i64, 1) * d;
    }
    let rhs = g.volume() / rat(2, 1) + weighted;
    Ok(TheoremReport {
        check: "tree-distance-identity-weighted",
        instance: format!("n={}, node {}", g.n(), g.original_id(i)),
        predicate: "2*sum_j D(i,j) == vol_w/2 + sum_j D(i,j)*deg(j)".into(),
        status: if lhs == rhs {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        witnesses: vec![("left", lhs), ("right", rhs)],
    })
}

/// Exact check of the curvature comparison statements on one tree edge:
///
/// * whenever `1/deg(i) + 1/deg(j) <= 1/(1 - alpha)`, the three curvatures
///   collapse into the equality
///   `orc = (1-alpha)*lly = (1-alpha)*(n-1)/n*(ks_i/deg(i) + ks_j/deg(j))`;
/// * for `n >= 3`, non-leaf edges satisfy the chain
///   `0 >= orc >= lly > max_x (4/deg(x))*(ks_x - 1/2)` at every alpha (a tie
///   in the strict comparison is flagged rather than failed);
/// * for `n >= 3`, leaf edges with `1 + 1/deg(inner) <= 1/(1 - alpha)`
///   satisfy `0 <= orc <= lly <= (8/3)*ks_leaf`.
///
/// When no hypothesis applies the report is marked not-applicable.
pub fn comparison_check(
    g: &Graph,
    i: usize,
    j: usize,
    alpha: &Rational,
) -> Result<TheoremReport, CurvatureError> {
    g.require_tree()?;
    validate_pair(g, i, j)?;
    validate_alpha(alpha)?;
    if !g.is_combinatorial() {
        return Err(CurvatureError::NotCombinatorial {
            op: "the curvature comparison check",
        });
    }
    if g.edge_between(i, j).is_none() {
        return Err(CurvatureError::Graph(GraphError::NoSuchEdge(
            g.original_id(i) as usize,
            g.original_id(j) as usize,
        )));
    }
    let n = g.n();
    let keep = Rational::one() - alpha;
    let orc = orc_tree_closed(g, i, j, alpha)?
        .orc
        .expect("closed route fills orc");
    let lly = lly_tree_closed(g, i, j)?
        .lly
        .expect("closed route fills lly");
    let ks = steinerberger_tree_closed(g)?.values;
    let (di, dj) = (g.degree(i), g.degree(j));
    let inv = |d: usize| rat(1, d as i64);

    let mut witnesses = vec![
        ("orc", orc.clone()),
        ("lly", lly.clone()),
        ("ks_i", ks[i].clone()),
        ("ks_j", ks[j].clone()),
    ];
    let mut predicates: Vec<&'static str> = Vec::new();
    let mut applicable = false;
    let mut failed = false;
    let mut flagged = false;

    if inv(di) + inv(dj) <= Rational::one() / &keep {
        applicable = true;
        predicates.push("orc == (1-a)*lly == (1-a)*(n-1)/n*(ks_i/deg_i + ks_j/deg_j)");
        let via_lly = &keep * &lly;
        let via_ks = &keep
            * rat(n as i64 - 1, n as i64)
            * (&ks[i] / rat(di as i64, 1) + &ks[j] / rat(dj as i64, 1));
        if orc != via_lly || orc != via_ks {
            failed = true;
        }
        witnesses.push(("equality-via-lly", via_lly));
        witnesses.push(("equality-via-ks", via_ks));
    }

    if n >= 3 {
        if di >= 2 && dj >= 2 {
            applicable = true;
            predicates.push("0 >= orc >= lly > max_x (4/deg_x)*(ks_x - 1/2)");
            let floor_i = rat(4, di as i64) * (&ks[i] - rat(1, 2));
            let floor_j = rat(4, dj as i64) * (&ks[j] - rat(1, 2));
            let floor = floor_i.max(floor_j);
            if orc.is_positive() || orc < lly || lly < floor {
                failed = true;
            } else if lly == floor {
                flagged = true;
            }
            witnesses.push(("chain-floor", floor));
        } else {
            let (leaf, inner) = if di == 1 { (i, j) } else { (j, i) };
            let inner_deg = g.degree(inner);
            if Rational::one() + inv(inner_deg) <= Rational::one() / &keep {
                applicable = true;
                predicates.push("0 <= orc <= lly <= (8/3)*ks_leaf");
                let ceiling = rat(8, 3) * &ks[leaf];
                if orc.is_negative() || lly < orc || ceiling < lly {
                    failed = true;
                }
                witnesses.push(("chain-ceiling", ceiling));
            }
        }
    }

    let status = if !applicable {
        CheckStatus::NotApplicable
    } else if failed {
        CheckStatus::Fail
    } else if flagged {
        CheckStatus::Flagged
    } else {
        CheckStatus::Pass
    };
    Ok(TheoremReport {
        check: "edge-curvature-comparison",
        instance: instance_pair(g, i, j, Some(alpha)),
        predicate: if predicates.is_empty() {
            "no case hypothesis holds for this edge and alpha".into()
        } else {
            predicates.join("; ")
        },
        status,
        witnesses,
    })
}

/// Exact check of the tree bound `diameter >= (n-1) / sum_i |2 - deg(i)|`.
pub fn degree_diameter_check(g: &Graph) -> Result<TheoremReport, CurvatureError> {
    g.require_tree()?;
    if !g.is_combinatorial() {
        return Err(CurvatureError::NotCombinatorial {
            op: "the degree-diameter check",
        });
    }
    let n = g.n() as i64;
    let diameter = g.diameter() as i64;
    let spread: i64 = (0..g.n()).map(|v| (2 - g.degree(v) as i64).abs()).sum();
    debug_assert!(spread > 0, "a tree has at least two leaves");
    let bound = rat(n - 1, spread);
    let lhs = rat(diameter, 1);
    Ok(TheoremReport {
        check: "tree-degree-diameter",
        instance: format!("n={}", g.n()),
        predicate: "diameter >= (n-1)/sum_i |2-deg(i)|".into(),
        status: if lhs >= bound {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        witnesses: vec![("diameter", lhs), ("bound", bound)],
    })
}

/// Exact check of the norm bound `|k|_1 >= n / diameter` for the node
/// curvature, applicable only when the defining system is consistent; an
/// inconsistent system yields a not-applicable report carrying the residual.
pub fn reverse_bonnet_myers_check(g: &Graph) -> Result<TheoremReport, CurvatureError> {
    let solved = if g.is_tree() {
        steinerberger_tree_closed(g)?
    } else {
        steinerberger_solve(g)?
    };
    let instance = format!("n={}, m={}", g.n(), g.m());
    if !solved.solvable {
        return Ok(TheoremReport {
            check: "curvature-norm-diameter-bound",
            instance,
            predicate: "|k|_1 >= n/diameter (system must be consistent)".into(),
            status: CheckStatus::NotApplicable,
            witnesses: vec![("residual", solved.residual)],
        });
    }
    let norm = solved
        .values
        .iter()
        .fold(Rational::zero(), |acc, v| acc + v.abs());
    let bound = rat(g.n() as i64, g.diameter() as i64);
    Ok(TheoremReport {
        check: "curvature-norm-diameter-bound",
        instance,
        predicate: "|k|_1 >= n/diameter".into(),
        status: if norm >= bound {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        witnesses: vec![("norm", norm), ("bound", bound)],
    })
}
