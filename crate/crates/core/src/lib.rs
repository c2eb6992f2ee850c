//! Exact discrete curvature on weighted undirected graphs.
//!
//! Three notions of curvature are computed side by side:
//!
//! - **Ollivier-Ricci** `orc(i, j; alpha)`: one minus the ratio of the
//!   1-Wasserstein distance between the lazy random walk measures at `i` and
//!   `j` to the graph distance between `i` and `j`.
//! - **Lin-Lu-Yau** `lly(i, j)`: the limit of `orc(i, j; alpha) / (1 - alpha)`
//!   as the laziness `alpha` approaches one.
//! - **Steinerberger** `ks(i)`: the node vector solving `D k = n 1`, where
//!   `D` is the hop-count distance matrix.
//!
//! On trees each of these has an exact closed form depending only on local
//! degree data; on general graphs they are evaluated definitionally (optimal
//! transport for the first two, exact linear algebra for the third). Both
//! routes are implemented in full and cross-validated against each other: the
//! closed forms check the solvers, and the solvers check the closed forms.
//!
//! All arithmetic is exact: values are arbitrary-precision rationals
//! end-to-end, so every equality in the test suites is literal equality, not
//! a tolerance check. Distances are hop counts by default even on weighted
//! graphs (weights enter through the walk measures); a weighted shortest-path
//! metric is available behind [`graph::Metric`] for the weighted variants of
//! the tree identities.
//!
//! The crate is organized around the data flow:
//!
//! - [`graph`]: validated graphs with a canonical edge orientation, BFS
//!   distances, and tree structure (geodesics, subtree sides, incidence).
//! - [`transport`]: probability measures, lazy walk measures, and three
//!   independent 1-Wasserstein evaluators (tree cumulant flow, min-cost flow,
//!   and an LP oracle).
//! - [`curvature`]: the curvature operations plus checkable forms of the
//!   identities and inequalities that relate them.
//! - [`gen`]: seeded random trees, graphs, and measures for the verification
//!   suites.
//! - [`rational`], [`linalg`], [`simplex`]: exact arithmetic support.

pub mod curvature;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod gen;
pub mod graph;
pub mod linalg;
pub mod rational;
pub mod simplex;
pub mod transport;

pub use graph::{build_graph, build_unit_graph, parse_edge_list, Graph, Metric};
pub use rational::Rational;
