//! Weighted undirected graphs with a canonical edge orientation.
//!
//! Construction is the validation boundary: a [`Graph`] is always simple,
//! connected, positively weighted, and within the configured size bound, so
//! downstream operations never re-check those invariants. Nodes are relabeled
//! to `0..n-1` in sorted order of their original ids (kept for output), which
//! also makes the labeling independent of edge-list order.
//!
//! Every edge is stored oriented `tail < head`, and edges are sorted by
//! `(tail, head)`; the position of an edge in that order is its index. All
//! edge-indexed vectors in this crate (flows, cumulants) refer to exactly this
//! enumeration, which is what makes their bytes reproducible across runs.
//!
//! Distances are hop counts regardless of weights. [`Metric::Weighted`]
//! switches to least-total-weight paths; it exists to support the weighted
//! variants of the tree identities and is not used by default.

use crate::rational::{parse_rational, Rational};
use num::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::collections::VecDeque;
use thiserror::Error;

/// Default upper bound on node count (an `n x n` distance matrix must fit).
pub const DEFAULT_MAX_NODES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    /// Shortest path by hop count (the default everywhere).
    #[default]
    Hop,
    /// Shortest path by total edge weight.
    Weighted,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("self-loop at node {0}")]
    SelfLoop(u64),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u64, u64),
    #[error("non-positive weight {weight} on edge {{{u}, {v}}}")]
    NonpositiveWeight { u: u64, v: u64, weight: String },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("graph has {nodes} nodes, exceeding the size bound {bound}")]
    TooLarge { nodes: usize, bound: usize },
    #[error("no edge {{{0}, {1}}} in graph")]
    NoSuchEdge(usize, usize),
    #[error("node {node} out of range for graph on {nodes} nodes")]
    NodeOutOfRange { node: usize, nodes: usize },
    #[error("operation requires a tree, but graph has {edges} edges on {nodes} nodes")]
    NotATree { nodes: usize, edges: usize },
}

/// An edge in canonical orientation (`tail < head` in internal labels).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedEdge {
    pub tail: usize,
    pub head: usize,
    /// Position of this edge in the canonical `(tail, head)`-sorted order.
    pub index: usize,
}

/// Adjacency entry: neighboring node plus the index of the connecting edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbor {
    pub node: usize,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<OrientedEdge>,
    weights: Vec<Rational>,
    adj: Vec<Vec<Neighbor>>,
    degree: Vec<usize>,
    weighted_degree: Vec<Rational>,
    original_ids: Vec<u64>,
    unit_weights: bool,
}

/// Builds a validated graph from weighted edges over arbitrary `u64` node ids.
///
/// Rejects empty input, self-loops, duplicate edges (in either orientation),
/// non-positive weights, disconnected graphs, and graphs larger than
/// `max_nodes`. Error messages report original node ids.
pub fn build_graph(
    edges: &[(u64, u64, Rational)],
    max_nodes: usize,
) -> Result<Graph, GraphError> {
    if edges.is_empty() {
        return Err(GraphError::EmptyEdgeList);
    }
    let mut id_map: BTreeMap<u64, usize> = BTreeMap::new();
    for &(u, v, _) in edges {
        id_map.insert(u, 0);
        id_map.insert(v, 0);
    }
    let original_ids: Vec<u64> = id_map.keys().copied().collect();
    let n = original_ids.len();
    if n > max_nodes {
        return Err(GraphError::TooLarge {
            nodes: n,
            bound: max_nodes,
        });
    }
    for (slot, id) in id_map.values_mut().zip(0..) {
        *slot = id;
    }

    let mut canonical: Vec<(usize, usize, Rational)> = Vec::with_capacity(edges.len());
    for (u, v, w) in edges {
        if u == v {
            return Err(GraphError::SelfLoop(*u));
        }
        if !w.is_positive() {
            return Err(GraphError::NonpositiveWeight {
                u: *u.min(v),
                v: *u.max(v),
                weight: crate::rational::fmt_exact(w),
            });
        }
        let a = id_map[u];
        let b = id_map[v];
        let (tail, head) = if a < b { (a, b) } else { (b, a) };
        canonical.push((tail, head, w.clone()));
    }
    canonical.sort_by_key(|x| (x.0, x.1));
    for pair in canonical.windows(2) {
        if (pair[0].0, pair[0].1) == (pair[1].0, pair[1].1) {
            return Err(GraphError::DuplicateEdge(
                original_ids[pair[0].0],
                original_ids[pair[0].1],
            ));
        }
    }

    let mut graph_edges = Vec::with_capacity(canonical.len());
    let mut weights = Vec::with_capacity(canonical.len());
    let mut adj: Vec<Vec<Neighbor>> = vec![Vec::new(); n];
    let mut degree = vec![0usize; n];
    let mut weighted_degree = vec![Rational::zero(); n];
    for (index, (tail, head, w)) in canonical.into_iter().enumerate() {
        adj[tail].push(Neighbor { node: head, edge: index });
        adj[head].push(Neighbor { node: tail, edge: index });
        degree[tail] += 1;
        degree[head] += 1;
        weighted_degree[tail] += &w;
        weighted_degree[head] += &w;
        graph_edges.push(OrientedEdge { tail, head, index });
        weights.push(w);
    }
    for list in &mut adj {
        list.sort_by_key(|nb| nb.node);
    }
    let unit_weights = weights.iter().all(|w| w.is_one());

    let g = Graph {
        n,
        edges: graph_edges,
        weights,
        adj,
        degree,
        weighted_degree,
        original_ids,
        unit_weights,
    };
    let components = g.count_components();
    if components > 1 {
        return Err(GraphError::Disconnected { components });
    }
    Ok(g)
}

/// [`build_graph`] with unit weights and the default size bound.
pub fn build_unit_graph(pairs: &[(u64, u64)]) -> Result<Graph, GraphError> {
    let edges: Vec<(u64, u64, Rational)> = pairs
        .iter()
        .map(|&(u, v)| (u, v, Rational::one()))
        .collect();
    build_graph(&edges, DEFAULT_MAX_NODES)
}

/// Parses the edge-list text format: one edge per line as `u v [w]`,
/// whitespace-separated, with `#` beginning a comment line and the weight
/// defaulting to 1. Weights may be integers, decimals, or `p/q` fractions.
pub fn parse_edge_list(text: &str) -> Result<Vec<(u64, u64, Rational)>, EdgeListError> {
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let fail = |msg: String| EdgeListError::Line {
            line: lineno + 1,
            msg,
        };
        if tokens.len() != 2 && tokens.len() != 3 {
            return Err(fail(format!(
                "expected `u v [w]`, found {} tokens",
                tokens.len()
            )));
        }
        let u: u64 = tokens[0]
            .parse()
            .map_err(|_| fail(format!("invalid node id `{}`", tokens[0])))?;
        let v: u64 = tokens[1]
            .parse()
            .map_err(|_| fail(format!("invalid node id `{}`", tokens[1])))?;
        let w = if tokens.len() == 3 {
            parse_rational(tokens[2]).map_err(|e| fail(format!("invalid weight: {e}")))?
        } else {
            Rational::one()
        };
        edges.push((u, v, w));
    }
    if edges.is_empty() {
        return Err(EdgeListError::Empty);
    }
    Ok(edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("no edges found in input")]
    Empty,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[OrientedEdge] {
        &self.edges
    }

    pub fn weight(&self, edge: usize) -> &Rational {
        &self.weights[edge]
    }

    pub fn neighbors(&self, i: usize) -> &[Neighbor] {
        &self.adj[i]
    }

    /// Combinatorial degree (neighbor count).
    pub fn degree(&self, i: usize) -> usize {
        self.degree[i]
    }

    /// Weighted degree: sum of incident edge weights.
    pub fn weighted_degree(&self, i: usize) -> &Rational {
        &self.weighted_degree[i]
    }

    /// Volume: sum of weighted degrees over all nodes (twice the total weight).
    pub fn volume(&self) -> Rational {
        self.weighted_degree
            .iter()
            .fold(Rational::zero(), |acc, d| acc + d)
    }

    /// True when every edge has weight exactly one.
    pub fn is_combinatorial(&self) -> bool {
        self.unit_weights
    }

    /// Connected with `m = n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edges.len() == self.n - 1
    }

    pub fn original_id(&self, i: usize) -> u64 {
        self.original_ids[i]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    /// Edge index of `{i, j}` if the pair is adjacent.
    pub fn edge_between(&self, i: usize, j: usize) -> Option<usize> {
        self.adj[i]
            .binary_search_by_key(&j, |nb| nb.node)
            .ok()
            .map(|pos| self.adj[i][pos].edge)
    }

    pub fn check_node(&self, i: usize) -> Result<(), GraphError> {
        if i < self.n {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange {
                node: i,
                nodes: self.n,
            })
        }
    }

    fn count_components(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut components = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                for nb in &self.adj[u] {
                    if !seen[nb.node] {
                        seen[nb.node] = true;
                        queue.push_back(nb.node);
                    }
                }
            }
        }
        components
    }

    /// Hop distances from one source, by breadth-first search.
    pub fn hop_distances(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for nb in &self.adj[u] {
                if dist[nb.node] == u32::MAX {
                    dist[nb.node] = dist[u] + 1;
                    queue.push_back(nb.node);
                }
            }
        }
        debug_assert!(dist.iter().all(|&d| d != u32::MAX), "graph is connected");
        dist
    }

    /// Least-total-weight distances from one source, by Dijkstra's algorithm.
    pub fn weighted_distances(&self, src: usize) -> Vec<Rational> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let mut dist: Vec<Option<Rational>> = vec![None; self.n];
        let mut done = vec![false; self.n];
        let mut heap = BinaryHeap::new();
        dist[src] = Some(Rational::zero());
        heap.push(Reverse((Rational::zero(), src)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for nb in &self.adj[u] {
                let cand = &d + &self.weights[nb.edge];
                let better = match &dist[nb.node] {
                    None => true,
                    Some(cur) => cand < *cur,
                };
                if better {
                    dist[nb.node] = Some(cand.clone());
                    heap.push(Reverse((cand, nb.node)));
                }
            }
        }
        dist.into_iter()
            .map(|d| d.expect("graph is connected"))
            .collect()
    }

    /// Full hop-count distance matrix (one BFS per node; rows computed in
    /// parallel, result independent of scheduling).
    pub fn distance_matrix(&self) -> DistanceMatrix {
        let rows: Vec<Vec<u32>> = (0..self.n)
            .into_par_iter()
            .map(|src| self.hop_distances(src))
            .collect();
        let mut data = Vec::with_capacity(self.n * self.n);
        for row in rows {
            data.extend(row);
        }
        DistanceMatrix { n: self.n, data }
    }

    /// Full least-total-weight distance matrix.
    pub fn weighted_distance_matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.n)
            .into_par_iter()
            .map(|src| self.weighted_distances(src))
            .collect()
    }

    /// Distance between one pair of nodes under the chosen metric.
    pub fn pair_distance(&self, i: usize, j: usize, metric: Metric) -> Rational {
        match metric {
            Metric::Hop => Rational::from_integer(self.hop_distances(i)[j].into()),
            Metric::Weighted => self.weighted_distances(i)[j].clone(),
        }
    }

    /// Maximum hop distance over all pairs.
    pub fn diameter(&self) -> u32 {
        self.distance_matrix().diameter()
    }

    /// The unique path from `i` to `j` in a tree, as a node sequence
    /// beginning with `i` and ending with `j` (`i == j` gives `[i]`).
    pub fn geodesic(&self, i: usize, j: usize) -> Result<Vec<usize>, GraphError> {
        self.require_tree()?;
        self.check_node(i)?;
        self.check_node(j)?;
        let mut parent = vec![usize::MAX; self.n];
        parent[i] = i;
        let mut queue = VecDeque::from([i]);
        while let Some(u) = queue.pop_front() {
            if u == j {
                break;
            }
            for nb in &self.adj[u] {
                if parent[nb.node] == usize::MAX {
                    parent[nb.node] = u;
                    queue.push_back(nb.node);
                }
            }
        }
        let mut path = vec![j];
        let mut cur = j;
        while cur != i {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    /// Nodes of the component of `tail` after deleting tree edge `{tail, head}`,
    /// in sorted order. The complementary call with the endpoints swapped
    /// yields exactly the remaining nodes.
    pub fn subtree_side(&self, tail: usize, head: usize) -> Result<Vec<usize>, GraphError> {
        self.require_tree()?;
        self.check_node(tail)?;
        self.check_node(head)?;
        let cut = self
            .edge_between(tail, head)
            .ok_or(GraphError::NoSuchEdge(tail, head))?;
        let mut seen = vec![false; self.n];
        seen[tail] = true;
        let mut queue = VecDeque::from([tail]);
        let mut side = vec![tail];
        while let Some(u) = queue.pop_front() {
            for nb in &self.adj[u] {
                if nb.edge != cut && !seen[nb.node] {
                    seen[nb.node] = true;
                    side.push(nb.node);
                    queue.push_back(nb.node);
                }
            }
        }
        side.sort_unstable();
        Ok(side)
    }

    /// Applies the signed incidence operator to an edge-indexed flow:
    /// `out[tail] += J_e` and `out[head] -= J_e` for every oriented edge.
    pub fn apply_incidence(&self, flow: &[Rational]) -> Vec<Rational> {
        assert_eq!(
            flow.len(),
            self.edges.len(),
            "flow must have one entry per edge"
        );
        let mut out = vec![Rational::zero(); self.n];
        for e in &self.edges {
            out[e.tail] += &flow[e.index];
            out[e.head] -= &flow[e.index];
        }
        out
    }

    pub fn require_tree(&self) -> Result<(), GraphError> {
        if self.is_tree() {
            Ok(())
        } else {
            Err(GraphError::NotATree {
                nodes: self.n,
                edges: self.edges.len(),
            })
        }
    }
}

/// Dense hop-count distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }
}
