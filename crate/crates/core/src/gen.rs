//! Seeded random instances for the verification suites: trees via Prüfer
//! decoding, connected non-trees via chord insertion, and probability
//! measures with small rational masses. Every generator is a pure function
//! of `(seed, instance)`, so suites can run per-instance in parallel and
//! still be reproducible run to run.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{build_graph, Graph, DEFAULT_MAX_NODES};
use crate::rational::{rat, Rational};
use crate::transport::Measure;

/// Deterministic per-instance stream: one master seed fans out to
/// independent streams by mixing the instance index with a splitmix-style
/// odd constant before keying the stream cipher.
pub fn rng_for(seed: u64, instance: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ instance.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Decodes a Prüfer sequence over labels `0..seq.len() + 2` into the edge
/// list of the unique tree with that sequence. Each label's degree is one
/// plus its multiplicity in the sequence.
pub fn prufer_to_edges(seq: &[usize]) -> Vec<(u64, u64)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let Reverse(u) = leaves.pop().expect("a tree always has a spare leaf");
        edges.push((u as u64, v as u64));
        degree[u] -= 1;
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(u) = leaves.pop().expect("two nodes remain");
    let Reverse(v) = leaves.pop().expect("two nodes remain");
    edges.push((u as u64, v as u64));
    edges
}

/// Uniformly random labelled tree on `n >= 2` nodes.
pub fn random_tree_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<(u64, u64)> {
    assert!(n >= 2, "a tree needs at least two nodes");
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    prufer_to_edges(&seq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// Every edge gets weight 1.
    Unit,
    /// Each edge gets an independent weight `p/q` with `p, q` in `1..=8`.
    SmallRationals,
}

fn weigh(rng: &mut ChaCha8Rng, weighting: Weighting) -> Rational {
    match weighting {
        Weighting::Unit => Rational::from_integer(1.into()),
        Weighting::SmallRationals => rat(rng.gen_range(1..=8), rng.gen_range(1..=8)),
    }
}

/// Random tree on `n` nodes with the chosen edge weighting.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize, weighting: Weighting) -> Graph {
    let edges: Vec<(u64, u64, Rational)> = random_tree_edges(rng, n)
        .into_iter()
        .map(|(u, v)| (u, v, weigh(rng, weighting)))
        .collect();
    build_graph(&edges, DEFAULT_MAX_NODES).expect("generated tree is valid")
}

/// Random connected graph: a random spanning tree plus up to `extra` chords
/// drawn without replacement from the complement (fewer when the complement
/// is exhausted, as on complete graphs).
pub fn random_connected_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra: usize,
    weighting: Weighting,
) -> Graph {
    let tree = random_tree_edges(rng, n);
    let present: BTreeSet<(u64, u64)> = tree
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    let mut complement: Vec<(u64, u64)> = Vec::new();
    for u in 0..n as u64 {
        for v in (u + 1)..n as u64 {
            if !present.contains(&(u, v)) {
                complement.push((u, v));
            }
        }
    }
    let chords = complement.choose_multiple(rng, extra.min(complement.len()));
    let edges: Vec<(u64, u64, Rational)> = tree
        .into_iter()
        .chain(chords.copied())
        .map(|(u, v)| (u, v, weigh(rng, weighting)))
        .collect();
    build_graph(&edges, DEFAULT_MAX_NODES).expect("generated graph is valid")
}

/// Random probability measure on the nodes of `g`: independent integer
/// masses in `0..=12`, redrawn until some node is positive, then normalized.
pub fn random_measure(rng: &mut ChaCha8Rng, g: &Graph) -> Measure {
    loop {
        let raw: Vec<i64> = (0..g.n()).map(|_| rng.gen_range(0..=12)).collect();
        let total: i64 = raw.iter().sum();
        if total == 0 {
            continue;
        }
        let masses: Vec<Rational> = raw.into_iter().map(|m| rat(m, total)).collect();
        return Measure::new(masses).expect("normalized by construction");
    }
}
