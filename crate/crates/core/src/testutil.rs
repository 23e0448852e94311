//! Shared graph constructors for unit tests.

use rand::Rng as _;

use crate::graph::{generate_er, Graph, GraphBuilder, MergePolicy};
use crate::seeding::rng_from_seed;

/// Random directed graph with independent edges (probability `p`) and
/// uniform weights in `[0.1, 2.0)`; built directly so tests control both
/// topology and weights.
pub(crate) fn random_weighted_digraph(n: u32, p: f64, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let mut b = GraphBuilder::new(true, MergePolicy::Sum);
    for v in 0..n {
        b.add_node(&v.to_string());
    }
    for s in 0..n {
        for d in 0..n {
            if s != d && rng.gen::<f64>() < p {
                let w = rng.gen_range(0.1..2.0);
                b.add_edge(&s.to_string(), &d.to_string(), w).unwrap();
            }
        }
    }
    b.build().unwrap()
}

/// Graph with nodes `0..n` (labels are the decimal ids, so `NodeId(k)` is
/// the node labeled `k`) and the given weighted arcs.
pub(crate) fn graph_from_arcs(directed: bool, n: u32, arcs: &[(u32, u32, f64)]) -> Graph {
    let mut b = GraphBuilder::new(directed, MergePolicy::Sum);
    for v in 0..n {
        b.add_node(&v.to_string());
    }
    for &(s, t, w) in arcs {
        b.add_edge(&s.to_string(), &t.to_string(), w).unwrap();
    }
    b.build().unwrap()
}

/// Largest strongly connected component of an Erdős–Rényi graph; panics if
/// the component is smaller than `min_n` so tests fail loudly when a seed
/// produces a degenerate instance.
pub(crate) fn er_scc(n: usize, p: f64, directed: bool, seed: u64, min_n: usize) -> Graph {
    let g = generate_er(n, p, directed, seed).unwrap();
    let (scc, _) = g.largest_strongly_connected_component().unwrap();
    assert!(
        scc.n() >= min_n,
        "test graph unexpectedly fragmented: {} < {min_n}",
        scc.n()
    );
    scc
}
