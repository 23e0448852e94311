//! Incrementally maintained sample membership, border, and degree caches.
//!
//! A [`SampleState`] records which nodes of a fixed graph have been drawn into
//! a sample, in what order, and two derived structures that samplers and the
//! online selection criterion consult on every step:
//!
//! * the **border**: every exterior node with at least one edge *into* the
//!   current members, i.e. `j ∉ members` with `weight(j→i) > 0` for some
//!   member `i`;
//! * the **in-sample in-degree**: for each border node `j`, the total weight
//!   `Σ_{i ∈ members} weight(i→j)` of edges arriving at `j` *from* members.
//!
//! The two definitions deliberately look at opposite edge directions: border
//! membership asks whether `j` feeds into the sample, while the cached degree
//! measures how much the sample feeds into `j`. Both are maintained
//! incrementally in `O(out_degree(v) + in_degree(v))` time per insertion, so
//! the cost of growing a sample by one node does not depend on how large the
//! sample already is.

use indexmap::IndexMap;

use crate::graph::{Graph, NodeId};

/// A growing node sample over a fixed graph: membership, insertion order,
/// border set, and per-border-node in-sample in-degrees.
///
/// The state does not hold a reference to the graph; every method that needs
/// adjacency takes `&Graph` and the caller must pass the same graph
/// throughout (enforced by a node-count check).
#[derive(Debug, Clone)]
pub struct SampleState {
    n: usize,
    members: Vec<bool>,
    order: Vec<NodeId>,
    /// Border node id → in-sample in-degree. An `IndexMap` keyed by insertion
    /// keeps iteration deterministic, which in turn keeps every randomized
    /// scan over the border reproducible under a fixed seed.
    border: IndexMap<u32, f64>,
    truncated: bool,
}

impl SampleState {
    /// Creates an empty sample over the nodes of `g`.
    pub fn new(g: &Graph) -> Self {
        SampleState {
            n: g.n(),
            members: vec![false; g.n()],
            order: Vec::new(),
            border: IndexMap::new(),
            truncated: false,
        }
    }

    /// Number of sampled nodes.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    /// True when no node has been sampled yet.
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// O(1) membership test.
    pub fn contains(&self, v: NodeId) -> bool {
        self.members.get(v.index()).copied().unwrap_or(false)
    }

    /// Sampled nodes in insertion order.
    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    /// Sampled nodes in ascending id order, the canonical form expected by
    /// [`Graph::induced_subgraph`].
    pub fn members_sorted(&self) -> Vec<NodeId> {
        let mut m = self.order.clone();
        m.sort_unstable();
        m
    }

    /// Number of border nodes.
    pub fn border_len(&self) -> usize {
        self.border.len()
    }

    /// True when `v` is outside the sample but has an edge into it.
    pub fn is_border(&self, v: NodeId) -> bool {
        self.border.contains_key(&v.0)
    }

    /// Border nodes in a deterministic (but otherwise unspecified) order.
    pub fn border_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.border.keys().map(|&k| NodeId(k))
    }

    /// Total weight of edges from members into `v`: `Σ_{i ∈ members} weight(i→v)`.
    ///
    /// O(1) for border nodes (served from the cache); any other node falls
    /// back to a scan of its in-edges.
    pub fn in_sample_in_degree(&self, g: &Graph, v: NodeId) -> f64 {
        if let Some(&d) = self.border.get(&v.0) {
            return d;
        }
        g.in_edges(v)
            .filter(|&(u, _)| self.contains(u))
            .map(|(_, w)| w)
            .sum()
    }

    /// True when a traversal sampler ran out of reachable nodes before
    /// hitting its requested size.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub(crate) fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    /// Adds `v` to the sample and updates the border and degree caches.
    ///
    /// # Panics
    ///
    /// Panics if `v` is already a member, out of range, or if `g` does not
    /// have the node count this state was created with — these are caller
    /// bugs, not data conditions.
    pub fn add(&mut self, g: &Graph, v: NodeId) {
        assert_eq!(g.n(), self.n, "graph does not match this sample state");
        assert!(v.index() < self.n, "node {v} out of range");
        assert!(!self.members[v.index()], "node {v} added twice");
        self.members[v.index()] = true;
        self.order.push(v);
        self.border.swap_remove(&v.0);
        // v's outgoing edges raise the in-sample in-degree of nodes that are
        // already tracked.
        for (t, w) in g.out_edges(v) {
            if let Some(d) = self.border.get_mut(&t.0) {
                *d += w;
            }
        }
        // Exterior in-neighbors of v enter the border. Their cached degree is
        // built by a full scan because nothing was tracked for them before;
        // the scan already sees v as a member.
        for (u, _) in g.in_edges(v) {
            if self.members[u.index()] || self.border.contains_key(&u.0) {
                continue;
            }
            let d = g
                .in_edges(u)
                .filter(|&(i, _)| self.members[i.index()])
                .map(|(_, w)| w)
                .sum();
            self.border.insert(u.0, d);
        }
    }
}
