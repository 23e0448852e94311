//! Graph storage, edge-list ingestion, generation, and structural
//! preprocessing.
//!
//! Graphs are immutable after construction: both adjacency views (outgoing
//! and incoming) are stored in compressed sparse form so concurrent readers
//! never contend. The weight convention throughout the crate is that an
//! edge `(i -> j, w)` contributes `w` to the *in*-degree of `j`; centrality
//! mass flows along incoming edges.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::seeding;

/// Dense node index in `[0, n)`. Original file labels are kept in a side map
/// on the [`Graph`].
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// What to do with repeated occurrences of the same edge during ingestion.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
pub enum MergePolicy {
    /// Sum the weights (supports count-weighted data where one line per
    /// event is emitted). Exact duplicates in undirected files therefore
    /// double the weight.
    #[default]
    Sum,
    /// Keep the weight of the first occurrence, drop the rest.
    KeepFirst,
}

/// Iterator over one adjacency row, yielding `(neighbor, weight)`.
#[derive(Clone)]
pub struct Edges<'a> {
    ids: &'a [u32],
    ws: &'a [f64],
    k: usize,
}

impl<'a> Edges<'a> {
    #[inline]
    pub fn len(&self) -> usize {
        self.ids.len() - self.k
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Random access into the remaining row (0-based from the cursor).
    #[inline]
    pub fn get(&self, k: usize) -> (NodeId, f64) {
        (NodeId(self.ids[self.k + k]), self.ws[self.k + k])
    }
}

impl<'a> Iterator for Edges<'a> {
    type Item = (NodeId, f64);

    #[inline]
    fn next(&mut self) -> Option<(NodeId, f64)> {
        if self.k < self.ids.len() {
            let item = (NodeId(self.ids[self.k]), self.ws[self.k]);
            self.k += 1;
            Some(item)
        } else {
            None
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.len(), Some(self.len()))
    }
}

impl ExactSizeIterator for Edges<'_> {}

/// Immutable weighted graph with mutually consistent out- and in-adjacency
/// views in compressed sparse row form.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    directed: bool,
    // Out view: arcs (i -> j, w) grouped by source i, targets sorted.
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    out_weights: Vec<f64>,
    // In view: arcs (j -> i, w) grouped by destination i, sources sorted.
    in_offsets: Vec<usize>,
    in_sources: Vec<u32>,
    in_weights: Vec<f64>,
    // Cached weighted degrees.
    w_in: Vec<f64>,
    w_out: Vec<f64>,
    labels: Vec<String>,
}

impl Graph {
    /// Build a graph from a final list of directed arcs. The caller is
    /// responsible for dedup/self-loop/symmetrization policy; this
    /// constructor only sorts and indexes.
    fn from_arcs(directed: bool, labels: Vec<String>, mut arcs: Vec<(u32, u32, f64)>) -> Graph {
        let n = labels.len();
        arcs.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        let mut out_offsets = vec![0usize; n + 1];
        for &(s, _, _) in &arcs {
            out_offsets[s as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
        }
        let out_targets: Vec<u32> = arcs.iter().map(|a| a.1).collect();
        let out_weights: Vec<f64> = arcs.iter().map(|a| a.2).collect();

        let mut rev: Vec<(u32, u32, f64)> = arcs.iter().map(|&(s, d, w)| (d, s, w)).collect();
        rev.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut in_offsets = vec![0usize; n + 1];
        for &(d, _, _) in &rev {
            in_offsets[d as usize + 1] += 1;
        }
        for i in 0..n {
            in_offsets[i + 1] += in_offsets[i];
        }
        let in_sources: Vec<u32> = rev.iter().map(|a| a.1).collect();
        let in_weights: Vec<f64> = rev.iter().map(|a| a.2).collect();

        let mut w_in = vec![0.0; n];
        let mut w_out = vec![0.0; n];
        for &(s, d, w) in &arcs {
            w_out[s as usize] += w;
            w_in[d as usize] += w;
        }

        Graph {
            directed,
            out_offsets,
            out_targets,
            out_weights,
            in_offsets,
            in_sources,
            in_weights,
            w_in,
            w_out,
            labels,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn directed(&self) -> bool {
        self.directed
    }

    /// Number of stored directed arcs.
    pub fn arc_count(&self) -> usize {
        self.out_targets.len()
    }

    /// Number of edges: directed arcs for directed graphs, unordered pairs
    /// for undirected ones.
    pub fn edge_count(&self) -> usize {
        if self.directed {
            self.arc_count()
        } else {
            self.arc_count() / 2
        }
    }

    /// Sum of all stored arc weights. For undirected graphs each edge is
    /// stored in both directions and therefore counted twice here, matching
    /// the degree-sum identity.
    pub fn total_arc_weight(&self) -> f64 {
        self.out_weights.iter().sum()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.n() as u32).map(NodeId)
    }

    /// Outgoing edges of `i`: pairs `(j, weight(i->j))`, targets ascending.
    #[inline]
    pub fn out_edges(&self, i: NodeId) -> Edges<'_> {
        let (lo, hi) = (self.out_offsets[i.index()], self.out_offsets[i.index() + 1]);
        Edges { ids: &self.out_targets[lo..hi], ws: &self.out_weights[lo..hi], k: 0 }
    }

    /// Incoming edges of `i`: pairs `(j, weight(j->i))`, sources ascending.
    #[inline]
    pub fn in_edges(&self, i: NodeId) -> Edges<'_> {
        let (lo, hi) = (self.in_offsets[i.index()], self.in_offsets[i.index() + 1]);
        Edges { ids: &self.in_sources[lo..hi], ws: &self.in_weights[lo..hi], k: 0 }
    }

    #[inline]
    pub fn out_degree(&self, i: NodeId) -> usize {
        self.out_offsets[i.index() + 1] - self.out_offsets[i.index()]
    }

    #[inline]
    pub fn in_degree(&self, i: NodeId) -> usize {
        self.in_offsets[i.index() + 1] - self.in_offsets[i.index()]
    }

    /// Sum of weights of incoming edges.
    #[inline]
    pub fn weighted_in_degree(&self, i: NodeId) -> f64 {
        self.w_in[i.index()]
    }

    /// Sum of weights of outgoing edges.
    #[inline]
    pub fn weighted_out_degree(&self, i: NodeId) -> f64 {
        self.w_out[i.index()]
    }

    /// Weight of the edge `i -> j`, or 0 when absent.
    pub fn weight(&self, i: NodeId, j: NodeId) -> f64 {
        let (lo, hi) = (self.out_offsets[i.index()], self.out_offsets[i.index() + 1]);
        match self.out_targets[lo..hi].binary_search(&j.0) {
            Ok(k) => self.out_weights[lo + k],
            Err(_) => 0.0,
        }
    }

    /// Original label of a node as it appeared in the input file.
    pub fn label(&self, i: NodeId) -> &str {
        &self.labels[i.index()]
    }

    /// True when every node can reach every other node along directed arcs.
    /// For undirected graphs (symmetric arcs) this is plain connectivity.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let full_forward = {
            let mut seen = vec![false; n];
            let mut stack = vec![0u32];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for (u, _) in self.out_edges(NodeId(v)) {
                    if !seen[u.index()] {
                        seen[u.index()] = true;
                        count += 1;
                        stack.push(u.0);
                    }
                }
            }
            count == n
        };
        if !full_forward {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (u, _) in self.in_edges(NodeId(v)) {
                if !seen[u.index()] {
                    seen[u.index()] = true;
                    count += 1;
                    stack.push(u.0);
                }
            }
        }
        count == n
    }

    /// Strongly connected components via an iterative Tarjan scan
    /// (single pass, linear time; iterative so deep graphs cannot overflow
    /// the call stack). Returns one sorted node list per component.
    pub fn strongly_connected_components(&self) -> Vec<Vec<NodeId>> {
        const UNVISITED: u32 = u32::MAX;
        let n = self.n();
        let mut index = vec![UNVISITED; n];
        let mut low = vec![0u32; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<u32> = Vec::new();
        let mut next_index: u32 = 0;
        let mut components: Vec<Vec<NodeId>> = Vec::new();

        // Explicit DFS frames: (node, cursor into its out-row).
        let mut frames: Vec<(u32, usize)> = Vec::new();
        for root in 0..n as u32 {
            if index[root as usize] != UNVISITED {
                continue;
            }
            frames.push((root, 0));
            index[root as usize] = next_index;
            low[root as usize] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root as usize] = true;

            while let Some(top) = frames.last_mut() {
                let v = top.0;
                let cursor = top.1;
                let vi = v as usize;
                let (lo_off, hi_off) = (self.out_offsets[vi], self.out_offsets[vi + 1]);
                if lo_off + cursor < hi_off {
                    top.1 += 1;
                    let wi = self.out_targets[lo_off + cursor] as usize;
                    if index[wi] == UNVISITED {
                        index[wi] = next_index;
                        low[wi] = next_index;
                        next_index += 1;
                        stack.push(wi as u32);
                        on_stack[wi] = true;
                        frames.push((wi as u32, 0));
                    } else if on_stack[wi] {
                        low[vi] = low[vi].min(index[wi]);
                    }
                } else {
                    frames.pop();
                    if let Some(&(parent, _)) = frames.last() {
                        let pi = parent as usize;
                        low[pi] = low[pi].min(low[vi]);
                    }
                    if low[vi] == index[vi] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w as usize] = false;
                            comp.push(NodeId(w));
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        components.push(comp);
                    }
                }
            }
        }
        components
    }

    /// Induced subgraph on the largest strongly connected component
    /// (largest connected component when undirected). Ties on size are
    /// broken by the smallest contained node index, for determinism.
    /// Returns the subgraph and the map from new ids to ids in `self`.
    pub fn largest_strongly_connected_component(&self) -> Result<(Graph, Vec<NodeId>)> {
        if self.n() == 0 {
            return Err(Error::EmptyGraph("cannot take the SCC of an empty graph".into()));
        }
        let comps = self.strongly_connected_components();
        let best = comps
            .iter()
            .max_by(|a, b| {
                // Larger size wins; on ties the component whose smallest
                // member index is smaller wins (components are sorted).
                a.len().cmp(&b.len()).then(b[0].cmp(&a[0]))
            })
            .expect("nonempty graph has at least one component");
        self.induced_subgraph(best)
    }

    /// Subgraph containing exactly the edges with both endpoints in
    /// `nodes`. Nodes are re-indexed in ascending order of their id in
    /// `self`; the returned map sends new ids to old ones.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Result<(Graph, Vec<NodeId>)> {
        if nodes.is_empty() {
            return Err(Error::InvalidArgument("induced subgraph of an empty node set".into()));
        }
        let mut sorted: Vec<NodeId> = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.last().unwrap().index() >= self.n() {
            return Err(Error::InvalidArgument(format!(
                "node {} out of range (n = {})",
                sorted.last().unwrap(),
                self.n()
            )));
        }

        let mut new_id = vec![u32::MAX; self.n()];
        for (new, old) in sorted.iter().enumerate() {
            new_id[old.index()] = new as u32;
        }
        let mut arcs = Vec::new();
        for (new_src, old_src) in sorted.iter().enumerate() {
            for (dst, w) in self.out_edges(*old_src) {
                let nd = new_id[dst.index()];
                if nd != u32::MAX {
                    arcs.push((new_src as u32, nd, w));
                }
            }
        }
        let labels = sorted.iter().map(|&v| self.labels[v.index()].clone()).collect();
        Ok((Graph::from_arcs(self.directed, labels, arcs), sorted))
    }

    /// Write the graph in the same edge-list format accepted by
    /// [`load_edge_list`]: one edge per line, `\n` endings, weights printed
    /// with full round-trip precision when `include_weights` is set.
    /// Undirected edges are written once, with the smaller endpoint first.
    /// Writing without weights is lossy for graphs whose weights are not
    /// all 1 (every edge reloads with weight 1).
    pub fn write_edge_list<W: Write>(&self, out: &mut W, include_weights: bool) -> Result<()> {
        for i in self.node_ids() {
            for (j, w) in self.out_edges(i) {
                if !self.directed && j < i {
                    continue;
                }
                if include_weights {
                    writeln!(out, "{} {} {}", self.labels[i.index()], self.labels[j.index()], w)?;
                } else {
                    writeln!(out, "{} {}", self.labels[i.index()], self.labels[j.index()])?;
                }
            }
        }
        Ok(())
    }
}

/// Incremental construction with label remapping and merge policy.
/// Single-threaded; freeze with [`GraphBuilder::build`].
pub struct GraphBuilder {
    directed: bool,
    policy: MergePolicy,
    label_ids: HashMap<String, u32>,
    labels: Vec<String>,
    // Key is (src, dst) for directed graphs and the sorted pair for
    // undirected ones; value is (weight, first-seen order) so output does
    // not depend on hash iteration order.
    merged: HashMap<(u32, u32), f64>,
}

impl GraphBuilder {
    pub fn new(directed: bool, policy: MergePolicy) -> GraphBuilder {
        GraphBuilder {
            directed,
            policy,
            label_ids: HashMap::new(),
            labels: Vec::new(),
            merged: HashMap::new(),
        }
    }

    fn intern(&mut self, label: &str) -> u32 {
        if let Some(&id) = self.label_ids.get(label) {
            return id;
        }
        let id = self.labels.len() as u32;
        self.labels.push(label.to_string());
        self.label_ids.insert(label.to_string(), id);
        id
    }

    /// Register a node so isolated nodes survive ingestion.
    pub fn add_node(&mut self, label: &str) -> NodeId {
        NodeId(self.intern(label))
    }

    /// Add one input edge. Self-loops are dropped silently. `weight` must
    /// be positive; a zero weight means "no edge" and only registers the
    /// endpoint labels.
    pub fn add_edge(&mut self, src: &str, dst: &str, weight: f64) -> Result<()> {
        if !(weight >= 0.0 && weight.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "edge weight must be a finite nonnegative number, got {weight}"
            )));
        }
        let s = self.intern(src);
        let d = self.intern(dst);
        if s == d || weight == 0.0 {
            return Ok(());
        }
        let key = if self.directed || s <= d { (s, d) } else { (d, s) };
        match self.policy {
            MergePolicy::Sum => {
                *self.merged.entry(key).or_insert(0.0) += weight;
            }
            MergePolicy::KeepFirst => {
                self.merged.entry(key).or_insert(weight);
            }
        }
        Ok(())
    }

    pub fn build(self) -> Result<Graph> {
        if self.labels.is_empty() {
            return Err(Error::EmptyGraph("no nodes were added".into()));
        }
        let mut arcs: Vec<(u32, u32, f64)> = Vec::with_capacity(
            self.merged.len() * if self.directed { 1 } else { 2 },
        );
        for (&(s, d), &w) in &self.merged {
            arcs.push((s, d, w));
            if !self.directed {
                arcs.push((d, s, w));
            }
        }
        Ok(Graph::from_arcs(self.directed, self.labels, arcs))
    }
}

/// Parse an edge-list file. Lines starting with `#` are comments; blank
/// lines are skipped. With `weighted` set, every edge line must carry a
/// third column; without it, exactly two columns are expected and every
/// edge gets weight 1.
pub fn load_edge_list<P: AsRef<Path>>(
    path: P,
    directed: bool,
    weighted: bool,
    policy: MergePolicy,
) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    load_edge_list_from_reader(BufReader::new(file), directed, weighted, policy)
}

/// Same as [`load_edge_list`] but reading from any buffered source.
pub fn load_edge_list_from_reader<R: BufRead>(
    reader: R,
    directed: bool,
    weighted: bool,
    policy: MergePolicy,
) -> Result<Graph> {
    let mut builder = GraphBuilder::new(directed, policy);
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let expected = if weighted { 3 } else { 2 };
        if tokens.len() != expected {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {expected} whitespace-separated tokens, found {}", tokens.len()),
            });
        }
        let weight = if weighted {
            let w: f64 = tokens[2].parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("weight column is not numeric: {:?}", tokens[2]),
            })?;
            if !w.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("weight must be finite, got {w}"),
                });
            }
            if w < 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("negative weight {w}"),
                });
            }
            w
        } else {
            1.0
        };
        builder.add_edge(tokens[0], tokens[1], weight).map_err(|e| match e {
            Error::InvalidArgument(msg) => Error::Parse { line: line_no, msg },
            other => other,
        })?;
    }
    builder.build().map_err(|e| match e {
        Error::EmptyGraph(_) => Error::EmptyGraph("edge-list file contains no edges".into()),
        other => other,
    })
}

/// Erdős–Rényi generator: every ordered pair (directed) or unordered pair
/// (undirected) is an edge of weight 1 independently with probability `p`.
/// Runs in O(n + expected edges) using geometric gap skipping, so dense and
/// sparse regimes are both fine. Deterministic for a fixed seed.
pub fn generate_er(n: usize, p: f64, directed: bool, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("ER graph needs n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability must lie in [0,1], got {p}")));
    }
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut arcs: Vec<(u32, u32, f64)> = Vec::new();
    let mut rng = seeding::rng_from_seed(seed);

    let emit = |s: u32, d: u32, arcs: &mut Vec<(u32, u32, f64)>| {
        arcs.push((s, d, 1.0));
        if !directed {
            arcs.push((d, s, 1.0));
        }
    };

    if p == 0.0 {
        return Ok(Graph::from_arcs(directed, labels, arcs));
    }
    if p == 1.0 {
        for i in 0..n as u32 {
            let start = if directed { 0 } else { i + 1 };
            for j in start..n as u32 {
                if i != j && (directed || j > i) {
                    emit(i, j, &mut arcs);
                }
            }
        }
        return Ok(Graph::from_arcs(directed, labels, arcs));
    }

    let ln_q = (1.0 - p).ln();
    for i in 0..n as u32 {
        // Within row i the candidate positions are all valid targets:
        // every j != i when directed, j > i when undirected.
        let row_len = if directed { n - 1 } else { n - 1 - i as usize };
        let mut pos = 0usize;
        loop {
            let u: f64 = 1.0 - rng.gen::<f64>(); // in (0, 1]
            let gap = (u.ln() / ln_q).floor();
            pos = pos.saturating_add(gap as usize);
            if pos >= row_len {
                break;
            }
            let j = if directed {
                let raw = pos as u32;
                if raw >= i { raw + 1 } else { raw }
            } else {
                i + 1 + pos as u32
            };
            emit(i, j, &mut arcs);
            pos += 1;
        }
    }
    Ok(Graph::from_arcs(directed, labels, arcs))
}
