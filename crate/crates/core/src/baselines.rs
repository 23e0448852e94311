//! Baseline node samplers: uniform, random walks, BFS, snowball, forest
//! fire, and expansion sampling.
//!
//! Every sampler draws nodes from a fixed graph and returns a
//! [`SampleState`] with `m` distinct members. The traversal samplers (BFS,
//! snowball) may return fewer when they run out of reachable nodes, in which
//! case the state's `truncated` flag is set. Re-running any sampler with the
//! same seed reproduces the same members in the same insertion order.
//!
//! Walk-based samplers require strongly connected input — extract the
//! largest strongly connected component first — and count each node once:
//! the walk keeps moving until it has seen `m` distinct nodes.
//!
//! Each `*_from` variant pins the otherwise randomly drawn starting node,
//! which is useful for reproducing a specific traversal.

use std::collections::VecDeque;

use rand::Rng as _;
use rand_distr::{Distribution, Geometric};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::sample::SampleState;
use crate::seeding::Rng;

/// Transition rule for [`random_walk_sample`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkVariant {
    /// Next node chosen proportionally to the outgoing edge weight.
    Simple,
    /// Propose a uniform out-neighbor, accept with probability
    /// `min(1, deg(current) / deg(proposed))` where `deg` is the weighted
    /// total (in + out) degree; otherwise stay. On undirected graphs the
    /// stationary distribution is uniform over nodes.
    MetropolisHastings,
    /// Next node chosen proportionally to edge weight × weighted total
    /// degree of the neighbor, biasing the walk toward hubs.
    DegreeWeighted,
}

fn check_m(g: &Graph, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "sample size must be at least 1".into(),
        ));
    }
    if m > g.n() {
        return Err(Error::InvalidArgument(format!(
            "sample size {m} exceeds node count {}",
            g.n()
        )));
    }
    Ok(())
}

fn check_node(g: &Graph, v: NodeId, what: &str) -> Result<()> {
    if v.index() >= g.n() {
        return Err(Error::InvalidArgument(format!(
            "{what} {v} out of range for {} nodes",
            g.n()
        )));
    }
    Ok(())
}

fn check_strongly_connected(g: &Graph) -> Result<()> {
    if !g.is_strongly_connected() {
        return Err(Error::Sampling(
            "random walks require a strongly connected graph; \
             extract the largest strongly connected component first"
                .into(),
        ));
    }
    Ok(())
}

fn random_node(g: &Graph, rng: &mut Rng) -> NodeId {
    NodeId(rng.gen_range(0..g.n() as u32))
}

/// Draws `m` distinct nodes uniformly without replacement.
pub fn uniform_sample(g: &Graph, m: usize, rng: &mut Rng) -> Result<SampleState> {
    check_m(g, m)?;
    let mut state = SampleState::new(g);
    for idx in rand::seq::index::sample(rng, g.n(), m) {
        state.add(g, NodeId(idx as u32));
    }
    Ok(state)
}

fn weighted_total_degree(g: &Graph, v: NodeId) -> f64 {
    g.weighted_in_degree(v) + g.weighted_out_degree(v)
}

/// Advances a walk by one transition from `current`, following out-edges.
///
/// A node with no out-edges traps the walk: the step returns `current`
/// unchanged. Metropolis–Hastings rejections also return `current`; such
/// self-transitions are real steps of the chain and must be counted when
/// measuring its stationary distribution.
pub fn walk_step(g: &Graph, variant: WalkVariant, current: NodeId, rng: &mut Rng) -> NodeId {
    let edges = g.out_edges(current);
    if edges.is_empty() {
        return current;
    }
    match variant {
        WalkVariant::Simple => pick_weighted(edges.clone(), rng, |_, w| w),
        WalkVariant::DegreeWeighted => {
            pick_weighted(edges.clone(), rng, |t, w| w * weighted_total_degree(g, t))
        }
        WalkVariant::MetropolisHastings => {
            let (proposed, _) = edges.get(rng.gen_range(0..edges.len()));
            let accept =
                (weighted_total_degree(g, current) / weighted_total_degree(g, proposed)).min(1.0);
            if rng.gen::<f64>() < accept {
                proposed
            } else {
                current
            }
        }
    }
}

/// Samples one edge of a row with probability proportional to `weight_of`.
fn pick_weighted(
    edges: crate::graph::Edges<'_>,
    rng: &mut Rng,
    mut weight_of: impl FnMut(NodeId, f64) -> f64,
) -> NodeId {
    let mut total = 0.0;
    for k in 0..edges.len() {
        let (t, w) = edges.get(k);
        total += weight_of(t, w);
    }
    let mut u = rng.gen::<f64>() * total;
    for k in 0..edges.len() {
        let (t, w) = edges.get(k);
        u -= weight_of(t, w);
        if u <= 0.0 {
            return t;
        }
    }
    // Floating-point slack can leave u marginally positive; fall back to the
    // last out-neighbor.
    edges.get(edges.len() - 1).0
}

/// Walks from a uniformly drawn start node until `m` distinct nodes have
/// been visited. Requires strong connectivity.
pub fn random_walk_sample(
    g: &Graph,
    m: usize,
    variant: WalkVariant,
    rng: &mut Rng,
) -> Result<SampleState> {
    check_m(g, m)?;
    check_strongly_connected(g)?;
    let start = random_node(g, rng);
    random_walk_sample_from(g, m, variant, start, rng)
}

/// [`random_walk_sample`] with a pinned start node.
pub fn random_walk_sample_from(
    g: &Graph,
    m: usize,
    variant: WalkVariant,
    start: NodeId,
    rng: &mut Rng,
) -> Result<SampleState> {
    check_m(g, m)?;
    check_node(g, start, "start node")?;
    check_strongly_connected(g)?;
    let mut state = SampleState::new(g);
    state.add(g, start);
    let mut current = start;
    while state.len() < m {
        current = walk_step(g, variant, current, rng);
        if !state.contains(current) {
            state.add(g, current);
        }
    }
    Ok(state)
}

/// Breadth-first traversal from a uniformly drawn root, truncated at `m`
/// nodes. When fewer than `m` nodes are reachable the sample is the whole
/// reachable set and the `truncated` flag is set.
pub fn bfs_sample(g: &Graph, m: usize, rng: &mut Rng) -> Result<SampleState> {
    check_m(g, m)?;
    let root = random_node(g, rng);
    bfs_sample_from(g, m, root)
}

/// [`bfs_sample`] with a pinned root; fully deterministic.
pub fn bfs_sample_from(g: &Graph, m: usize, root: NodeId) -> Result<SampleState> {
    check_m(g, m)?;
    check_node(g, root, "root node")?;
    let mut state = SampleState::new(g);
    let mut queue = VecDeque::new();
    state.add(g, root);
    queue.push_back(root);
    'outer: while let Some(v) = queue.pop_front() {
        if state.len() == m {
            break;
        }
        for (t, _) in g.out_edges(v) {
            if state.contains(t) {
                continue;
            }
            state.add(g, t);
            queue.push_back(t);
            if state.len() == m {
                break 'outer;
            }
        }
    }
    if state.len() < m {
        state.mark_truncated();
    }
    Ok(state)
}

/// Snowball traversal: each wave adds up to `k` uniformly chosen unvisited
/// out-neighbors per frontier node, truncated at `m` nodes. Falls short (with
/// the `truncated` flag) when the frontier dies out first.
pub fn snowball_sample(g: &Graph, m: usize, k: usize, rng: &mut Rng) -> Result<SampleState> {
    check_m(g, m)?;
    let root = random_node(g, rng);
    snowball_sample_from(g, m, k, root, rng)
}

/// [`snowball_sample`] with a pinned root.
pub fn snowball_sample_from(
    g: &Graph,
    m: usize,
    k: usize,
    root: NodeId,
    rng: &mut Rng,
) -> Result<SampleState> {
    check_m(g, m)?;
    check_node(g, root, "root node")?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "snowball branching factor must be at least 1".into(),
        ));
    }
    let mut state = SampleState::new(g);
    state.add(g, root);
    let mut wave = vec![root];
    'outer: while !wave.is_empty() && state.len() < m {
        let mut next = Vec::new();
        for &v in &wave {
            let candidates: Vec<NodeId> = g
                .out_edges(v)
                .map(|(t, _)| t)
                .filter(|&t| !state.contains(t))
                .collect();
            let chosen = if candidates.len() > k {
                rand::seq::index::sample(rng, candidates.len(), k)
                    .iter()
                    .map(|i| candidates[i])
                    .collect()
            } else {
                candidates
            };
            for t in chosen {
                state.add(g, t);
                next.push(t);
                if state.len() == m {
                    break 'outer;
                }
            }
        }
        wave = next;
    }
    if state.len() < m {
        state.mark_truncated();
    }
    Ok(state)
}

/// Geometric distribution of how many out-neighbors one node burns: support
/// {0, 1, 2, …} with mean `p_f / (1 - p_f)`.
fn burn_count_distribution(p_f: f64) -> Geometric {
    // Success probability 1 - p_f gives P(X = k) = p_f^k (1 - p_f), whose
    // mean is p_f / (1 - p_f).
    Geometric::new(1.0 - p_f).expect("0 < p_f < 1 was validated")
}

/// Forest fire sampling: from a random ambassador, each burning node ignites
/// a geometric number (mean `p_f / (1 - p_f)`) of uniformly chosen unvisited
/// out-neighbors, recursively; when the fire dies the process restarts from
/// a fresh random unvisited node. Stops at `m` nodes.
pub fn forest_fire_sample(g: &Graph, m: usize, p_f: f64, rng: &mut Rng) -> Result<SampleState> {
    check_m(g, m)?;
    if !(p_f > 0.0 && p_f < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "forward burning probability must lie strictly between 0 and 1, got {p_f}"
        )));
    }
    let burn_dist = burn_count_distribution(p_f);
    let mut state = SampleState::new(g);
    // Lazily purged pool for uniform draws over unvisited nodes: burned nodes
    // stay in the pool until drawn, at which point they are discarded.
    let mut pool: Vec<u32> = (0..g.n() as u32).collect();
    let mut queue = VecDeque::new();
    while state.len() < m {
        let ambassador = loop {
            let k = rng.gen_range(0..pool.len());
            let v = NodeId(pool.swap_remove(k));
            if !state.contains(v) {
                break v;
            }
        };
        state.add(g, ambassador);
        queue.clear();
        queue.push_back(ambassador);
        while state.len() < m {
            let Some(v) = queue.pop_front() else { break };
            let burn = burn_dist.sample(rng) as usize;
            if burn == 0 {
                continue;
            }
            let candidates: Vec<NodeId> = g
                .out_edges(v)
                .map(|(t, _)| t)
                .filter(|&t| !state.contains(t))
                .collect();
            let chosen = if candidates.len() > burn {
                rand::seq::index::sample(rng, candidates.len(), burn)
                    .iter()
                    .map(|i| candidates[i])
                    .collect()
            } else {
                candidates
            };
            for t in chosen {
                if state.len() == m {
                    break;
                }
                state.add(g, t);
                queue.push_back(t);
            }
        }
    }
    Ok(state)
}

/// Greedy expansion sampling: repeatedly adds the frontier node `v`
/// maximizing `|N(v) \ (S ∪ N(S))|`, the number of fresh nodes `v`'s
/// neighborhood would contribute, with `N` the union of out- and
/// in-neighbors. Ties are broken uniformly at random. If the frontier
/// empties before `m` nodes (disconnected input), the process restarts from
/// a uniform unvisited node.
pub fn expansion_sample(g: &Graph, m: usize, rng: &mut Rng) -> Result<SampleState> {
    check_m(g, m)?;
    let start = random_node(g, rng);
    expansion_sample_from(g, m, start, rng)
}

/// Visits the out- and in-neighbors of `v` as one deduplicated ascending
/// sequence (both adjacency rows are stored in ascending id order).
fn for_each_neighbor(g: &Graph, v: NodeId, mut f: impl FnMut(NodeId)) {
    let out = g.out_edges(v);
    let inn = g.in_edges(v);
    let (mut a, mut b) = (0, 0);
    while a < out.len() || b < inn.len() {
        let next = if a == out.len() {
            let y = inn.get(b).0;
            b += 1;
            y
        } else if b == inn.len() {
            let x = out.get(a).0;
            a += 1;
            x
        } else {
            let (x, y) = (out.get(a).0, inn.get(b).0);
            if x <= y {
                a += 1;
                if x == y {
                    b += 1;
                }
                x
            } else {
                b += 1;
                y
            }
        };
        f(next);
    }
}

/// [`expansion_sample`] with a pinned start node.
pub fn expansion_sample_from(
    g: &Graph,
    m: usize,
    start: NodeId,
    rng: &mut Rng,
) -> Result<SampleState> {
    check_m(g, m)?;
    check_node(g, start, "start node")?;
    let mut state = SampleState::new(g);
    // covered = S ∪ N(S); frontier = N(S) \ S, as a vector for O(1)
    // swap-removal plus a bitmap to prevent duplicates.
    let mut covered = vec![false; g.n()];
    let mut in_frontier = vec![false; g.n()];
    let mut frontier: Vec<u32> = Vec::new();

    let absorb = |v: NodeId,
                  state: &mut SampleState,
                  covered: &mut Vec<bool>,
                  in_frontier: &mut Vec<bool>,
                  frontier: &mut Vec<u32>| {
        state.add(g, v);
        covered[v.index()] = true;
        in_frontier[v.index()] = false;
        for_each_neighbor(g, v, |nb| {
            covered[nb.index()] = true;
            if !state.contains(nb) && !in_frontier[nb.index()] {
                in_frontier[nb.index()] = true;
                frontier.push(nb.0);
            }
        });
    };

    absorb(start, &mut state, &mut covered, &mut in_frontier, &mut frontier);
    while state.len() < m {
        if frontier.is_empty() {
            // Disconnected input: restart from a uniform unvisited node.
            let unvisited: Vec<u32> =
                (0..g.n() as u32).filter(|&v| !state.contains(NodeId(v))).collect();
            let v = NodeId(unvisited[rng.gen_range(0..unvisited.len())]);
            absorb(v, &mut state, &mut covered, &mut in_frontier, &mut frontier);
            continue;
        }
        let mut best_score = 0usize;
        let mut ties: Vec<usize> = Vec::new();
        for (pos, &u) in frontier.iter().enumerate() {
            let mut score = 0usize;
            for_each_neighbor(g, NodeId(u), |nb| {
                if !covered[nb.index()] {
                    score += 1;
                }
            });
            if ties.is_empty() || score > best_score {
                best_score = score;
                ties.clear();
                ties.push(pos);
            } else if score == best_score {
                ties.push(pos);
            }
        }
        let pos = ties[rng.gen_range(0..ties.len())];
        let v = NodeId(frontier.swap_remove(pos));
        absorb(v, &mut state, &mut covered, &mut in_frontier, &mut frontier);
    }
    Ok(state)
}
