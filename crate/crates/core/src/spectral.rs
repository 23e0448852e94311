//! Principal eigenpair computation (eigenvector centrality) and
//! vector-geometry utilities.
//!
//! Centrality follows the fixed-point `λ·μ_i = Σ_j w(j→i)·μ_j`: a node is
//! central when central nodes point at it. The solver is plain power
//! iteration — no shifts, no deflation, no teleportation — so reducible
//! inputs (e.g. a disconnected induced sample) are reported honestly via
//! the `converged` flag and residual instead of being regularized away.

use rand::Rng as _;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::seeding;

/// Start vector for power iteration. The uniform start is strictly
/// positive, which is all Perron theory needs; a randomized start is only
/// useful for probing seed-independence.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum StartVector {
    /// `1/sqrt(n)` in every entry.
    UniformPositive,
    /// Entries drawn uniformly from `(0.5, 1.5)`, then normalized.
    RandomPositive { seed: u64 },
}

/// Options for [`power_iteration`].
#[derive(Copy, Clone, Debug)]
pub struct PowerConfig {
    /// Stop when the L2 change between successive normalized iterates
    /// drops below this.
    pub tol: f64,
    /// Hard iteration cap; hitting it clears the `converged` flag.
    pub max_iter: usize,
    pub start: StartVector,
}

impl Default for PowerConfig {
    fn default() -> PowerConfig {
        PowerConfig { tol: 1e-10, max_iter: 100_000, start: StartVector::UniformPositive }
    }
}

/// Principal eigenvector estimate with solver telemetry.
#[derive(Clone, Debug)]
pub struct CentralityVector {
    /// Unit-norm nonnegative entries, one per node.
    pub values: Vec<f64>,
    /// Dominant eigenvalue estimate `‖A·v‖₂` at the final iterate.
    pub eigenvalue: f64,
    /// True when the tolerance fired (rather than the iteration cap).
    pub converged: bool,
    /// Number of iterations performed.
    pub iterations: usize,
    /// Final change norm `‖v_{t+1} − v_t‖₂`.
    pub residual: f64,
}

fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `next[i] = Σ_j w(j→i)·v[j]`: centrality mass flows along in-edges.
/// Accumulation per node is in fixed adjacency order, so the parallel and
/// serial paths produce bit-identical results.
fn apply_adjacency(g: &Graph, v: &[f64], next: &mut [f64]) {
    let row = |i: usize| -> f64 {
        g.in_edges(NodeId(i as u32)).map(|(j, w)| w * v[j.index()]).sum()
    };
    if g.n() >= 4096 {
        next.par_iter_mut().enumerate().for_each(|(i, slot)| *slot = row(i));
    } else {
        for (i, slot) in next.iter_mut().enumerate() {
            *slot = row(i);
        }
    }
}

/// Power iteration for the dominant eigenpair of the weighted adjacency.
///
/// Iterates `v ← normalize(A·v)` from a strictly positive start until the
/// change norm drops below `cfg.tol` or `cfg.max_iter` is reached. Errors
/// with "no dominant eigenpair" when the graph has no edges or the iterate
/// collapses to zero (nilpotent adjacency).
pub fn power_iteration(g: &Graph, cfg: &PowerConfig) -> Result<CentralityVector> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph("power iteration needs at least one node".into()));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", cfg.tol)));
    }
    if cfg.max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
    }
    if g.arc_count() == 0 {
        return Err(Error::Numerical("no dominant eigenpair: graph has no edges".into()));
    }

    let n = g.n();
    let mut v: Vec<f64> = match cfg.start {
        StartVector::UniformPositive => vec![1.0 / (n as f64).sqrt(); n],
        StartVector::RandomPositive { seed } => {
            let mut rng = seeding::rng_from_seed(seed);
            let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
            let norm = l2_norm(&v);
            v.iter_mut().for_each(|x| *x /= norm);
            v
        }
    };
    let mut next = vec![0.0; n];

    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    let mut converged = false;
    while iterations < cfg.max_iter {
        iterations += 1;
        apply_adjacency(g, &v, &mut next);
        let norm = l2_norm(&next);
        if norm == 0.0 {
            return Err(Error::Numerical(
                "no dominant eigenpair: iterate collapsed to zero (nilpotent adjacency)".into(),
            ));
        }
        let inv = 1.0 / norm;
        let mut diff_sq = 0.0;
        for (x, old) in next.iter_mut().zip(v.iter()) {
            *x *= inv;
            let d = *x - old;
            diff_sq += d * d;
        }
        residual = diff_sq.sqrt();
        std::mem::swap(&mut v, &mut next);
        if residual < cfg.tol {
            converged = true;
            break;
        }
    }

    apply_adjacency(g, &v, &mut next);
    let eigenvalue = l2_norm(&next);
    Ok(CentralityVector { values: v, eigenvalue, converged, iterations, residual })
}

/// Sine of the angle between two vectors, ignoring orientation:
/// `sqrt(1 − cos²θ)` with `cosθ = |⟨u,v⟩|/(‖u‖‖v‖)`, always in `[0, 1]`.
///
/// Computed via the half-angle chord `d = ‖û − v̂‖` (after sign-aligning),
/// as `d·sqrt(1 − d²/4)`. This is algebraically the same quantity but
/// keeps full precision for nearly parallel vectors, where the direct
/// formula underflows to 0 below sines of about 1e−8.
pub fn sine_distance(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::InvalidArgument(format!(
            "sine distance needs equal lengths, got {} and {}",
            u.len(),
            v.len()
        )));
    }
    let nu = l2_norm(u);
    let nv = l2_norm(v);
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::InvalidArgument("sine distance of a zero vector is undefined".into()));
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let sign = if dot < 0.0 { -1.0 } else { 1.0 };
    let mut chord_sq = 0.0;
    for (a, b) in u.iter().zip(v) {
        let d = a / nu - sign * b / nv;
        chord_sq += d * d;
    }
    let sine = chord_sq.sqrt() * (1.0 - chord_sq / 4.0).max(0.0).sqrt();
    Ok(sine.clamp(0.0, 1.0))
}

/// Entries of `v` at the given nodes, in ascending node order — the same
/// order `induced_subgraph` assigns to sample nodes, so restricted vectors
/// and sample centralities share indexing.
pub fn restrict(v: &[f64], nodes: &[NodeId]) -> Vec<f64> {
    let mut sorted: Vec<NodeId> = nodes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.iter().map(|&i| v[i.index()]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_edge_list_from_reader, MergePolicy};

    fn load(text: &str, directed: bool) -> Graph {
        load_edge_list_from_reader(text.as_bytes(), directed, false, MergePolicy::Sum).unwrap()
    }

    #[test]
    fn two_path_has_symmetric_eigenvector() {
        let g = load("0 1\n", false);
        let c = power_iteration(&g, &PowerConfig::default()).unwrap();
        assert!(c.converged);
        let expected = 1.0 / 2.0f64.sqrt();
        assert!((c.values[0] - expected).abs() < 1e-12);
        assert!((c.values[1] - expected).abs() < 1e-12);
        assert!((c.eigenvalue - 1.0).abs() < 1e-12);
    }

    #[test]
    fn directed_three_cycle_is_uniform() {
        let g = load("0 1\n1 2\n2 0\n", true);
        let c = power_iteration(&g, &PowerConfig::default()).unwrap();
        assert!(c.converged);
        let expected = 1.0 / 3.0f64.sqrt();
        for x in &c.values {
            assert!((x - expected).abs() < 1e-12);
        }
        assert!((c.eigenvalue - 1.0).abs() < 1e-12);
    }

    #[test]
    fn norm_is_one_and_entries_nonnegative() {
        let g = crate::graph::generate_er(80, 0.08, true, 11).unwrap();
        let (scc, _) = g.largest_strongly_connected_component().unwrap();
        let c = power_iteration(&scc, &PowerConfig::default()).unwrap();
        let norm: f64 = c.values.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!(c.values.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn edgeless_graph_has_no_dominant_eigenpair() {
        let g = crate::graph::generate_er(5, 0.0, true, 1).unwrap();
        let err = power_iteration(&g, &PowerConfig::default()).unwrap_err();
        assert!(err.to_string().contains("no dominant eigenpair"));
    }

    #[test]
    fn nilpotent_adjacency_is_reported() {
        // 0 -> 1: one step kills all mass at unsourced nodes, the next
        // kills everything.
        let g = load("0 1\n", true);
        let err = power_iteration(&g, &PowerConfig::default()).unwrap_err();
        assert!(err.to_string().contains("no dominant eigenpair"));
    }

    #[test]
    fn scale_invariance_of_values() {
        let text = "0 1 1.5\n1 2 0.5\n2 0 2.25\n0 2 1.0\n";
        let g1 = load_edge_list_from_reader(text.as_bytes(), true, true, MergePolicy::Sum).unwrap();
        // Same graph with every weight tripled.
        let scaled = "0 1 4.5\n1 2 1.5\n2 0 6.75\n0 2 3.0\n";
        let g3 = load_edge_list_from_reader(scaled.as_bytes(), true, true, MergePolicy::Sum).unwrap();
        let c1 = power_iteration(&g1, &PowerConfig::default()).unwrap();
        let c3 = power_iteration(&g3, &PowerConfig::default()).unwrap();
        for (a, b) in c1.values.iter().zip(&c3.values) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!((c3.eigenvalue - 3.0 * c1.eigenvalue).abs() < 1e-9 * c3.eigenvalue.max(1.0));
    }

    #[test]
    fn seed_independence_on_irreducible_graphs() {
        let g = crate::graph::generate_er(60, 0.15, true, 21).unwrap();
        let (scc, _) = g.largest_strongly_connected_component().unwrap();
        assert!(scc.n() > 50, "test graph should be essentially strongly connected");
        let base = power_iteration(&scc, &PowerConfig::default()).unwrap();
        for seed in [1u64, 2, 3] {
            let cfg = PowerConfig { start: StartVector::RandomPositive { seed }, ..Default::default() };
            let c = power_iteration(&scc, &cfg).unwrap();
            assert!(sine_distance(&base.values, &c.values).unwrap() < 1e-8);
        }
    }

    #[test]
    fn converged_runs_satisfy_residual_bound() {
        for seed in 0..5u64 {
            let g = crate::graph::generate_er(50, 0.12, true, 400 + seed).unwrap();
            let (scc, _) = g.largest_strongly_connected_component().unwrap();
            if scc.arc_count() == 0 {
                continue;
            }
            let cfg = PowerConfig::default();
            let c = power_iteration(&scc, &cfg).unwrap();
            if !c.converged {
                continue;
            }
            // ‖A·v − λv‖₂ / λ ≤ 10·tol
            let n = scc.n();
            let mut av = vec![0.0; n];
            for i in 0..n {
                av[i] = scc
                    .in_edges(NodeId(i as u32))
                    .map(|(j, w)| w * c.values[j.index()])
                    .sum();
            }
            let resid: f64 = av
                .iter()
                .zip(&c.values)
                .map(|(a, v)| (a - c.eigenvalue * v).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(resid / c.eigenvalue <= 10.0 * cfg.tol, "residual {resid}");
        }
    }

    #[test]
    fn sine_distance_basics() {
        assert_eq!(sine_distance(&[1.0, 2.0], &[2.0, 4.0]).unwrap(), 0.0);
        assert_eq!(sine_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        // Orientation is ignored.
        assert!(sine_distance(&[1.0, 1.0], &[-1.0, -1.0]).unwrap() < 1e-15);
        assert!(sine_distance(&[0.0, 0.0], &[1.0, 0.0]).is_err());
        assert!(sine_distance(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn sine_distance_resolves_tiny_angles() {
        // Perturb a unit vector by 1e-9 in an orthogonal direction: the
        // sine must come out near 1e-9 instead of collapsing to 0.
        let u = [1.0, 0.0];
        let v = [1.0, 1e-9];
        let s = sine_distance(&u, &v).unwrap();
        assert!((s - 1e-9).abs() < 1e-15, "sine {s}");
    }

    #[test]
    fn restrict_examples() {
        let v = [0.1, 0.2, 0.3, 0.4];
        let all: Vec<NodeId> = (0..4).map(NodeId).collect();
        assert_eq!(restrict(&v, &all), v.to_vec());
        assert_eq!(restrict(&v, &[NodeId(2)]), vec![0.3]);
        // Order and duplicates are canonicalized.
        assert_eq!(restrict(&v, &[NodeId(3), NodeId(0), NodeId(3)]), vec![0.1, 0.4]);
    }
}
