//! Independent reference computations ("oracles") for the acceptance suite.
//!
//! Everything here deliberately avoids the library's own algorithmic paths:
//! eigenpairs come from a dense eigenvalue solve plus LU-based inverse
//! iteration (not power iteration), block norms from dense SVD, the
//! selection score from explicit dense block materialization, and rank
//! correlations from O(n²) pair enumeration. Agreement between these and
//! the library is therefore evidence, not circularity.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use tcec_core::graph::{Graph, GraphBuilder, MergePolicy, NodeId};

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Graph construction helpers

/// Random directed graph with independent arcs of probability `p` and
/// weights uniform in [0.1, 2.0); labels are `"0"..="n-1"` so `NodeId(k)`
/// is the node labeled `k`.
pub fn random_weighted_digraph(n: u32, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut b = GraphBuilder::new(true, MergePolicy::Sum);
    for v in 0..n {
        b.add_node(&v.to_string());
    }
    for s in 0..n {
        for t in 0..n {
            if s != t && r.gen::<f64>() < p {
                let w = 0.1 + 1.9 * r.gen::<f64>();
                b.add_edge(&s.to_string(), &t.to_string(), w).unwrap();
            }
        }
    }
    b.build().unwrap()
}

/// Largest strongly connected piece of a random weighted digraph, retrying
/// seeds until it has at least `min_n` nodes. The result is an irreducible
/// nonnegative matrix in graph form.
pub fn random_irreducible_graph(n: u32, p: f64, seed: u64, min_n: usize) -> Graph {
    for attempt in 0..200 {
        let g = random_weighted_digraph(n, p, seed.wrapping_add(attempt * 1_000_003));
        if let Ok((scc, _)) = g.largest_strongly_connected_component() {
            if scc.n() >= min_n {
                return scc;
            }
        }
    }
    panic!("no {min_n}-node strongly connected subgraph found near seed {seed}");
}

// ---------------------------------------------------------------------------
// Dense linear-algebra oracles

/// Dense adjacency with the library's orientation: entry `(t, s)` is the
/// weight of the arc `s -> t`, so matrix–vector products push mass along
/// incoming edges.
pub fn dense_adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut a = DMatrix::zeros(n, n);
    for s in g.node_ids() {
        for (t, w) in g.out_edges(s) {
            a[(t.index(), s.index())] = w;
        }
    }
    a
}

/// Dominant eigenpair of a nonnegative irreducible matrix by dense means:
/// the eigenvalue is the largest-modulus root of the characteristic
/// polynomial (Perron: real and nonnegative), the vector comes from
/// LU-based inverse iteration with a shift just above the spectral radius.
/// Returns a unit vector oriented to nonnegative sum.
pub fn dense_dominant_eigenpair(a: &DMatrix<f64>) -> (Vec<f64>, f64) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "square matrix required");
    let eigs = a.complex_eigenvalues();
    let lambda = {
        let top = eigs
            .iter()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .expect("nonempty spectrum");
        assert!(
            top.im.abs() <= 1e-8 * top.norm().max(1.0),
            "dominant eigenvalue should be real, got {top}"
        );
        top.norm()
    };

    // sigma > rho(A) can never be an eigenvalue, so A - sigma*I is regular.
    let sigma = lambda + 1e-8 * lambda.max(1.0);
    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] -= sigma;
    }
    let lu = shifted.lu();
    let mut x = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    for _ in 0..500 {
        let mut y = lu.solve(&x).expect("shifted matrix is regular");
        // The working eigenvalue of the inverse is negative, so each solve
        // flips the sign; re-orient before measuring progress.
        if y.sum() < 0.0 {
            y.neg_mut();
        }
        y /= y.norm();
        let residual = (a * &y - lambda * &y).norm();
        x = y;
        if residual <= 1e-12 * lambda.max(1.0) {
            break;
        }
    }
    let residual = (a * &x - lambda * &x).norm();
    assert!(
        residual <= 1e-9 * lambda.max(1.0),
        "inverse iteration stalled: residual {residual}"
    );
    (x.iter().copied().collect(), lambda)
}

/// Angle-based distance between two directions, exact for small angles:
/// with both inputs normalized, the norm of the component of `v`
/// orthogonal to `u`.
pub fn sine_between(u: &[f64], v: &[f64]) -> f64 {
    let nu = DVector::from_column_slice(u).normalize();
    let nv = DVector::from_column_slice(v).normalize();
    let dot = nu.dot(&nv);
    (&nv - nu * dot).norm().min(1.0)
}

/// Largest singular value by dense SVD.
pub fn max_singular_value(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.singular_values().iter().fold(0.0f64, |acc, &s| acc.max(s))
}

/// Dense exterior→sample block: rows follow `members` (ascending ids),
/// columns the remaining nodes in ascending order; entry `(r, c)` is the
/// weight of the arc from exterior node `c` into member `r`.
pub fn dense_outside_in_block(g: &Graph, members: &[NodeId]) -> DMatrix<f64> {
    let inside: Vec<bool> = {
        let mut v = vec![false; g.n()];
        for m in members {
            v[m.index()] = true;
        }
        v
    };
    let exterior: Vec<NodeId> = g.node_ids().filter(|v| !inside[v.index()]).collect();
    let mut b = DMatrix::zeros(members.len(), exterior.len());
    for (c, &l) in exterior.iter().enumerate() {
        for (r, &i) in members.iter().enumerate() {
            b[(r, c)] = g.weight(l, i);
        }
    }
    b
}

/// Candidate score recomputed from explicitly materialized dense blocks:
/// `‖b₁‖² + ‖b₁ᵀU‖² − ‖b₃‖²`, where `b₁` holds the candidate's arc weights
/// into the members, `U` the other exterior nodes' arc weights into the
/// members, and `b₃` the exterior arc weights into the candidate.
pub fn dense_candidate_score(g: &Graph, members: &[NodeId], j: NodeId) -> f64 {
    let inside: Vec<bool> = {
        let mut v = vec![false; g.n()];
        for m in members {
            v[m.index()] = true;
        }
        v
    };
    assert!(!inside[j.index()], "candidate must be exterior");
    let others: Vec<NodeId> = g
        .node_ids()
        .filter(|&v| !inside[v.index()] && v != j)
        .collect();

    let b1 = DVector::from_iterator(members.len(), members.iter().map(|&i| g.weight(j, i)));
    let mut u = DMatrix::zeros(members.len(), others.len());
    for (c, &l) in others.iter().enumerate() {
        for (r, &i) in members.iter().enumerate() {
            u[(r, c)] = g.weight(l, i);
        }
    }
    let b3 = DVector::from_iterator(others.len(), others.iter().map(|&l| g.weight(l, j)));

    let b1t_u = u.transpose() * &b1;
    b1.norm_squared() + b1t_u.norm_squared() - b3.norm_squared()
}

// ---------------------------------------------------------------------------
// Rank-statistic oracles

/// Tie-corrected Kendall correlation by O(n²) pair enumeration. `None`
/// when either input is constant (the statistic is undefined).
pub fn brute_kendall(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    let (mut conc, mut disc, mut tie_x, mut tie_y) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = x[i].total_cmp(&x[j]);
            let dy = y[i].total_cmp(&y[j]);
            if dx.is_eq() {
                tie_x += 1;
            }
            if dy.is_eq() {
                tie_y += 1;
            }
            if dx.is_eq() || dy.is_eq() {
                continue;
            }
            if dx == dy {
                conc += 1;
            } else {
                disc += 1;
            }
        }
    }
    let n0 = (n * (n - 1) / 2) as i64;
    let (fx, fy) = (n0 - tie_x, n0 - tie_y);
    if fx == 0 || fy == 0 {
        return None;
    }
    Some((conc - disc) as f64 / ((fx as f64) * (fy as f64)).sqrt())
}

/// Mean ranks with ties sharing their average position.
fn average_ranks(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && x[idx[j + 1]] == x[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman correlation as the Pearson correlation of mean ranks. `None`
/// when either rank vector is constant.
pub fn brute_spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(ry.iter()) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx * vy).sqrt())
}

// ---------------------------------------------------------------------------
// Small numerics

pub fn median(values: &mut [u64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_unstable();
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2] as f64
    } else {
        (values[n / 2 - 1] as f64 + values[n / 2] as f64) / 2.0
    }
}
