//! A-posteriori quality certificate for a sampled subgraph.
//!
//! After sampling, the angle between the full-graph centrality vector
//! (restricted to the sample) and the centrality vector of the induced
//! subgraph is bounded by a computable quantity:
//!
//! ```text
//! sin ∠(P_m μ, μ̃)  ≤  (γ / separation) · tangent
//! ```
//!
//! where `γ` is the largest singular value of the outside→inside adjacency
//! block, `tangent` measures how much centrality mass the sample fails to
//! capture, and `separation` is the smallest singular value of
//! `(A_m − λI)·Q` with `Q` an orthonormal basis of the hyperplane
//! orthogonal to `μ̃` and `λ` the *full-graph* dominant eigenvalue.
//!
//! `γ` and the certificate's left-hand side scale to large graphs
//! (matrix-free power iteration); the separation term requires a dense
//! factorization of the induced block and is gated behind a node-count
//! limit so the diagnostic cannot accidentally allocate an `n×n` matrix
//! on a huge input.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::spectral::{restrict, sine_distance};

/// Largest graph (node count) for which the dense separation factorization
/// is attempted by default. Override per call with
/// [`verify_bound_with_limit`] / [`compute_separation`]'s `dense_limit`.
pub const DEFAULT_DENSE_LIMIT: usize = 2000;

/// Convergence tolerance of the singular-value power iteration in
/// [`compute_gamma`]: stop when the iterate moves less than this in L2.
const GAMMA_TOL: f64 = 1e-10;

/// Hard iteration cap for [`compute_gamma`].
const GAMMA_MAX_ITERS: usize = 100_000;

/// Slack added to the right-hand side before declaring the certificate
/// violated, absorbing floating-point noise in either side.
const BOUND_SLACK: f64 = 1e-8;

/// Dominant eigenpair of an irreducible graph, for certificate use.
///
/// The sampling pipeline's centrality solver iterates on the bare
/// adjacency and honestly reports oscillation on periodic structure
/// (an irreducible graph can still be periodic — any bipartite undirected
/// graph is — and there the unshifted iterate flips between two
/// directions forever). That telemetry is the right behavior for scoring
/// samples, but this module needs the actual eigenvector: the certificate
/// is only meaningful against the true `μ` and `μ̃`. Iterating on
/// `A + I` instead makes the matrix primitive without moving any
/// eigenvector, so the iteration always converges on irreducible input;
/// the returned eigenvalue is still measured against the unshifted `A`.
fn perron_vector(g: &Graph) -> Result<(Vec<f64>, f64)> {
    let n = g.n();
    if g.arc_count() == 0 {
        return Err(Error::Numerical(
            "no dominant eigenpair: graph has no edges".into(),
        ));
    }
    let apply = |v: &[f64], out: &mut [f64]| {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = g
                .in_edges(NodeId(i as u32))
                .map(|(j, w)| w * v[j.index()])
                .sum::<f64>();
        }
    };
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    for _ in 0..GAMMA_MAX_ITERS {
        apply(&v, &mut next);
        let mut norm_sq = 0.0;
        for (x, old) in next.iter_mut().zip(v.iter()) {
            *x += old; // the +I shift
            norm_sq += *x * *x;
        }
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            return Err(Error::Numerical(
                "no dominant eigenpair: iterate collapsed to zero".into(),
            ));
        }
        let mut diff_sq = 0.0;
        for (x, old) in next.iter_mut().zip(v.iter()) {
            *x /= norm;
            let d = *x - old;
            diff_sq += d * d;
        }
        std::mem::swap(&mut v, &mut next);
        if diff_sq.sqrt() < 1e-10 {
            apply(&v, &mut next);
            let lambda = l2_norm(&next);
            return Ok((v, lambda));
        }
    }
    Err(Error::Numerical(
        "centrality iteration for the certificate did not converge".into(),
    ))
}

/// Outcome of [`verify_bound`]: every quantity in the certificate, plus
/// whether the inequality held.
///
/// When the certificate's hypotheses fail (`applicable == false`) the
/// numeric fields are `NaN` and `reason` says why. Serialized with
/// `serde_json`, non-finite numbers (`NaN`, the `separation == 0` case's
/// infinite `rhs_bound`) become `null`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    /// False when a hypothesis of the certificate fails (reducible graph,
    /// reducible induced subgraph, or a sample too small to carry an angle).
    pub applicable: bool,
    /// Human-readable explanation when `applicable` is false.
    pub reason: Option<String>,
    /// Largest singular value of the outside→inside adjacency block.
    pub gamma: f64,
    /// √(mass outside the sample / mass inside), from the full centrality.
    pub tangent: f64,
    /// Smallest singular value of `(A_m − λI)·Q`.
    pub separation: f64,
    /// Measured sine of the angle between the restricted full centrality
    /// and the induced-subgraph centrality.
    pub lhs_sine: f64,
    /// `(gamma / separation) · tangent`; `+∞` when `separation == 0`.
    pub rhs_bound: f64,
    /// `lhs_sine ≤ rhs_bound + 1e−8`.
    pub holds: bool,
}

/// Validates a sample against a graph of `n` nodes and returns it as a
/// sorted, deduplicated id list.
fn canonical_sample(n: usize, sample: &[NodeId]) -> Result<Vec<u32>> {
    if sample.is_empty() {
        return Err(Error::InvalidArgument(
            "sample must contain at least one node".into(),
        ));
    }
    let mut ids: Vec<u32> = Vec::with_capacity(sample.len());
    for &v in sample {
        if v.index() >= n {
            return Err(Error::InvalidArgument(format!(
                "sample node {v} out of range for a graph of {n} nodes"
            )));
        }
        ids.push(v.0);
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Largest singular value of the outside→inside block `B`, where
/// `B[i, l] = w(l → i)` for sample node `i` and exterior node `l`.
///
/// Matrix-free: power iteration on `x ↦ Bᵀ(Bx)` touching only the
/// in-edges of sample members and the out-edges of exterior nodes, so the
/// cost per sweep is linear in the number of edges incident to the cut.
/// Returns `0.0` when the sample covers the whole graph or the block is
/// all zeros.
///
/// Iteration stops when the normalized iterate moves less than `1e−10`
/// in L2; a secondary stop fires when the singular-value estimate has
/// been stationary to relative `1e−13` for many consecutive sweeps, which
/// catches blocks whose top two singular values coincide (the iterate may
/// then rotate forever inside the top singular subspace while `σ` is
/// already exact).
pub fn compute_gamma(g: &Graph, sample: &[NodeId]) -> Result<f64> {
    let ids = canonical_sample(g.n(), sample)?;
    let n = g.n();
    if ids.len() == n {
        return Ok(0.0);
    }

    let mut is_member = vec![false; n];
    for &v in &ids {
        is_member[v as usize] = true;
    }
    // Positions of each node in the member / exterior coordinate systems.
    let mut mem_pos = vec![usize::MAX; n];
    for (r, &v) in ids.iter().enumerate() {
        mem_pos[v as usize] = r;
    }
    let exterior: Vec<u32> = (0..n as u32).filter(|&v| !is_member[v as usize]).collect();
    let mut ext_pos = vec![usize::MAX; n];
    for (c, &v) in exterior.iter().enumerate() {
        ext_pos[v as usize] = c;
    }

    let ne = exterior.len();
    let mut x = vec![1.0 / (ne as f64).sqrt(); ne];
    let mut y = vec![0.0; ids.len()];
    let mut sigma = 0.0;
    let mut sigma_prev = f64::NAN;
    let mut stagnant = 0usize;

    for iter in 0..GAMMA_MAX_ITERS {
        // y = B·x  (one entry per sample member, from its exterior in-edges).
        for (r, &i) in ids.iter().enumerate() {
            let mut acc = 0.0;
            for (l, w) in g.in_edges(NodeId(i)) {
                let c = ext_pos[l.index()];
                if c != usize::MAX {
                    acc += w * x[c];
                }
            }
            y[r] = acc;
        }
        // ‖x‖ = 1, so ‖Bx‖ estimates σ₁ directly.
        sigma = l2_norm(&y);
        if sigma == 0.0 {
            // x is positive in every coordinate on the first sweep, so a
            // zero image there means B itself is zero; later sweeps keep
            // x in the row space of B, where Bx = 0 forces σ = 0 too.
            return Ok(0.0);
        }

        // z = Bᵀ·y over exterior coordinates, normalized in place.
        let mut z = vec![0.0; ne];
        for (c, &l) in exterior.iter().enumerate() {
            let mut acc = 0.0;
            for (t, w) in g.out_edges(NodeId(l)) {
                let r = mem_pos[t.index()];
                if r != usize::MAX {
                    acc += w * y[r];
                }
            }
            z[c] = acc;
        }
        let zn = l2_norm(&z);
        if zn == 0.0 {
            // Cannot happen while σ > 0 (xᵀBᵀBx = σ² > 0), but guard the
            // division anyway.
            return Ok(0.0);
        }
        let mut diff_sq = 0.0;
        for (zc, xc) in z.iter_mut().zip(x.iter()) {
            *zc /= zn;
            let d = *zc - xc;
            diff_sq += d * d;
        }
        let converged = diff_sq.sqrt() <= GAMMA_TOL;

        if (sigma - sigma_prev).abs() <= 1e-13 * sigma.max(1.0) {
            stagnant += 1;
        } else {
            stagnant = 0;
        }
        sigma_prev = sigma;
        x = z;

        if converged || (iter >= 32 && stagnant >= 16) {
            return Ok(sigma);
        }
    }
    let _ = sigma;
    Err(Error::Numerical(
        "singular-value power iteration for gamma did not converge".into(),
    ))
}

/// √(centrality mass outside the sample / centrality mass inside), where
/// mass is the sum of squared entries of `values` (one entry per node).
///
/// This is the tangent of the angle between the full centrality vector and
/// the sample's coordinate subspace. Errors when the sample carries no
/// mass at all (the angle is then 90° and the tangent undefined).
pub fn compute_tangent(values: &[f64], sample: &[NodeId]) -> Result<f64> {
    let ids = canonical_sample(values.len(), sample)?;
    let mut is_member = vec![false; values.len()];
    for &v in &ids {
        is_member[v as usize] = true;
    }
    let mut inside = 0.0;
    let mut outside = 0.0;
    for (i, &x) in values.iter().enumerate() {
        if is_member[i] {
            inside += x * x;
        } else {
            outside += x * x;
        }
    }
    if inside <= 0.0 {
        return Err(Error::Numerical(
            "tangent undefined: the sample carries no centrality mass".into(),
        ));
    }
    Ok((outside / inside).sqrt())
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `u`,
/// as the `m×(m−1)` matrix of the last `m−1` columns of a Householder
/// reflector mapping `u` to `±e₁`.
///
/// The reflector direction is `u + sign(u₀)·e₁`, whose norm is bounded
/// below by 1, so the construction never cancels catastrophically.
fn orthonormal_complement_basis(u: &DVector<f64>) -> DMatrix<f64> {
    let m = u.len();
    debug_assert!(m >= 2, "complement basis needs dimension ≥ 2");
    let s = if u[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut w = u.clone();
    w[0] += s;
    let wn = w.norm();
    let h = if wn < 1e-12 {
        // Only reachable if u ≈ 0, which callers exclude; the identity's
        // trailing columns are still a valid orthonormal set.
        DMatrix::identity(m, m)
    } else {
        let v = w / wn;
        DMatrix::identity(m, m) - 2.0 * &v * v.transpose()
    };
    h.columns(1, m - 1).into_owned()
}

/// Smallest singular value of `(A_m − λI)·Q`, where `A_m` is the dense
/// adjacency block induced by `sample` (entry `(r, c)` is the weight of
/// the edge `sample[c] → sample[r]` in sorted-sample order), `λ` is the
/// full-graph dominant eigenvalue, and `Q` spans the hyperplane
/// orthogonal to `mu_tilde` (the induced subgraph's centrality, indexed
/// in the same sorted-sample order; any nonzero scaling is accepted).
///
/// Dense by construction: errors when the graph exceeds `dense_limit`
/// nodes rather than allocating a huge factorization.
pub fn compute_separation(
    g: &Graph,
    sample: &[NodeId],
    lambda: f64,
    mu_tilde: &[f64],
    dense_limit: usize,
) -> Result<f64> {
    if g.n() > dense_limit {
        return Err(Error::InvalidArgument(format!(
            "separation is a dense diagnostic: graph has {} nodes, limit is {dense_limit}",
            g.n()
        )));
    }
    let ids = canonical_sample(g.n(), sample)?;
    let m = ids.len();
    if m < 2 {
        return Err(Error::InvalidArgument(
            "separation needs a sample of at least 2 nodes".into(),
        ));
    }
    if mu_tilde.len() != m {
        return Err(Error::InvalidArgument(format!(
            "mu_tilde has {} entries but the sample has {m} nodes",
            mu_tilde.len()
        )));
    }
    if !lambda.is_finite() {
        return Err(Error::InvalidArgument(
            "lambda must be finite".into(),
        ));
    }
    let u = DVector::from_column_slice(mu_tilde);
    let un = u.norm();
    if !un.is_finite() || un == 0.0 {
        return Err(Error::InvalidArgument(
            "mu_tilde must be a nonzero finite vector".into(),
        ));
    }
    let u = u / un;

    let mut a_m = DMatrix::zeros(m, m);
    for (c, &j) in ids.iter().enumerate() {
        for (t, w) in g.out_edges(NodeId(j)) {
            if let Ok(r) = ids.binary_search(&t.0) {
                a_m[(r, c)] = w;
            }
        }
    }
    for r in 0..m {
        a_m[(r, r)] -= lambda;
    }

    let q = orthonormal_complement_basis(&u);
    let projected = a_m * q;
    let sv = projected.singular_values();
    Ok(sv.iter().fold(f64::INFINITY, |a, &b| a.min(b)))
}

/// Checks the singular-value comparison underlying the γ-greedy step:
/// given nonnegative matrices of equal shape with `BᵀB ≤ CᵀC` entrywise,
/// the largest singular value of `B` must not exceed that of `C`.
///
/// Errors when the inputs violate the preconditions (shape mismatch, a
/// negative or non-finite entry, or the Gram comparison failing); returns
/// whether `σ₁(B) ≤ σ₁(C)` up to `1e−10` slack otherwise.
pub fn singular_value_monotonicity_check(b: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<bool> {
    if b.shape() != c.shape() {
        return Err(Error::InvalidArgument(format!(
            "shape mismatch: {:?} vs {:?}",
            b.shape(),
            c.shape()
        )));
    }
    if b.iter().chain(c.iter()).any(|&x| !x.is_finite() || x < 0.0) {
        return Err(Error::InvalidArgument(
            "matrices must be entrywise nonnegative and finite".into(),
        ));
    }
    let btb = b.transpose() * b;
    let ctc = c.transpose() * c;
    for (x, y) in btb.iter().zip(ctc.iter()) {
        if *x > *y + 1e-12 {
            return Err(Error::InvalidArgument(
                "precondition failed: BᵀB must be entrywise ≤ CᵀC".into(),
            ));
        }
    }
    let sb = b.singular_values().iter().fold(0.0f64, |a, &s| a.max(s));
    let sc = c.singular_values().iter().fold(0.0f64, |a, &s| a.max(s));
    Ok(sb <= sc + 1e-10)
}

/// Evaluates the sampling-quality certificate for `sample` on `g` with the
/// default dense-size limit. See [`verify_bound_with_limit`].
pub fn verify_bound(g: &Graph, sample: &[NodeId]) -> Result<BoundReport> {
    verify_bound_with_limit(g, sample, DEFAULT_DENSE_LIMIT)
}

/// Evaluates the sampling-quality certificate for `sample` on `g`.
///
/// Computes every quantity of the inequality — measured sine on the left,
/// `(γ/separation)·tangent` on the right — and reports whether it held
/// (with `1e−8` slack; a zero separation makes the right side `+∞`, which
/// holds vacuously). The certificate's hypotheses require the graph and
/// the induced sample subgraph to be irreducible and the sample to span
/// an angle at all (at least 2 nodes); when violated the report comes
/// back `applicable: false` with a reason instead of an error, since an
/// inapplicable certificate is a legitimate outcome of a sampling run.
///
/// The separation factorization is dense; graphs above `dense_limit`
/// nodes are rejected with an error before any allocation.
pub fn verify_bound_with_limit(
    g: &Graph,
    sample: &[NodeId],
    dense_limit: usize,
) -> Result<BoundReport> {
    let ids = canonical_sample(g.n(), sample)?;
    if g.n() > dense_limit {
        return Err(Error::InvalidArgument(format!(
            "certificate needs a dense factorization: graph has {} nodes, limit is {dense_limit}",
            g.n()
        )));
    }
    let nodes: Vec<NodeId> = ids.iter().map(|&v| NodeId(v)).collect();

    let not_applicable = |reason: &str| BoundReport {
        applicable: false,
        reason: Some(reason.to_string()),
        gamma: f64::NAN,
        tangent: f64::NAN,
        separation: f64::NAN,
        lhs_sine: f64::NAN,
        rhs_bound: f64::NAN,
        holds: false,
    };

    if nodes.len() < 2 {
        return Ok(not_applicable(
            "sample has fewer than 2 distinct nodes, so it spans no angle",
        ));
    }
    if !g.is_strongly_connected() {
        return Ok(not_applicable(
            "graph is reducible: dominant centrality is not unique",
        ));
    }
    let (induced, _) = g.induced_subgraph(&nodes)?;
    if !induced.is_strongly_connected() {
        return Ok(not_applicable(
            "induced sample subgraph is reducible: its centrality is not unique",
        ));
    }

    let (mu, lambda) = perron_vector(g)?;
    let (mu_tilde, _lambda_tilde) = perron_vector(&induced)?;

    let lhs_sine = sine_distance(&restrict(&mu, &nodes), &mu_tilde)?;
    let gamma = compute_gamma(g, &nodes)?;
    let tangent = compute_tangent(&mu, &nodes)?;
    let separation = compute_separation(g, &nodes, lambda, &mu_tilde, dense_limit)?;
    let rhs_bound = if separation > 0.0 {
        gamma / separation * tangent
    } else {
        f64::INFINITY
    };
    let holds = lhs_sine <= rhs_bound + BOUND_SLACK;

    Ok(BoundReport {
        applicable: true,
        reason: None,
        gamma,
        tangent,
        separation,
        lhs_sine,
        rhs_bound,
        holds,
    })
}
