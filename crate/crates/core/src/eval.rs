//! Sample-quality metrics and the experiment harness.
//!
//! A sample is judged by how well the eigenvector centrality computed on
//! its induced subgraph reproduces the true centrality of the full graph,
//! restricted to the sampled nodes: global Kendall/Spearman rank
//! correlations, the same statistics over a moving window down the true
//! ranking (which exposes where in the ranking the estimate degrades),
//! and the sine of the angle between the two vectors.
//!
//! [`run_experiment`] sweeps (sampler × ratio × repetition) cells in
//! parallel with per-cell derived seeds, collects per-run rows, and
//! aggregates them into mean ± std tables with a best-random-walk summary
//! column.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::baselines::{
    bfs_sample, expansion_sample, forest_fire_sample, random_walk_sample, snowball_sample,
    uniform_sample, WalkVariant,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sample::SampleState;
use crate::seeding::{derive_seed, hash_tag, rng_from_seed};
use crate::spectral::{power_iteration, restrict, sine_distance, CentralityVector, PowerConfig};
use crate::tcec::{tcec_sample, TcecConfig};

/// Which rank statistic a windowed computation should use.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RankStat {
    Kendall,
    Spearman,
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "correlation inputs differ in length: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::Undefined(
            "undefined correlation: need at least 2 observations".into(),
        ));
    }
    if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "correlation inputs must be finite".into(),
        ));
    }
    Ok(())
}

/// Number of tied pairs `Σ t·(t−1)/2` over runs of equal values in a
/// sorted slice, where equality is tested by `eq` on positions.
fn tied_pairs(order: &[usize], eq: impl Fn(usize, usize) -> bool) -> u64 {
    let mut total = 0u64;
    let mut run = 1u64;
    for w in order.windows(2) {
        if eq(w[0], w[1]) {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total + run * (run - 1) / 2
}

/// Merge sort over `vals` counting strict inversions (pairs appearing in
/// descending order); equal values merge stably without counting.
fn count_inversions(vals: &mut [f64]) -> u64 {
    let n = vals.len();
    if n < 2 {
        return 0;
    }
    let mut buf = vals.to_vec();
    let mut width = 1;
    let mut inversions = 0u64;
    while width < n {
        let mut lo = 0;
        while lo + width < n {
            let mid = lo + width;
            let hi = (mid + width).min(n);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            while i < mid && j < hi {
                if vals[i] <= vals[j] {
                    buf[k] = vals[i];
                    i += 1;
                } else {
                    buf[k] = vals[j];
                    j += 1;
                    inversions += (mid - i) as u64;
                }
                k += 1;
            }
            buf[k..hi].copy_from_slice(if i < mid { &vals[i..mid] } else { &vals[j..hi] });
            vals[lo..hi].copy_from_slice(&buf[lo..hi]);
            lo = hi;
        }
        width *= 2;
    }
    inversions
}

/// Kendall's rank correlation with tie correction (the τ-b variant):
/// `(C − D) / √((C+D+Tx)(C+D+Ty))` where `C`/`D` count concordant and
/// discordant pairs and `Tx`/`Ty` count pairs tied in only one argument.
///
/// Runs in `O(n log n)`: one sort by `(x, y)` plus an inversion-counting
/// merge sort over the `y` sequence.
///
/// Errors with "undefined correlation" when either input is constant
/// (every pair tied — the statistic has a zero denominator); such cells
/// surface as NA in reports rather than crashing an experiment.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| x[a].total_cmp(&x[b]).then(y[a].total_cmp(&y[b])));

    let n0 = (n as u64) * (n as u64 - 1) / 2;
    let ties_x = tied_pairs(&order, |a, b| x[a] == x[b]);
    let ties_xy = tied_pairs(&order, |a, b| x[a] == x[b] && y[a] == y[b]);

    let mut y_seq: Vec<f64> = order.iter().map(|&i| y[i]).collect();
    let swaps = count_inversions(&mut y_seq);
    // y_seq is now sorted, so y-tie runs are contiguous.
    let ties_y = {
        let idx: Vec<usize> = (0..n).collect();
        tied_pairs(&idx, |a, b| y_seq[a] == y_seq[b])
    };

    if ties_x == n0 || ties_y == n0 {
        return Err(Error::Undefined(
            "undefined correlation: constant input".into(),
        ));
    }
    let concordant_minus_discordant =
        n0 as i64 - ties_x as i64 - ties_y as i64 + ties_xy as i64 - 2 * swaps as i64;
    let denom = (((n0 - ties_x) as f64) * ((n0 - ties_y) as f64)).sqrt();
    Ok((concordant_minus_discordant as f64 / denom).clamp(-1.0, 1.0))
}

/// Average ranks (1-based; tied values share the mean of their positions).
fn mean_ranks(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && v[order[end]] == v[order[start]] {
            end += 1;
        }
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Spearman's rank correlation: Pearson correlation of the average-ranked
/// inputs (ties receive their mean rank). Same error cases as
/// [`kendall_tau`].
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    let rx = mean_ranks(x);
    let ry = mean_ranks(y);
    let n = rx.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (a, b) in rx.iter().zip(ry.iter()) {
        let da = a - mx;
        let db = b - my;
        cov += da * db;
        var_x += da * da;
        var_y += db * db;
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(Error::Undefined(
            "undefined correlation: constant input".into(),
        ));
    }
    Ok((cov / (var_x * var_y).sqrt()).clamp(-1.0, 1.0))
}

/// Rank correlation down the true ranking, in a sliding window.
///
/// Positions are ordered by `truth` descending (ties broken by position
/// ascending, so the order is total and deterministic), the window holds
/// `max(2, ⌊window_frac·m⌋)` consecutive positions, and it slides one
/// position at a time. Windows where either slice is constant are skipped
/// — their statistic is undefined — and counted. Returns the mean over
/// computed windows and the skipped count.
///
/// Errors when the inputs are shorter than 10 (too few nodes for a
/// meaningful window sweep), when `window_frac` is outside `(0, 1]`, or
/// with "undefined" when every window was skipped.
pub fn moving_window_stat(
    truth: &[f64],
    estimate: &[f64],
    window_frac: f64,
    stat: RankStat,
) -> Result<(f64, usize)> {
    if truth.len() != estimate.len() {
        return Err(Error::InvalidArgument(format!(
            "window inputs differ in length: {} vs {}",
            truth.len(),
            estimate.len()
        )));
    }
    let m = truth.len();
    if m < 10 {
        return Err(Error::InvalidArgument(format!(
            "moving window needs at least 10 entries, got {m}"
        )));
    }
    if !(window_frac > 0.0 && window_frac <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "window fraction must be in (0, 1], got {window_frac}"
        )));
    }
    if truth
        .iter()
        .chain(estimate.iter())
        .any(|v| !v.is_finite())
    {
        return Err(Error::InvalidArgument(
            "window inputs must be finite".into(),
        ));
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_unstable_by(|&a, &b| truth[b].total_cmp(&truth[a]).then(a.cmp(&b)));
    let w = ((window_frac * m as f64).floor() as usize).max(2);

    let is_constant = |v: &[f64]| v.iter().all(|&x| x == v[0]);
    let mut sum = 0.0;
    let mut computed = 0usize;
    let mut skipped = 0usize;
    let mut tw = vec![0.0; w];
    let mut ew = vec![0.0; w];
    for start in 0..=(m - w) {
        for (k, &pos) in order[start..start + w].iter().enumerate() {
            tw[k] = truth[pos];
            ew[k] = estimate[pos];
        }
        if is_constant(&tw) || is_constant(&ew) {
            skipped += 1;
            continue;
        }
        let value = match stat {
            RankStat::Kendall => kendall_tau(&tw, &ew)?,
            RankStat::Spearman => spearman_rho(&tw, &ew)?,
        };
        sum += value;
        computed += 1;
    }
    if computed == 0 {
        return Err(Error::Undefined(
            "undefined window statistic: every window was constant".into(),
        ));
    }
    Ok((sum / computed as f64, skipped))
}

/// Per-sample quality metrics. Undefined statistics (constant inputs, a
/// sample whose induced subgraph has no dominant eigenpair) are `NaN`
/// rather than errors: they are the NA cells of a results table, not
/// failures of the harness.
#[derive(Debug, Clone, Serialize)]
pub struct SampleEvaluation {
    pub kendall_global: f64,
    pub spearman_global: f64,
    pub kendall_window_mean: f64,
    pub spearman_window_mean: f64,
    /// Constant windows skipped during the moving-window sweep (identical
    /// for both window statistics, since the skip condition only looks at
    /// the slices).
    pub windows_skipped: usize,
    /// Sine of the angle between true and estimated centrality over the
    /// sampled coordinates.
    pub sine: f64,
    /// Whether the induced-subgraph eigenvector iteration converged;
    /// reducible or periodic induced subgraphs legitimately report false.
    pub converged_sample_eig: bool,
}

fn undefined_to_nan(r: Result<f64>) -> Result<f64> {
    match r {
        Err(Error::Undefined(_)) => Ok(f64::NAN),
        other => other,
    }
}

/// Evaluates one sample against the full graph's centrality `mu`.
///
/// Runs the (unshifted) eigenvector iteration on the induced subgraph,
/// recording its convergence flag verbatim, and compares the estimate
/// against `restrict(mu, members)` — both vectors indexed by the sorted
/// member order. Moving-window statistics need at least 10 sampled nodes;
/// smaller samples report `NaN` window means and zero skipped windows.
///
/// An induced subgraph with no dominant eigenpair at all (no edges, or a
/// nilpotent adjacency) yields a report with every metric `NaN` and
/// `converged_sample_eig: false` rather than an error: uniform samples of
/// sparse graphs hit this case routinely.
pub fn evaluate_sample(
    g: &Graph,
    mu: &CentralityVector,
    state: &SampleState,
    window_frac: f64,
) -> Result<SampleEvaluation> {
    if state.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "evaluation needs at least 2 sampled nodes, got {}",
            state.len()
        )));
    }
    if mu.values.len() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "centrality has {} entries but the graph has {} nodes",
            mu.values.len(),
            g.n()
        )));
    }
    let members = state.members_sorted();
    let (induced, _) = g.induced_subgraph(&members)?;
    let estimate = match power_iteration(&induced, &PowerConfig::default()) {
        Ok(cv) => cv,
        Err(Error::Numerical(_)) => {
            return Ok(SampleEvaluation {
                kendall_global: f64::NAN,
                spearman_global: f64::NAN,
                kendall_window_mean: f64::NAN,
                spearman_window_mean: f64::NAN,
                windows_skipped: 0,
                sine: f64::NAN,
                converged_sample_eig: false,
            })
        }
        Err(e) => return Err(e),
    };
    let truth = restrict(&mu.values, &members);

    let kendall_global = undefined_to_nan(kendall_tau(&truth, &estimate.values))?;
    let spearman_global = undefined_to_nan(spearman_rho(&truth, &estimate.values))?;
    // A zero restricted-truth vector (sample disjoint from the centrality's
    // support) makes the angle — hence the sine — undefined.
    let sine = match sine_distance(&truth, &estimate.values) {
        Ok(s) => s,
        Err(Error::InvalidArgument(_)) => f64::NAN,
        Err(e) => return Err(e),
    };

    let m = members.len();
    let (kendall_window_mean, spearman_window_mean, windows_skipped) = if m < 10 {
        (f64::NAN, f64::NAN, 0)
    } else {
        let total_windows =
            m - ((window_frac * m as f64).floor() as usize).max(2) + 1;
        let (kw, sk) = match moving_window_stat(
            &truth,
            &estimate.values,
            window_frac,
            RankStat::Kendall,
        ) {
            Ok((mean, skipped)) => (mean, skipped),
            Err(Error::Undefined(_)) => (f64::NAN, total_windows),
            Err(e) => return Err(e),
        };
        let sw = match moving_window_stat(
            &truth,
            &estimate.values,
            window_frac,
            RankStat::Spearman,
        ) {
            Ok((mean, _)) => mean,
            Err(Error::Undefined(_)) => f64::NAN,
            Err(e) => return Err(e),
        };
        (kw, sw, sk)
    };

    Ok(SampleEvaluation {
        kendall_global,
        spearman_global,
        kendall_window_mean,
        spearman_window_mean,
        windows_skipped,
        sine,
        converged_sample_eig: estimate.converged,
    })
}

/// A sampling strategy an experiment can sweep over.
#[derive(Debug, Clone, PartialEq)]
pub enum Sampler {
    Uniform,
    /// Simple random walk (next node ∝ out-edge weight).
    SimpleWalk,
    /// Metropolis–Hastings walk targeting the uniform node distribution.
    MetropolisHastings,
    /// Walk biased toward high weighted total degree.
    DegreeWeighted,
    Bfs,
    Snowball {
        branching: usize,
    },
    ForestFire {
        p_burn: f64,
    },
    Expansion,
    /// The greedy cut-minimizing sampler; `None` fields use the
    /// graph-direction-dependent defaults.
    Tcec {
        p: Option<f64>,
        alpha: Option<f64>,
    },
}

/// Default snowball branching factor (two referrals per frontier node, the
/// classic convention).
pub const DEFAULT_SNOWBALL_BRANCHING: usize = 2;
/// Default forest-fire burn probability.
pub const DEFAULT_BURN_PROBABILITY: f64 = 0.7;

impl Sampler {
    /// Stable identifier used in CSV rows, JSON keys, and the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Sampler::Uniform => "uniform",
            Sampler::SimpleWalk => "rw",
            Sampler::MetropolisHastings => "mh",
            Sampler::DegreeWeighted => "dw",
            Sampler::Bfs => "bfs",
            Sampler::Snowball { .. } => "snowball",
            Sampler::ForestFire { .. } => "forest_fire",
            Sampler::Expansion => "expansion",
            Sampler::Tcec { .. } => "tcec",
        }
    }

    /// Parses a sampler name (as produced by [`Sampler::name`]) with
    /// default parameters.
    pub fn parse(name: &str) -> Result<Sampler> {
        Ok(match name {
            "uniform" => Sampler::Uniform,
            "rw" => Sampler::SimpleWalk,
            "mh" => Sampler::MetropolisHastings,
            "dw" => Sampler::DegreeWeighted,
            "bfs" => Sampler::Bfs,
            "snowball" => Sampler::Snowball {
                branching: DEFAULT_SNOWBALL_BRANCHING,
            },
            "forest_fire" => Sampler::ForestFire {
                p_burn: DEFAULT_BURN_PROBABILITY,
            },
            "expansion" => Sampler::Expansion,
            "tcec" => Sampler::Tcec {
                p: None,
                alpha: None,
            },
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown sampler \"{other}\" (expected one of: uniform, rw, mh, dw, \
                     bfs, snowball, forest_fire, expansion, tcec)"
                )))
            }
        })
    }

    /// Draws an `m`-node sample with all randomness derived from `seed`.
    pub fn run(&self, g: &Graph, m: usize, seed: u64) -> Result<SampleState> {
        let mut rng = rng_from_seed(seed);
        match *self {
            Sampler::Uniform => uniform_sample(g, m, &mut rng),
            Sampler::SimpleWalk => random_walk_sample(g, m, WalkVariant::Simple, &mut rng),
            Sampler::MetropolisHastings => {
                random_walk_sample(g, m, WalkVariant::MetropolisHastings, &mut rng)
            }
            Sampler::DegreeWeighted => {
                random_walk_sample(g, m, WalkVariant::DegreeWeighted, &mut rng)
            }
            Sampler::Bfs => bfs_sample(g, m, &mut rng),
            Sampler::Snowball { branching } => snowball_sample(g, m, branching, &mut rng),
            Sampler::ForestFire { p_burn } => forest_fire_sample(g, m, p_burn, &mut rng),
            Sampler::Expansion => expansion_sample(g, m, &mut rng),
            Sampler::Tcec { p, alpha } => {
                let mut cfg = TcecConfig::with_defaults(g, m.max(1), seed);
                if let Some(p) = p {
                    cfg.p = p;
                }
                if let Some(alpha) = alpha {
                    cfg.alpha = alpha;
                }
                tcec_sample(g, &cfg)
            }
        }
    }
}

/// One successful experiment run: cell coordinates plus its metrics.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub sampler: String,
    pub sample_ratio: f64,
    pub repetition: u32,
    pub seed: u64,
    #[serde(flatten)]
    pub metrics: SampleEvaluation,
}

/// A run that could not produce metrics, kept for the record.
#[derive(Debug, Clone, Serialize)]
pub struct FailedRun {
    pub sampler: String,
    pub sample_ratio: f64,
    pub repetition: u32,
    pub seed: u64,
    pub reason: String,
}

/// Mean ± sample standard deviation over the runs where a metric was
/// defined. A single run has `std = 0` by convention.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CellStat {
    pub mean: f64,
    pub std: f64,
    pub n_runs: usize,
}

/// Best random-walk variant for one (ratio, metric) cell, labeled the way
/// results tables annotate it.
#[derive(Debug, Clone, Serialize)]
pub struct RwBest {
    /// "(RW)", "(MH)", or "(DW)".
    pub variant: String,
    #[serde(flatten)]
    pub stat: CellStat,
}

/// All rows and failures of one experiment sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentTable {
    /// Successful runs, in deterministic sweep order
    /// (sampler → ratio → repetition).
    pub rows: Vec<EvalReport>,
    pub failures: Vec<FailedRun>,
}

/// Metric accessors shared by the CSV writer and the aggregator. The
/// names are the CSV column names.
const METRICS: [(&str, fn(&SampleEvaluation) -> f64); 5] = [
    ("kendall_global", |m| m.kendall_global),
    ("spearman_global", |m| m.spearman_global),
    ("kendall_window", |m| m.kendall_window_mean),
    ("spearman_window", |m| m.spearman_window_mean),
    ("sine", |m| m.sine),
];

/// Header of the per-run CSV artifact.
pub const CSV_HEADER: &str = "sampler,ratio,repetition,seed,kendall_global,spearman_global,\
                              kendall_window,spearman_window,windows_skipped,sine,converged";

fn csv_cell(v: f64) -> String {
    if v.is_nan() {
        "NA".to_string()
    } else {
        format!("{v}")
    }
}

/// Deterministic key for a ratio in JSON objects and lookups.
pub fn ratio_key(ratio: f64) -> String {
    format!("{ratio}")
}

impl ExperimentTable {
    /// Per-run rows as CSV (header included), one line per successful run,
    /// undefined metrics written as `NA`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let m = &row.metrics;
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                row.sampler,
                row.sample_ratio,
                row.repetition,
                row.seed,
                csv_cell(m.kendall_global),
                csv_cell(m.spearman_global),
                csv_cell(m.kendall_window_mean),
                csv_cell(m.spearman_window_mean),
                m.windows_skipped,
                csv_cell(m.sine),
                m.converged_sample_eig,
            ));
        }
        out
    }

    /// Mean ± std per (sampler, ratio, metric), over the runs where the
    /// metric was defined. Cells with no defined value are omitted.
    pub fn cell_stats(&self) -> BTreeMap<String, BTreeMap<String, BTreeMap<String, CellStat>>> {
        let mut out: BTreeMap<String, BTreeMap<String, BTreeMap<String, CellStat>>> =
            BTreeMap::new();
        let mut groups: BTreeMap<(String, String), Vec<&SampleEvaluation>> = BTreeMap::new();
        for row in &self.rows {
            groups
                .entry((row.sampler.clone(), ratio_key(row.sample_ratio)))
                .or_default()
                .push(&row.metrics);
        }
        for ((sampler, ratio), metrics) in groups {
            for (name, get) in METRICS {
                let values: Vec<f64> =
                    metrics.iter().map(|m| get(m)).filter(|v| v.is_finite()).collect();
                if values.is_empty() {
                    continue;
                }
                let n = values.len();
                let mean = values.iter().sum::<f64>() / n as f64;
                let std = if n >= 2 {
                    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                        / (n - 1) as f64)
                        .sqrt()
                } else {
                    0.0
                };
                out.entry(sampler.clone())
                    .or_default()
                    .entry(ratio.clone())
                    .or_default()
                    .insert(name.to_string(), CellStat { mean, std, n_runs: n });
            }
        }
        out
    }

    /// Best mean among the random-walk variants per (ratio, metric) —
    /// highest for correlations, lowest for the sine distance — labeled
    /// with the winning variant.
    pub fn rw_best(&self) -> BTreeMap<String, BTreeMap<String, RwBest>> {
        const VARIANTS: [(&str, &str); 3] = [("rw", "(RW)"), ("mh", "(MH)"), ("dw", "(DW)")];
        let cells = self.cell_stats();
        let mut out: BTreeMap<String, BTreeMap<String, RwBest>> = BTreeMap::new();
        for (sampler, label) in VARIANTS {
            let Some(by_ratio) = cells.get(sampler) else {
                continue;
            };
            for (ratio, by_metric) in by_ratio {
                for (metric, stat) in by_metric {
                    let lower_is_better = metric == "sine";
                    let slot = out.entry(ratio.clone()).or_default();
                    let better = match slot.get(metric) {
                        None => true,
                        Some(current) => {
                            if lower_is_better {
                                stat.mean < current.stat.mean
                            } else {
                                stat.mean > current.stat.mean
                            }
                        }
                    };
                    if better {
                        slot.insert(
                            metric.clone(),
                            RwBest { variant: label.to_string(), stat: *stat },
                        );
                    }
                }
            }
        }
        out
    }

    /// Full aggregate as JSON: per-cell stats, the best-random-walk
    /// summary, and the failure record.
    pub fn aggregate_json(&self) -> serde_json::Value {
        json!({
            "cells": self.cell_stats(),
            "rw_best": self.rw_best(),
            "failures": {
                "count": self.failures.len(),
                "runs": self.failures,
            },
        })
    }
}

/// Sweeps every (sampler, ratio, repetition) cell: samples
/// `m = round(ratio·n)` nodes with a seed derived from
/// `(base_seed, sampler name, ratio, repetition)`, evaluates the sample,
/// and collects rows. Cells run in parallel; output order and content are
/// deterministic for a fixed input. Runs whose sampler or evaluation
/// errors are recorded as failures and excluded from aggregation.
///
/// The ground-truth centrality is computed once on `g` up front; if that
/// iteration fails to converge the whole experiment is refused, since
/// every row would be measured against a meaningless reference. Callers
/// normally pass the largest strongly connected component of their data.
pub fn run_experiment(
    g: &Graph,
    samplers: &[Sampler],
    ratios: &[f64],
    repetitions: u32,
    base_seed: u64,
    window_frac: f64,
) -> Result<ExperimentTable> {
    if samplers.is_empty() {
        return Err(Error::InvalidArgument("no samplers given".into()));
    }
    if ratios.is_empty() {
        return Err(Error::InvalidArgument("no sample ratios given".into()));
    }
    for &r in ratios {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "sample ratio must be in (0, 1], got {r}"
            )));
        }
    }
    if repetitions == 0 {
        return Err(Error::InvalidArgument(
            "need at least 1 repetition".into(),
        ));
    }
    if !(window_frac > 0.0 && window_frac <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "window fraction must be in (0, 1], got {window_frac}"
        )));
    }

    let mu = power_iteration(g, &PowerConfig::default())?;
    if !mu.converged {
        return Err(Error::Numerical(
            "ground-truth centrality did not converge on the input graph".into(),
        ));
    }

    let mut cells = Vec::new();
    for sampler in samplers {
        for &ratio in ratios {
            for repetition in 0..repetitions {
                cells.push((sampler.clone(), ratio, repetition));
            }
        }
    }

    let outcomes: Vec<std::result::Result<EvalReport, FailedRun>> = cells
        .into_par_iter()
        .map(|(sampler, ratio, repetition)| {
            let seed = derive_seed(
                base_seed,
                &[hash_tag(sampler.name()), ratio.to_bits(), repetition as u64],
            );
            let m = (ratio * g.n() as f64).round() as usize;
            let run = sampler
                .run(g, m, seed)
                .and_then(|state| evaluate_sample(g, &mu, &state, window_frac));
            match run {
                Ok(metrics) => Ok(EvalReport {
                    sampler: sampler.name().to_string(),
                    sample_ratio: ratio,
                    repetition,
                    seed,
                    metrics,
                }),
                Err(e) => Err(FailedRun {
                    sampler: sampler.name().to_string(),
                    sample_ratio: ratio,
                    repetition,
                    seed,
                    reason: e.to_string(),
                }),
            }
        })
        .collect();

    let mut table = ExperimentTable { rows: Vec::new(), failures: Vec::new() };
    for outcome in outcomes {
        match outcome {
            Ok(row) => table.rows.push(row),
            Err(failure) => table.failures.push(failure),
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;
    use crate::testutil::{er_scc, graph_from_arcs};
    use rand::Rng as _;

    // ---- independent oracles -------------------------------------------

    /// O(n²) pair enumeration for Kendall τ-b, straight from the
    /// definition: count concordant, discordant, and one-sided ties.
    fn brute_kendall(x: &[f64], y: &[f64]) -> Option<f64> {
        let n = x.len();
        let (mut c, mut d, mut tx, mut ty) = (0u64, 0u64, 0u64, 0u64);
        for i in 0..n {
            for j in i + 1..n {
                let dx = x[i] - x[j];
                let dy = y[i] - y[j];
                if dx == 0.0 && dy == 0.0 {
                    // tied in both: contributes to neither side
                } else if dx == 0.0 {
                    tx += 1;
                } else if dy == 0.0 {
                    ty += 1;
                } else if (dx > 0.0) == (dy > 0.0) {
                    c += 1;
                } else {
                    d += 1;
                }
            }
        }
        let denom = (((c + d + tx) as f64) * ((c + d + ty) as f64)).sqrt();
        (denom > 0.0).then(|| (c as f64 - d as f64) / denom)
    }

    /// Ranks from the textbook definition: `#smaller + (#equal + 1)/2`.
    fn brute_ranks(v: &[f64]) -> Vec<f64> {
        v.iter()
            .map(|&x| {
                let smaller = v.iter().filter(|&&o| o < x).count() as f64;
                let equal = v.iter().filter(|&&o| o == x).count() as f64;
                smaller + (equal + 1.0) / 2.0
            })
            .collect()
    }

    fn brute_spearman(x: &[f64], y: &[f64]) -> Option<f64> {
        let rx = brute_ranks(x);
        let ry = brute_ranks(y);
        let n = rx.len() as f64;
        let mx = rx.iter().sum::<f64>() / n;
        let my = ry.iter().sum::<f64>() / n;
        let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
        let vx: f64 = rx.iter().map(|a| (a - mx) * (a - mx)).sum();
        let vy: f64 = ry.iter().map(|b| (b - my) * (b - my)).sum();
        (vx > 0.0 && vy > 0.0).then(|| cov / (vx * vy).sqrt())
    }

    /// Random vector mixing a small integer grid (forcing ties) with
    /// continuous values.
    fn tied_vector(rng: &mut crate::seeding::Rng, n: usize) -> Vec<f64> {
        (0..n)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    rng.gen_range(0..4) as f64
                } else {
                    rng.gen_range(-1.0..3.0)
                }
            })
            .collect()
    }

    // ---- kendall -------------------------------------------------------

    #[test]
    fn kendall_perfect_agreement_and_reversal() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [10.0, 20.0, 30.0, 40.0];
        assert_eq!(kendall_tau(&x, &y).unwrap(), 1.0);
        let rev = [40.0, 30.0, 20.0, 10.0];
        assert_eq!(kendall_tau(&x, &rev).unwrap(), -1.0);
    }

    #[test]
    fn kendall_matches_pair_enumeration_with_ties() {
        let mut rng = crate::seeding::rng_from_seed(501);
        for trial in 0..300 {
            let n = rng.gen_range(2..30);
            let x = tied_vector(&mut rng, n);
            let y = tied_vector(&mut rng, n);
            let brute = brute_kendall(&x, &y);
            match (kendall_tau(&x, &y), brute) {
                (Ok(fast), Some(slow)) => assert!(
                    (fast - slow).abs() < 1e-12,
                    "trial {trial}: {fast} vs {slow}"
                ),
                (Err(Error::Undefined(_)), None) => {}
                (fast, slow) => panic!("trial {trial}: {fast:?} vs brute {slow:?}"),
            }
        }
    }

    #[test]
    fn kendall_rejects_bad_inputs() {
        assert!(matches!(
            kendall_tau(&[1.0], &[2.0]),
            Err(Error::Undefined(_))
        ));
        assert!(matches!(
            kendall_tau(&[1.0, 2.0], &[2.0]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            kendall_tau(&[5.0, 5.0, 5.0], &[1.0, 2.0, 3.0]),
            Err(Error::Undefined(_))
        ));
        assert!(matches!(
            kendall_tau(&[1.0, 2.0], &[f64::NAN, 0.0]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn kendall_is_symmetric_and_rank_invariant() {
        let mut rng = crate::seeding::rng_from_seed(502);
        for _ in 0..50 {
            let n = rng.gen_range(3..25);
            let x = tied_vector(&mut rng, n);
            let y = tied_vector(&mut rng, n);
            let (Ok(a), Ok(b)) = (kendall_tau(&x, &y), kendall_tau(&y, &x)) else {
                continue;
            };
            assert!((a - b).abs() < 1e-15);
            // A strictly increasing transform preserves every pair order.
            let ex: Vec<f64> = x.iter().map(|v| v.exp()).collect();
            let c = kendall_tau(&ex, &y).unwrap();
            assert!((a - c).abs() < 1e-15);
        }
    }

    // ---- spearman ------------------------------------------------------

    #[test]
    fn spearman_perfect_agreement_and_reversal() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [2.0, 3.0, 5.0, 9.0];
        assert!((spearman_rho(&x, &y).unwrap() - 1.0).abs() < 1e-15);
        let rev = [9.0, 5.0, 3.0, 2.0];
        assert!((spearman_rho(&x, &rev).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn spearman_matches_independent_rank_then_pearson() {
        let mut rng = crate::seeding::rng_from_seed(503);
        for trial in 0..300 {
            let n = rng.gen_range(2..30);
            let x = tied_vector(&mut rng, n);
            let y = tied_vector(&mut rng, n);
            match (spearman_rho(&x, &y), brute_spearman(&x, &y)) {
                (Ok(fast), Some(slow)) => assert!(
                    (fast - slow).abs() < 1e-12,
                    "trial {trial}: {fast} vs {slow}"
                ),
                (Err(Error::Undefined(_)), None) => {}
                (fast, slow) => panic!("trial {trial}: {fast:?} vs brute {slow:?}"),
            }
        }
    }

    #[test]
    fn spearman_rejects_bad_inputs() {
        assert!(matches!(
            spearman_rho(&[1.0], &[2.0]),
            Err(Error::Undefined(_))
        ));
        assert!(matches!(
            spearman_rho(&[3.0, 3.0], &[1.0, 2.0]),
            Err(Error::Undefined(_))
        ));
        assert!(matches!(
            spearman_rho(&[1.0, 2.0, 3.0], &[1.0, f64::INFINITY, 3.0]),
            Err(Error::InvalidArgument(_))
        ));
    }

    // ---- moving window -------------------------------------------------

    #[test]
    fn window_mean_is_one_on_identical_rankings() {
        let truth: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let (mean, skipped) =
            moving_window_stat(&truth, &truth, 0.25, RankStat::Kendall).unwrap();
        assert_eq!(mean, 1.0);
        assert_eq!(skipped, 0);
    }

    #[test]
    fn window_mean_is_minus_one_on_reversed_rankings() {
        let truth: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let negated: Vec<f64> = truth.iter().map(|v| -v).collect();
        for stat in [RankStat::Kendall, RankStat::Spearman] {
            let (mean, skipped) = moving_window_stat(&truth, &negated, 0.25, stat).unwrap();
            assert_eq!(mean, -1.0);
            assert_eq!(skipped, 0);
        }
    }

    #[test]
    fn window_sweep_matches_naive_loop() {
        // Independent reimplementation: sort positions by truth descending
        // (ties by position), walk all 46 windows of width 5, average the
        // brute-force statistic over non-constant windows.
        let mut rng = crate::seeding::rng_from_seed(504);
        for stat in [RankStat::Kendall, RankStat::Spearman] {
            for trial in 0..40 {
                let m = 50;
                let truth = tied_vector(&mut rng, m);
                let estimate = tied_vector(&mut rng, m);
                let mut order: Vec<usize> = (0..m).collect();
                order.sort_by(|&a, &b| {
                    truth[b].partial_cmp(&truth[a]).unwrap().then(a.cmp(&b))
                });
                let w = 5;
                let mut sum = 0.0;
                let mut count = 0usize;
                let mut skipped = 0usize;
                for start in 0..=(m - w) {
                    let tw: Vec<f64> =
                        order[start..start + w].iter().map(|&i| truth[i]).collect();
                    let ew: Vec<f64> =
                        order[start..start + w].iter().map(|&i| estimate[i]).collect();
                    let constant = |v: &[f64]| v.iter().all(|&x| x == v[0]);
                    if constant(&tw) || constant(&ew) {
                        skipped += 1;
                        continue;
                    }
                    sum += match stat {
                        RankStat::Kendall => brute_kendall(&tw, &ew).unwrap(),
                        RankStat::Spearman => brute_spearman(&tw, &ew).unwrap(),
                    };
                    count += 1;
                }
                let expected = sum / count as f64;
                let (mean, got_skipped) =
                    moving_window_stat(&truth, &estimate, 0.1, stat).unwrap();
                assert!(
                    (mean - expected).abs() < 1e-12,
                    "trial {trial}: {mean} vs naive {expected}"
                );
                assert_eq!(got_skipped, skipped, "trial {trial}");
            }
        }
    }

    #[test]
    fn full_width_window_equals_global_statistic() {
        let mut rng = crate::seeding::rng_from_seed(505);
        let truth = tied_vector(&mut rng, 30);
        let estimate = tied_vector(&mut rng, 30);
        let (mean, skipped) =
            moving_window_stat(&truth, &estimate, 1.0, RankStat::Kendall).unwrap();
        assert_eq!(skipped, 0);
        assert!((mean - kendall_tau(&truth, &estimate).unwrap()).abs() < 1e-15);
        let (mean_s, _) =
            moving_window_stat(&truth, &estimate, 1.0, RankStat::Spearman).unwrap();
        assert!((mean_s - spearman_rho(&truth, &estimate).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn window_sweep_validates_and_reports_all_skipped() {
        let v10: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert!(matches!(
            moving_window_stat(&v10[..9], &v10[..9], 0.5, RankStat::Kendall),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            moving_window_stat(&v10, &v10, 0.0, RankStat::Kendall),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            moving_window_stat(&v10, &v10, 1.5, RankStat::Kendall),
            Err(Error::InvalidArgument(_))
        ));
        let constant = vec![2.0; 12];
        assert!(matches!(
            moving_window_stat(&constant, &v10[..2].repeat(6), 0.3, RankStat::Kendall),
            Err(Error::Undefined(_))
        ));
    }

    // ---- evaluate_sample -----------------------------------------------

    #[test]
    fn evaluating_the_whole_graph_is_perfect() {
        let g = er_scc(40, 0.15, true, 610, 30);
        let mu = power_iteration(&g, &PowerConfig::default()).unwrap();
        let mut state = SampleState::new(&g);
        for v in 0..g.n() as u32 {
            state.add(&g, NodeId(v));
        }
        let eval = evaluate_sample(&g, &mu, &state, 0.1).unwrap();
        assert_eq!(eval.kendall_global, 1.0);
        assert!(eval.sine <= 1e-8);
        assert!(eval.converged_sample_eig);
        assert!((eval.spearman_global - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cycle_sample_reports_the_degenerate_hand_values() {
        // Undirected 4-cycle, members {0,1,2}. The true centrality is
        // uniform, so its restriction is constant: both global correlations
        // are undefined (NA). The induced path is periodic, so the raw
        // solver oscillates with period 2 and even iteration counts land on
        // the uniform direction exactly — parallel to the restricted truth,
        // sine 0 — while the convergence flag records the oscillation.
        let arcs: Vec<(u32, u32, f64)> = (0..4).map(|i| (i, (i + 1) % 4, 1.0)).collect();
        let g = graph_from_arcs(false, 4, &arcs);
        let mu = power_iteration(&g, &PowerConfig::default()).unwrap();
        let mut state = SampleState::new(&g);
        for v in [0u32, 1, 2] {
            state.add(&g, NodeId(v));
        }
        let eval = evaluate_sample(&g, &mu, &state, 0.1).unwrap();
        assert!(eval.kendall_global.is_nan());
        assert!(eval.spearman_global.is_nan());
        assert!(eval.sine < 1e-12);
        assert!(!eval.converged_sample_eig);
        assert!(eval.kendall_window_mean.is_nan()); // m < 10: no windows
        assert_eq!(eval.windows_skipped, 0);
    }

    #[test]
    fn random_sample_matches_dense_recomputation() {
        // End-to-end oracle on a non-degenerate instance: recompute every
        // field densely (nalgebra matrix iteration, brute-force statistics)
        // and compare.
        let g = er_scc(18, 0.3, true, 611, 14);
        let n = g.n();
        let mu = power_iteration(&g, &PowerConfig::default()).unwrap();
        assert!(mu.converged);

        let mut state = SampleState::new(&g);
        let picked: Vec<u32> = (0..n as u32).filter(|v| v % 3 != 2).collect();
        for &v in &picked {
            state.add(&g, NodeId(v));
        }
        assert!(state.len() >= 10, "need window coverage");
        let eval = evaluate_sample(&g, &mu, &state, 0.3).unwrap();

        // Dense truth: iterate the full adjacency to well below the solver
        // tolerance, then restrict.
        let dense_pi = |size: usize, a: &nalgebra::DMatrix<f64>| {
            let mut v = nalgebra::DVector::from_element(size, 1.0 / (size as f64).sqrt());
            for _ in 0..20_000 {
                let next = a * &v;
                let next = &next / next.norm();
                if (&next - &v).norm() < 1e-14 {
                    v = next;
                    break;
                }
                v = next;
            }
            v
        };
        let mut a_full = nalgebra::DMatrix::zeros(n, n);
        for i in 0..n as u32 {
            for (j, w) in g.in_edges(NodeId(i)) {
                a_full[(i as usize, j.index())] = w;
            }
        }
        let v_full = dense_pi(n, &a_full);
        let truth: Vec<f64> = picked.iter().map(|&v| v_full[v as usize]).collect();

        let m = picked.len();
        let mut a_sub = nalgebra::DMatrix::zeros(m, m);
        for (r, &i) in picked.iter().enumerate() {
            for (c, &j) in picked.iter().enumerate() {
                a_sub[(r, c)] = g.weight(NodeId(j), NodeId(i));
            }
        }
        let v_sub = dense_pi(m, &a_sub);
        let estimate: Vec<f64> = v_sub.iter().copied().collect();

        assert!((eval.kendall_global - brute_kendall(&truth, &estimate).unwrap()).abs() < 1e-9);
        assert!(
            (eval.spearman_global - brute_spearman(&truth, &estimate).unwrap()).abs() < 1e-9
        );
        let dot: f64 = truth
            .iter()
            .zip(&estimate)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            .abs();
        let nt = truth.iter().map(|v| v * v).sum::<f64>().sqrt();
        let ne = estimate.iter().map(|v| v * v).sum::<f64>().sqrt();
        let cos = (dot / (nt * ne)).min(1.0);
        let expected_sine = (1.0 - cos * cos).max(0.0).sqrt();
        assert!(
            (eval.sine - expected_sine).abs() < 1e-7,
            "{} vs {expected_sine}",
            eval.sine
        );
        // Window means against the module's own sweep over dense inputs
        // (the sweep itself is oracle-tested separately).
        let (kw, sk) =
            moving_window_stat(&truth, &estimate, 0.3, RankStat::Kendall).unwrap();
        assert!((eval.kendall_window_mean - kw).abs() < 1e-9);
        assert_eq!(eval.windows_skipped, sk);
        assert!(eval.converged_sample_eig);
    }

    #[test]
    fn edgeless_induced_sample_still_produces_a_report() {
        // Directed 6-cycle; members {0,2,4} induce no edges at all.
        let arcs: Vec<(u32, u32, f64)> = (0..6).map(|i| (i, (i + 1) % 6, 1.0)).collect();
        let g = graph_from_arcs(true, 6, &arcs);
        let mu = power_iteration(&g, &PowerConfig::default()).unwrap_or_else(|_| {
            // A directed cycle is periodic; fall back to the exact uniform
            // centrality it would converge to in the aperiodic closure.
            CentralityVector {
                values: vec![1.0 / (6.0f64).sqrt(); 6],
                eigenvalue: 1.0,
                converged: true,
                iterations: 0,
                residual: 0.0,
            }
        });
        let mut state = SampleState::new(&g);
        for v in [0u32, 2, 4] {
            state.add(&g, NodeId(v));
        }
        let eval = evaluate_sample(&g, &mu, &state, 0.1).unwrap();
        assert!(!eval.converged_sample_eig);
        assert!(eval.kendall_global.is_nan());
        assert!(eval.sine.is_nan());
    }

    #[test]
    fn tiny_samples_are_rejected() {
        let g = er_scc(20, 0.3, true, 612, 15);
        let mu = power_iteration(&g, &PowerConfig::default()).unwrap();
        let mut state = SampleState::new(&g);
        state.add(&g, NodeId(0));
        assert!(matches!(
            evaluate_sample(&g, &mu, &state, 0.1),
            Err(Error::InvalidArgument(_))
        ));
    }

    // ---- samplers ------------------------------------------------------

    #[test]
    fn sampler_names_round_trip() {
        for name in [
            "uniform",
            "rw",
            "mh",
            "dw",
            "bfs",
            "snowball",
            "forest_fire",
            "expansion",
            "tcec",
        ] {
            assert_eq!(Sampler::parse(name).unwrap().name(), name);
        }
        assert!(matches!(
            Sampler::parse("pagerank"),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn every_sampler_produces_the_requested_size() {
        let g = er_scc(60, 0.15, true, 613, 45);
        for name in [
            "uniform",
            "rw",
            "mh",
            "dw",
            "bfs",
            "snowball",
            "forest_fire",
            "expansion",
            "tcec",
        ] {
            let sampler = Sampler::parse(name).unwrap();
            let state = sampler.run(&g, 12, 777).unwrap();
            assert_eq!(state.len(), 12, "sampler {name}");
            let again = sampler.run(&g, 12, 777).unwrap();
            assert_eq!(state.order(), again.order(), "sampler {name} not reproducible");
        }
    }

    // ---- run_experiment --------------------------------------------------

    #[test]
    fn experiment_is_deterministic_and_csv_shaped() {
        let g = er_scc(60, 0.15, true, 614, 45);
        let samplers = [
            Sampler::Uniform,
            Sampler::Bfs,
            Sampler::Tcec { p: None, alpha: None },
        ];
        let run = || {
            run_experiment(&g, &samplers, &[0.2, 0.3], 2, 4242, 0.2).unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.aggregate_json(), b.aggregate_json());

        assert_eq!(a.rows.len() + a.failures.len(), 3 * 2 * 2);
        let csv = a.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(csv.lines().count(), 1 + a.rows.len());
        // Sweep order: sampler-major, then ratio, then repetition.
        assert!(csv.lines().nth(1).unwrap().starts_with("uniform,0.2,0,"));
    }

    #[test]
    fn single_repetition_has_zero_std() {
        let g = er_scc(50, 0.15, true, 615, 40);
        let table =
            run_experiment(&g, &[Sampler::Uniform], &[0.4], 1, 7, 0.2).unwrap();
        assert_eq!(table.rows.len(), 1);
        let cells = table.cell_stats();
        let by_metric = &cells["uniform"][&ratio_key(0.4)];
        for stat in by_metric.values() {
            assert_eq!(stat.std, 0.0);
            assert_eq!(stat.n_runs, 1);
        }
    }

    #[test]
    fn aggregate_matches_flat_recomputation() {
        let g = er_scc(60, 0.15, true, 616, 45);
        let table = run_experiment(
            &g,
            &[Sampler::Uniform, Sampler::SimpleWalk],
            &[0.25],
            4,
            99,
            0.2,
        )
        .unwrap();
        let cells = table.cell_stats();
        for sampler in ["uniform", "rw"] {
            let values: Vec<f64> = table
                .rows
                .iter()
                .filter(|r| r.sampler == sampler)
                .map(|r| r.metrics.kendall_global)
                .filter(|v| v.is_finite())
                .collect();
            let Some(stat) = cells[sampler][&ratio_key(0.25)].get("kendall_global") else {
                assert!(values.is_empty());
                continue;
            };
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (values.len() - 1).max(1) as f64;
            assert_eq!(stat.n_runs, values.len());
            assert!((stat.mean - mean).abs() < 1e-14);
            assert!((stat.std - var.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn rw_best_picks_the_winning_variant() {
        let g = er_scc(60, 0.15, true, 617, 45);
        let samplers = [
            Sampler::SimpleWalk,
            Sampler::MetropolisHastings,
            Sampler::DegreeWeighted,
        ];
        let table = run_experiment(&g, &samplers, &[0.3], 3, 11, 0.2).unwrap();
        let cells = table.cell_stats();
        let best = table.rw_best();
        let rk = ratio_key(0.3);
        for metric in ["kendall_global", "spearman_global", "sine"] {
            let lower_is_better = metric == "sine";
            let mut want: Option<(&str, f64)> = None;
            for (name, label) in [("rw", "(RW)"), ("mh", "(MH)"), ("dw", "(DW)")] {
                let Some(stat) = cells
                    .get(name)
                    .and_then(|r| r.get(&rk))
                    .and_then(|m| m.get(metric))
                else {
                    continue;
                };
                let better = match want {
                    None => true,
                    Some((_, cur)) => {
                        if lower_is_better {
                            stat.mean < cur
                        } else {
                            stat.mean > cur
                        }
                    }
                };
                if better {
                    want = Some((label, stat.mean));
                }
            }
            let got = &best[&rk][metric];
            let (label, mean) = want.unwrap();
            assert_eq!(got.variant, label, "metric {metric}");
            assert!((got.stat.mean - mean).abs() < 1e-15);
        }
    }

    #[test]
    fn failed_runs_are_recorded_and_excluded() {
        // Walk samplers refuse a graph that is not strongly connected;
        // uniform sampling does not care. The truth centrality still
        // converges because the dominant component is aperiodic.
        let g = (618..668)
            .map(|seed| crate::graph::generate_er(40, 0.08, true, seed).unwrap())
            .find(|g| {
                !g.is_strongly_connected()
                    && power_iteration(g, &PowerConfig::default())
                        .map(|cv| cv.converged)
                        .unwrap_or(false)
            })
            .expect("some seed yields a reducible graph with converging centrality");
        let table = run_experiment(
            &g,
            &[Sampler::Uniform, Sampler::SimpleWalk],
            &[0.3],
            2,
            13,
            0.2,
        )
        .unwrap();
        assert_eq!(table.failures.len(), 2);
        assert!(table
            .failures
            .iter()
            .all(|f| f.sampler == "rw" && f.reason.contains("strongly connected")));
        assert_eq!(table.rows.len(), 2);
        assert!(table.rows.iter().all(|r| r.sampler == "uniform"));
        assert!(table.cell_stats().get("rw").is_none());
        let json = table.aggregate_json();
        assert_eq!(json["failures"]["count"], 2);
    }

    #[test]
    fn experiment_validates_configuration() {
        let g = er_scc(30, 0.2, true, 619, 20);
        assert!(matches!(
            run_experiment(&g, &[], &[0.2], 1, 0, 0.1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            run_experiment(&g, &[Sampler::Uniform], &[], 1, 0, 0.1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            run_experiment(&g, &[Sampler::Uniform], &[1.5], 1, 0, 0.1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            run_experiment(&g, &[Sampler::Uniform], &[0.2], 0, 0, 0.1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            run_experiment(&g, &[Sampler::Uniform], &[0.2], 1, 0, 0.0),
            Err(Error::InvalidArgument(_))
        ));
    }
}
