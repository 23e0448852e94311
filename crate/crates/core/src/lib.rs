//! Online graph sampling that preserves eigenvector centrality.
//!
//! The crate provides:
//!
//! * [`graph`] — immutable weighted graphs with dual adjacency views,
//!   edge-list I/O, Erdős–Rényi generation, and strongly-connected-component
//!   preprocessing;
//! * [`spectral`] — power iteration for the principal eigenvector
//!   (eigenvector centrality) and angle utilities;
//! * [`sample`] — incremental sample state shared by every sampler
//!   (membership, border, in-sample in-degrees);
//! * [`baselines`] — uniform, random-walk, BFS, snowball, forest-fire, and
//!   expansion samplers;
//! * [`tcec`] — the spectral-criterion greedy sampler built around a
//!   bounded score leaderboard;
//! * [`bound`] — a-posteriori error diagnostics for a sample (block
//!   singular value, tangent mass ratio, eigenvalue separation, and the
//!   resulting sine bound);
//! * [`eval`] — rank-correlation metrics, moving-window statistics, and a
//!   parallel experiment harness.

#![forbid(unsafe_code)]

pub mod baselines;
pub mod bound;
pub mod error;
pub mod eval;
pub mod graph;
pub mod sample;
pub mod seeding;
pub mod spectral;
pub mod tcec;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
