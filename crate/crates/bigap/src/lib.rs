//! # bigap — spectral gaps of random bipartite graphs, measured honestly
//!
//! A numerical laboratory for one question: how large is the *second*
//! adjacency eigenvalue of an Erdős–Rényi random bipartite graph
//! `G(n1, n2, p)`, and does it stay below the closed-form envelope
//!
//! ```text
//! mu_2(A) <= 2 (sqrt((n1 + n2) p) + sqrt(n1 p) + sqrt(n2 p))
//! ```
//!
//! together with its normalized-scale twin? The crate samples graphs,
//! computes extreme eigenvalues two independent ways (a dense solver and a
//! hand-rolled Lanczos iteration that cross-check each other), evaluates the
//! bounds, and replays every step of the argument behind them — union
//! embedding, block splitting, the eigenvalue perturbation sandwich,
//! spectrum negation, bipartite sign symmetry, and the degree-normalization
//! residual — as falsifiable numerical checks.
//!
//! ## One measurement
//!
//! ```
//! use bigap::rng::{derive_stream, SeedSpec};
//! use bigap::spectra::adjacency;
//! use bigap::{dense_summary, sample_bipartite, theorem_bound};
//!
//! let mut stream = derive_stream(SeedSpec::new(7, 0));
//! let g = sample_bipartite(60, 80, 0.2, &mut stream)?;
//! let spectrum = dense_summary(&adjacency(&g), 256)?;
//! assert!(spectrum.mu2 <= theorem_bound(60, 80, 0.2)?);
//! # Ok::<(), bigap::Error>(())
//! ```
//!
//! ## Where to start
//!
//! The `examples/` directory is the front door; each example is a small,
//! self-contained experiment with commentary:
//!
//! - `sample_graph` — deterministic sampling and the edge-list format
//! - `extreme_spectrum` — dense vs. Lanczos on the same graph
//! - `theorem_bound` — the headline inequality across a size sweep
//! - `normalized_gap` — the same story on the random-walk scale
//! - `proof_chain` — the block-decomposition argument, step by step
//! - `fk_ratio` — the one-graph extreme-eigenvalue law the argument leans on
//! - `kresidual_decay` — where the final normalization step holds and where
//!   it genuinely does not
//!
//! The same machinery is scriptable through the `bigap` binary
//! (`sample`, `spectrum`, `verify`, `experiment`, `selftest`).
//!
//! ## Reproducibility contract
//!
//! Every random quantity flows from a single `u64` master seed through a
//! per-trial counter-based derivation ([`rng::SeedSpec`]), so trial `i` of an
//! experiment produces bit-identical results regardless of worker count,
//! platform, or which other trials ran. CSV outputs are byte-stable across
//! thread counts apart from the one wall-clock timing column.
//!
//! ## Module map
//!
//! | module | job |
//! |---|---|
//! | [`rng`] | seed derivation and the deterministic bit stream |
//! | [`graphgen`] | graph types, geometric skip sampling, union embedding |
//! | [`edgelist`] | plain-text graph serialization |
//! | [`spectra`] | CSR matrices, dense eigensolver, Lanczos, normalization |
//! | [`bounds`] | closed-form bounds and comparison predicates |
//! | [`harness`] | trial runner, experiment orchestration, CSV, proof replay |
//! | [`cli`] | the command-line surface over all of the above |

pub mod bounds;
pub mod cli;
pub mod edgelist;
pub mod error;
pub mod graphgen;
pub mod harness;
pub mod rng;
pub mod spectra;

pub use bounds::{
    ab_bipartite, fk_bound, normalized_gap_bound, regime_check, theorem_bound, weyl_check,
    BoundReport,
};
pub use error::{Error, Result};
pub use graphgen::{sample_bipartite, sample_er, BipartiteGraph, DegreeStats, Graph};
pub use harness::{
    run_experiment, run_trial, verify_proof_chain, ExperimentConfig, Mode, ProofChainConfig,
    ProofChainReport, Summary, TrialData, TrialOutcome, TrialRecord,
};
pub use rng::{SeedSpec, Stream};
pub use spectra::{
    dense_summary, k_residual, lanczos_extreme, normalized_adjacency, IsolatedPolicy, KResidual,
    SparseSymMatrix, SpectralSummary, DEFAULT_ORACLE_CAP,
};
