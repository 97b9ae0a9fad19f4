//! Trial execution and experiment orchestration.
//!
//! One *trial* = derive a stream from `(master_seed, trial_index)`, sample a
//! graph, compute the configured spectra and bounds, and return a fully
//! populated record — or a record carrying an error marker, never a
//! fabricated number. One *experiment* = many independent trials plus a
//! deterministic summary, optionally fanned out over worker threads.
//!
//! Determinism is the load-bearing property: every random draw a trial makes
//! comes from its own derived stream, so records are bit-identical (modulo
//! wall-clock timings) across reruns and across any worker count. The
//! worker count is therefore *not* part of [`ExperimentConfig`] — it is an
//! execution knob passed to [`run_experiment`] separately.

mod config;
mod csv;
mod verify;

pub use config::{ExperimentConfig, Mode};
pub use csv::{csv_string, parse_csv_str, read_csv, write_csv, CSV_HEADER};
pub use verify::{
    verify_proof_chain, ProofChainConfig, ProofChainReport, ProofChainTrial,
};

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::bounds::{normalized_gap_bound, regime_check, theorem_bound};
use crate::error::Result;
use crate::graphgen::{degree_stats, sample_bipartite};
use crate::rng::{derive_stream, SeedSpec};
use crate::spectra::{
    adjacency, dense_summary, lanczos_extreme, normalized_adjacency, IsolatedPolicy,
};

/// How many eigenvalues the iterative solver certifies at each end of the
/// spectrum: enough for the largest, second largest, second smallest, and
/// smallest — everything the records store.
const EXTREME_K: usize = 2;

/// Measured quantities of one successful trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialData {
    /// Edge count of the sampled graph.
    pub m: usize,
    /// Largest adjacency eigenvalue.
    pub mu1: f64,
    /// Second-largest adjacency eigenvalue — the quantity the headline
    /// bound controls.
    pub mu2: f64,
    /// Smallest adjacency eigenvalue.
    pub mu_min: f64,
    /// The closed-form second-eigenvalue bound at these parameters.
    pub theorem_bound_value: f64,
    /// `mu2 / (slack * theorem_bound_value)`; `<= 1` means the bound held.
    pub ratio: f64,
    /// `max over i not in {1, n} of |lambda_i|` for the normalized
    /// adjacency; present when the mode computes normalized spectra.
    pub norm_gap: Option<f64>,
    /// True when `norm_gap` came from the iterative path (dimension above
    /// the dense cap): the gap is then built from certified extreme
    /// eigenvalues rather than a full spectrum. Advisory, in-memory only —
    /// not stored in the CSV.
    pub norm_gap_partial: bool,
    /// The closed-form normalized-scale bound at these parameters; always
    /// filled, it costs nothing and makes rows self-contained.
    pub normalized_bound_value: f64,
    /// Worst relative degree deviation `|deg - expected| / expected` over
    /// both sides.
    pub rel_dev: Option<f64>,
    /// Degree-regime proxy `sqrt(n1 p) >= ln(n1)^3` — advisory.
    pub regime_left: bool,
    /// Degree-regime proxy for the right side.
    pub regime_right: bool,
    /// Worst measured eigenpair residual across the solver calls this trial
    /// made.
    pub residual: f64,
}

impl TrialData {
    /// Bitwise content equality, ignoring the advisory `norm_gap_partial`
    /// flag (which the CSV format does not store).
    fn bits_eq(&self, other: &Self) -> bool {
        fn b(x: f64) -> u64 {
            x.to_bits()
        }
        self.m == other.m
            && b(self.mu1) == b(other.mu1)
            && b(self.mu2) == b(other.mu2)
            && b(self.mu_min) == b(other.mu_min)
            && b(self.theorem_bound_value) == b(other.theorem_bound_value)
            && b(self.ratio) == b(other.ratio)
            && self.norm_gap.map(b) == other.norm_gap.map(b)
            && b(self.normalized_bound_value) == b(other.normalized_bound_value)
            && self.rel_dev.map(b) == other.rel_dev.map(b)
            && self.regime_left == other.regime_left
            && self.regime_right == other.regime_right
            && b(self.residual) == b(other.residual)
    }
}

/// Did the trial produce data, or an honest failure marker?
#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome {
    /// Fully populated measurements.
    Ok(TrialData),
    /// The trial could not produce trustworthy numbers (solver
    /// non-convergence, isolated vertex under the strict normalized
    /// policy, ...). Excluded from summary fractions, counted explicitly.
    Failed {
        /// Human-readable reason.
        error: String,
    },
}

/// One trial's full record: identity, outcome, timing.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    /// Position in the experiment, and the input to seed derivation.
    pub trial_index: u64,
    /// The derived per-trial stream state, recorded for reproducibility
    /// audits.
    pub derived_seed: u64,
    /// Left part size.
    pub n1: usize,
    /// Right part size.
    pub n2: usize,
    /// Edge probability.
    pub p: f64,
    /// Measurements or failure marker.
    pub outcome: TrialOutcome,
    /// Wall-clock duration of the trial in milliseconds. The only
    /// nondeterministic field.
    pub wall_ms: f64,
}

impl TrialRecord {
    /// Equality of everything except wall-clock time — the determinism
    /// contract compares records with this. Two failed outcomes compare
    /// equal regardless of message (the CSV stores the fact, not the
    /// prose).
    pub fn content_eq(&self, other: &Self) -> bool {
        self.trial_index == other.trial_index
            && self.derived_seed == other.derived_seed
            && self.n1 == other.n1
            && self.n2 == other.n2
            && self.p.to_bits() == other.p.to_bits()
            && match (&self.outcome, &other.outcome) {
                (TrialOutcome::Ok(a), TrialOutcome::Ok(b)) => a.bits_eq(b),
                (TrialOutcome::Failed { .. }, TrialOutcome::Failed { .. }) => true,
                _ => false,
            }
    }
}

/// Deterministic aggregate over an experiment's records.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    /// Total records (successful + failed).
    pub trials: u64,
    /// Failed-trial count — reported, never silently dropped.
    pub excluded: u64,
    /// Fraction of successful trials with `mu2 <= slack * bound`
    /// (equivalently `ratio <= 1`); 0 when no trial succeeded.
    pub satisfied_fraction: f64,
    /// Smallest ratio among successful trials.
    pub ratio_min: Option<f64>,
    /// Median ratio among successful trials.
    pub ratio_median: Option<f64>,
    /// Largest ratio among successful trials.
    pub ratio_max: Option<f64>,
    /// Fraction of gap-carrying trials with
    /// `norm_gap <= slack * normalized bound`; absent in adjacency mode.
    pub norm_satisfied_fraction: Option<f64>,
    /// Mean relative degree deviation over trials where it is defined.
    pub mean_rel_dev: Option<f64>,
}

impl Summary {
    /// Aggregate records under a given slack. Pure and deterministic: the
    /// same records in the same order give the same summary.
    pub fn compute(records: &[TrialRecord], slack: f64) -> Summary {
        let mut ratios = Vec::new();
        let mut satisfied = 0u64;
        let mut excluded = 0u64;
        let mut norm_total = 0u64;
        let mut norm_satisfied = 0u64;
        let mut rel_sum = 0.0;
        let mut rel_count = 0u64;
        for r in records {
            match &r.outcome {
                TrialOutcome::Failed { .. } => excluded += 1,
                TrialOutcome::Ok(d) => {
                    ratios.push(d.ratio);
                    if d.ratio <= 1.0 {
                        satisfied += 1;
                    }
                    if let Some(gap) = d.norm_gap {
                        norm_total += 1;
                        if gap <= slack * d.normalized_bound_value {
                            norm_satisfied += 1;
                        }
                    }
                    if let Some(rd) = d.rel_dev {
                        rel_sum += rd;
                        rel_count += 1;
                    }
                }
            }
        }
        ratios.sort_by(f64::total_cmp);
        let included = ratios.len();
        let median = match included {
            0 => None,
            n if n % 2 == 1 => Some(ratios[n / 2]),
            n => Some(0.5 * (ratios[n / 2 - 1] + ratios[n / 2])),
        };
        Summary {
            trials: records.len() as u64,
            excluded,
            satisfied_fraction: if included == 0 {
                0.0
            } else {
                satisfied as f64 / included as f64
            },
            ratio_min: ratios.first().copied(),
            ratio_median: median,
            ratio_max: ratios.last().copied(),
            norm_satisfied_fraction: if norm_total > 0 {
                Some(norm_satisfied as f64 / norm_total as f64)
            } else {
                None
            },
            mean_rel_dev: if rel_count > 0 {
                Some(rel_sum / rel_count as f64)
            } else {
                None
            },
        }
    }
}

/// Execute one trial. Failures of any kind land in the outcome; the
/// function itself always returns a record.
///
/// Expects a validated config (see [`ExperimentConfig::validate`]); an
/// invalid one surfaces as a failed outcome, not a panic.
pub fn run_trial(cfg: &ExperimentConfig, trial_index: u64) -> TrialRecord {
    let start = Instant::now();
    let spec = SeedSpec::new(cfg.master_seed, trial_index);
    let outcome = match trial_body(cfg, spec) {
        Ok(data) => TrialOutcome::Ok(data),
        Err(e) => TrialOutcome::Failed { error: e.to_string() },
    };
    TrialRecord {
        trial_index,
        derived_seed: spec.derived_state(),
        n1: cfg.n1,
        n2: cfg.n2,
        p: cfg.p,
        outcome,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn trial_body(cfg: &ExperimentConfig, spec: SeedSpec) -> Result<TrialData> {
    let mut stream = derive_stream(spec);
    let g = sample_bipartite(cfg.n1, cfg.n2, cfg.p, &mut stream)?;
    let n = cfg.n1 + cfg.n2;

    // Adjacency extremes always go through the iterative solver: it scales
    // to every configured size, and the dense oracle cross-checks it in the
    // test suites rather than in production runs.
    let a = adjacency(&g);
    let adj = lanczos_extreme(&a, EXTREME_K, cfg.tol, cfg.max_iter, &mut stream)?;
    let mut residual = adj.residual;

    let (norm_gap, norm_gap_partial) = if cfg.mode.includes_normalized() {
        let norm = normalized_adjacency(&g, IsolatedPolicy::Strict)?;
        if n < 3 {
            // The gap maximizes over indices excluding both ends; with two
            // vertices no index remains.
            (Some(0.0), false)
        } else if n <= cfg.oracle_cap {
            let s = dense_summary(norm.base(), cfg.oracle_cap)?;
            residual = residual.max(s.residual);
            (Some(s.mu2.abs().max(s.mu_second_last.abs())), false)
        } else {
            let s = lanczos_extreme(norm.base(), EXTREME_K, cfg.tol, cfg.max_iter, &mut stream)?;
            residual = residual.max(s.residual);
            (Some(s.mu2.abs().max(s.mu_second_last.abs())), true)
        }
    } else {
        (None, false)
    };

    let theorem_bound_value = theorem_bound(cfg.n1, cfg.n2, cfg.p)?;
    let normalized_bound_value = normalized_gap_bound(cfg.n1, cfg.n2, cfg.p)?;
    let (regime_left, regime_right) = regime_check(cfg.n1, cfg.n2, cfg.p);

    Ok(TrialData {
        m: g.m(),
        mu1: adj.mu1,
        mu2: adj.mu2,
        mu_min: adj.mu_min,
        theorem_bound_value,
        ratio: adj.mu2 / (cfg.slack * theorem_bound_value),
        norm_gap,
        norm_gap_partial,
        normalized_bound_value,
        rel_dev: degree_stats(&g, cfg.p).rel_dev,
        regime_left,
        regime_right,
        residual,
    })
}

/// Run every trial of an experiment on `workers` threads and aggregate.
///
/// Records come back ordered by trial index regardless of completion
/// order. `workers` is clamped to `[1, trials]`; the produced records are
/// identical for every value of it.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    workers: usize,
) -> Result<(Vec<TrialRecord>, Summary)> {
    cfg.validate()?;
    let workers = workers.clamp(1, cfg.trials.max(1) as usize);
    let next = AtomicU64::new(0);
    let collected: Mutex<Vec<TrialRecord>> =
        Mutex::new(Vec::with_capacity(cfg.trials as usize));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cfg.trials {
                    break;
                }
                let record = run_trial(cfg, i);
                collected.lock().unwrap().push(record);
            });
        }
    });
    let mut records = collected.into_inner().unwrap();
    records.sort_by_key(|r| r.trial_index);
    let summary = Summary::compute(&records, cfg.slack);
    Ok((records, summary))
}
