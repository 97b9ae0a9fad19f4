//! Step-by-step numerical replay of the block-decomposition argument behind
//! the second-eigenvalue bound, at dense-oracle scale.
//!
//! For each trial the replay samples a bipartite graph `G`, extends it to a
//! one-part graph `G'` on `n1 + n2` vertices by sampling the within-side
//! pairs with the same probability, and splits the adjacency of `G'` into
//! the two within-side blocks plus the cross block. Five items are then
//! checked per trial:
//!
//! 1. **Reconstruction** — the three blocks sum back to `A(G')` exactly,
//!    and the cross block equals `A(G)` exactly.
//! 2. **Perturbation chain** — `mu_2(A(G)) <= mu_2(A(G')) + mu_1(-A_left) +
//!    mu_1(-A_right)`: two applications of the eigenvalue perturbation
//!    sandwich, the step that transfers the one-part extreme-eigenvalue law
//!    to the bipartite second eigenvalue.
//! 3. **Negation rule** — `mu_i(-M) = -mu_{n+1-i}(M)` on the left block.
//! 4. **Bipartite symmetry** — `spec(A(G))` is symmetric around zero.
//! 5. **Normalization residual** — the entrywise and induced-norm report on
//!    `K = A/sqrt(n1 n2 p^2) - D^{-1/2} A D^{-1/2}`, recorded whenever the
//!    graph has no isolated vertex (informational: the interesting behavior
//!    of this quantity lives at larger scale).
//!
//! Items 1–4 are mathematical identities up to floating-point tolerance;
//! any failure is an implementation bug, never statistical noise.

use crate::error::Result;
use crate::graphgen::{embed_union, sample_bipartite};
use crate::rng::{derive_stream, SeedSpec};
use crate::spectra::{
    add, adjacency, adjacency_full, check_bipartite_symmetry, dense_eig, negation_spectrum_check,
    split_blocks, KResidual, DEFAULT_ORACLE_CAP,
};
use crate::Error;

/// Parameters for one proof-chain replay run. Unlike experiment configs,
/// `p = 0` and `p = 1` are allowed — the degenerate cases are exactly where
/// the identities can be checked against closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct ProofChainConfig {
    /// Left part size.
    pub n1: usize,
    /// Right part size.
    pub n2: usize,
    /// Edge probability, in `[0, 1]`.
    pub p: f64,
    /// Number of independent trials, >= 1.
    pub trials: u64,
    /// Master seed; trial `i` uses the stream derived from `(seed, i)`.
    pub master_seed: u64,
    /// Tolerance for the perturbation-chain inequality.
    pub weyl_tol: f64,
    /// Tolerance for the negation rule.
    pub negation_tol: f64,
    /// Tolerance for the bipartite symmetry defect.
    pub symmetry_tol: f64,
    /// Replay runs entirely on the dense solver; `n1 + n2` must not exceed
    /// this cap.
    pub oracle_cap: usize,
}

impl ProofChainConfig {
    /// Standard tolerances: perturbation chain `1e-8`, negation `1e-10`,
    /// symmetry `1e-9`; dense cap [`DEFAULT_ORACLE_CAP`].
    pub fn new(n1: usize, n2: usize, p: f64, trials: u64, master_seed: u64) -> Self {
        ProofChainConfig {
            n1,
            n2,
            p,
            trials,
            master_seed,
            weyl_tol: 1e-8,
            negation_tol: 1e-10,
            symmetry_tol: 1e-9,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }

    /// Enforce the parameter invariants.
    pub fn validate(&self) -> Result<()> {
        if self.n1 == 0 || self.n2 == 0 {
            return Err(Error::Config("part sizes must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) || self.p.is_nan() {
            return Err(Error::Config(format!("p must lie in [0, 1], got {}", self.p)));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        for (name, t) in [
            ("weyl_tol", self.weyl_tol),
            ("negation_tol", self.negation_tol),
            ("symmetry_tol", self.symmetry_tol),
        ] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("{name} must be a finite value > 0, got {t}")));
            }
        }
        let n = self.n1 + self.n2;
        if n > self.oracle_cap {
            return Err(Error::OracleCap { n, cap: self.oracle_cap });
        }
        Ok(())
    }
}

/// Outcome of the five checks for one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct ProofChainTrial {
    /// Which trial, and thus which derived stream.
    pub trial_index: u64,
    /// Item 1: exact block reconstruction.
    pub reconstruction_ok: bool,
    /// Item 2 verdict.
    pub weyl_ok: bool,
    /// Item 2 defect: how far the chain inequality was violated (0 when it
    /// holds).
    pub weyl_defect: f64,
    /// Item 2 headroom: right-hand side minus left-hand side (negative on
    /// violation).
    pub weyl_margin: f64,
    /// Item 3 verdict.
    pub negation_ok: bool,
    /// Item 3 worst pairing defect.
    pub negation_defect: f64,
    /// Item 4 verdict.
    pub symmetry_ok: bool,
    /// Item 4 worst pairing defect.
    pub symmetry_defect: f64,
    /// Item 5: the normalization residual, absent when undefined for this
    /// sample (isolated vertex, or `p = 0`).
    pub k_residual: Option<KResidual>,
}

/// Aggregated replay outcome: per-item pass counts over all trials plus the
/// residual medians.
#[derive(Debug, Clone, PartialEq)]
pub struct ProofChainReport {
    /// Per-trial detail, ordered by trial index.
    pub trials: Vec<ProofChainTrial>,
    /// Item 1 passes.
    pub reconstruction_passes: u64,
    /// Item 2 passes.
    pub weyl_passes: u64,
    /// Item 3 passes.
    pub negation_passes: u64,
    /// Item 4 passes.
    pub symmetry_passes: u64,
    /// Trials where item 5 was defined and computed.
    pub k_residual_computed: u64,
    /// Median of `norm_inf * sqrt(n1 n2 p^2)` over computed trials.
    pub k_scaled_median: Option<f64>,
    /// Median of `entrywise * sqrt(n1 n2 p^2)` over computed trials.
    pub k_entrywise_scaled_median: Option<f64>,
}

impl ProofChainReport {
    /// Total number of trials replayed.
    pub fn total(&self) -> u64 {
        self.trials.len() as u64
    }

    /// Did items 1–4 pass in every trial? Item 5 carries no pass criterion:
    /// it is a measurement, not an identity.
    pub fn all_passed(&self) -> bool {
        let t = self.total();
        self.reconstruction_passes == t
            && self.weyl_passes == t
            && self.negation_passes == t
            && self.symmetry_passes == t
    }
}

/// Median of an unsorted sample; even lengths average the middle pair.
fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    })
}

/// Replay the block-decomposition argument `cfg.trials` times.
pub fn verify_proof_chain(cfg: &ProofChainConfig) -> Result<ProofChainReport> {
    cfg.validate()?;
    let n = cfg.n1 + cfg.n2;
    let mut trials = Vec::with_capacity(cfg.trials as usize);
    let mut scaled = Vec::new();
    let mut entrywise_scaled = Vec::new();

    for trial_index in 0..cfg.trials {
        let mut stream = derive_stream(SeedSpec::new(cfg.master_seed, trial_index));
        let g = sample_bipartite(cfg.n1, cfg.n2, cfg.p, &mut stream)?;
        // The extension samples only the within-side pairs; together with
        // g's cross edges this is one uniform sample on all pairs.
        let union = embed_union(&g, cfg.p, &mut stream)?;

        let a_cross_direct = adjacency(&g);
        let a_union = adjacency_full(&union);
        let (a_left, a_cross, a_right) = split_blocks(&a_union, cfg.n1)?;

        let rebuilt = add(&add(&a_left, &a_cross)?, &a_right)?;
        let reconstruction_ok =
            rebuilt.entrywise_eq(&a_union) && a_cross.entrywise_eq(&a_cross_direct);

        // All spectra ascending, from the dense oracle.
        let eig_cross = dense_eig(&a_cross_direct)?;
        let eig_union = dense_eig(&a_union)?;
        let eig_left = dense_eig(&a_left)?;
        let eig_right = dense_eig(&a_right)?;

        // mu_2(A) <= mu_2(A') + mu_1(-A_left) + mu_1(-A_right), where
        // mu_1(-M) = -mu_min(M).
        let lhs = eig_cross[n - 2];
        let rhs = eig_union[n - 2] - eig_left[0] - eig_right[0];
        let weyl_margin = rhs - lhs;
        let weyl_ok = lhs <= rhs + cfg.weyl_tol;

        let eig_left_neg = dense_eig(&a_left.negated())?;
        let (negation_ok, negation_defect) =
            negation_spectrum_check(&eig_left, &eig_left_neg, cfg.negation_tol)?;

        let (symmetry_ok, symmetry_defect) =
            check_bipartite_symmetry(&eig_cross, cfg.symmetry_tol);

        let k = crate::spectra::k_residual(&g, cfg.p).ok();
        if let Some(k) = &k {
            scaled.push(k.scaled);
            entrywise_scaled.push(k.entrywise_scaled);
        }

        trials.push(ProofChainTrial {
            trial_index,
            reconstruction_ok,
            weyl_ok,
            weyl_defect: (-weyl_margin).max(0.0),
            weyl_margin,
            negation_ok,
            negation_defect,
            symmetry_ok,
            symmetry_defect,
            k_residual: k,
        });
    }

    let count = |f: fn(&ProofChainTrial) -> bool| trials.iter().filter(|t| f(t)).count() as u64;
    Ok(ProofChainReport {
        reconstruction_passes: count(|t| t.reconstruction_ok),
        weyl_passes: count(|t| t.weyl_ok),
        negation_passes: count(|t| t.negation_ok),
        symmetry_passes: count(|t| t.symmetry_ok),
        k_residual_computed: scaled.len() as u64,
        k_scaled_median: median(&mut scaled),
        k_entrywise_scaled_median: median(&mut entrywise_scaled),
        trials,
    })
}
