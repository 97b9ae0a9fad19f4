//! Command-line surface: sampling, spectra, proof-chain replay, experiments,
//! and a built-in smoke test, all over the library underneath.
//!
//! The CLI is a thin single-threaded shell — parallelism lives in the
//! experiment runner behind `--workers`. Output is machine-readable
//! `key=value` lines with at least six decimal digits, `.` separator,
//! locale-independent. Exit codes are a stable scripting contract:
//!
//! | code | meaning |
//! |---|---|
//! | 0 | success (and, for verdict-carrying commands, the verdict held) |
//! | 1 | I/O failure |
//! | 2 | usage, config, or input-format error |
//! | 3 | numerical failure or a failed verdict |

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bounds::{normalized_gap_bound, theorem_bound, weyl_check};
use crate::edgelist::{load_bipartite, save_bipartite};
use crate::error::{Error, Result};
use crate::graphgen::{sample_bipartite, BipartiteGraph};
use crate::harness::{
    run_experiment, verify_proof_chain, write_csv, ExperimentConfig, Mode, ProofChainConfig,
    Summary,
};
use crate::rng::{derive_stream, SeedSpec, Stream};
use crate::spectra::{
    add, adjacency, dense_eig, dense_summary, k_residual, lanczos_extreme, normalized_adjacency,
    IsolatedPolicy, SpectralSummary,
};

/// Top-level invocation: one subcommand plus global solver knobs.
#[derive(Debug, Parser)]
#[command(
    name = "bigap",
    version,
    about = "Spectral-gap experiments on random bipartite graphs"
)]
pub struct Cli {
    /// What to do.
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for experiment trials (default: available
    /// parallelism). Results are identical for every value.
    #[arg(long, global = true, env = "BIGAP_WORKERS")]
    pub workers: Option<usize>,
    /// Residual tolerance for the iterative eigensolver.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Multiplicative slack applied to every bound comparison (>= 1).
    #[arg(long, global = true)]
    pub slack: Option<f64>,
    /// Largest dimension handed to the dense eigensolver.
    #[arg(long, global = true)]
    pub oracle_cap: Option<usize>,
}

/// The five subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a random bipartite graph and write its edge list.
    Sample {
        /// Left part size.
        #[arg(long)]
        n1: usize,
        /// Right part size.
        #[arg(long)]
        n2: usize,
        /// Edge probability in [0, 1].
        #[arg(long)]
        p: f64,
        /// Master seed (the sample uses the stream derived for trial 0).
        #[arg(long)]
        seed: u64,
        /// Output path for the edge list.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute extreme eigenvalues of a stored bipartite graph.
    Spectrum {
        /// Edge-list file to read (bipartite header format).
        #[arg(long = "in")]
        input: PathBuf,
        /// adjacency, normalized, or both.
        #[arg(long, default_value = "adjacency")]
        mode: String,
    },
    /// Replay the block-decomposition argument at dense-oracle scale.
    Verify {
        /// Left part size.
        #[arg(long)]
        n1: usize,
        /// Right part size.
        #[arg(long)]
        n2: usize,
        /// Edge probability in [0, 1] (0 and 1 allowed).
        #[arg(long)]
        p: f64,
        /// Number of trials.
        #[arg(long, default_value_t = 25)]
        trials: u64,
        /// Master seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a multi-trial experiment and write a CSV.
    Experiment {
        /// Config file (flat `key = value` lines); explicit flags override
        /// its values.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Left part size.
        #[arg(long)]
        n1: Option<usize>,
        /// Right part size.
        #[arg(long)]
        n2: Option<usize>,
        /// Edge probability in (0, 1].
        #[arg(long)]
        p: Option<f64>,
        /// Number of trials.
        #[arg(long)]
        trials: Option<u64>,
        /// Master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// adjacency, normalized, or both.
        #[arg(long)]
        mode: Option<String>,
        /// Iteration budget for the iterative eigensolver.
        #[arg(long)]
        max_iter: Option<usize>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in closed-form smoke checks.
    Selftest,
}

/// Parse arguments, dispatch, and translate errors to exit codes.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Sample { n1, n2, p, seed, out } => cmd_sample(*n1, *n2, *p, *seed, out),
        Command::Spectrum { input, mode } => cmd_spectrum(cli, input, mode),
        Command::Verify { n1, n2, p, trials, seed } => {
            cmd_verify(cli, *n1, *n2, *p, *trials, *seed)
        }
        Command::Experiment {
            config,
            n1,
            n2,
            p,
            trials,
            seed,
            mode,
            max_iter,
            out,
        } => {
            let cfg = build_experiment_config(
                cli,
                config.as_deref(),
                (*n1, *n2, *p, *trials, *seed),
                mode.as_deref(),
                *max_iter,
            )?;
            cmd_experiment(cli, &cfg, out)
        }
        Command::Selftest => Ok(cmd_selftest()),
    }
}

/// Format a metric with at least six significant decimal digits: plain
/// fixed-point in a comfortable range, scientific notation outside it.
pub fn fmt_metric(x: f64) -> String {
    if x == 0.0 {
        "0.000000".to_string()
    } else if x.is_finite() && (0.1..1e15).contains(&x.abs()) {
        format!("{x:.6}")
    } else {
        format!("{x:.6e}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), fmt_metric)
}

fn cmd_sample(n1: usize, n2: usize, p: f64, seed: u64, out: &Path) -> Result<i32> {
    let mut stream = derive_stream(SeedSpec::new(seed, 0));
    let g = sample_bipartite(n1, n2, p, &mut stream)?;
    save_bipartite(&g, out)?;
    println!("m={}", g.m());
    Ok(0)
}

/// Compute a spectral summary of an arbitrary stored graph, dense below the
/// cap and iterative above it. The iterative path uses a fixed stream so
/// the command is deterministic.
fn summarize(
    matrix: &crate::spectra::SparseSymMatrix,
    cap: usize,
    tol: f64,
) -> Result<SpectralSummary> {
    if matrix.n() <= cap {
        dense_summary(matrix, cap)
    } else {
        let mut stream = derive_stream(SeedSpec::new(0, 0));
        lanczos_extreme(matrix, 2, tol, 512, &mut stream)
    }
}

fn cmd_spectrum(cli: &Cli, input: &Path, mode: &str) -> Result<i32> {
    let mode: Mode = mode.parse()?;
    let cap = cli.oracle_cap.unwrap_or(crate::spectra::DEFAULT_ORACLE_CAP);
    let tol = cli.tol.unwrap_or(1e-8);
    let g = load_bipartite(input)?;
    let s = summarize(&adjacency(&g), cap, tol)?;
    println!("n1={}", g.n1());
    println!("n2={}", g.n2());
    println!("m={}", g.m());
    println!("mu1={}", fmt_metric(s.mu1));
    println!("mu2={}", fmt_metric(s.mu2));
    println!("mu_min={}", fmt_metric(s.mu_min));
    println!("mu_abs={}", fmt_metric(s.mu_abs));
    println!("mu_plus={}", fmt_opt(s.mu_plus));
    println!("mu_plus_certified={}", s.mu_plus_certified);
    println!("residual={}", fmt_metric(s.residual));
    if mode.includes_normalized() {
        let norm = normalized_adjacency(&g, IsolatedPolicy::Strict)?;
        let ns = summarize(norm.base(), cap, tol)?;
        let n = g.n1() + g.n2();
        let gap = if n < 3 {
            0.0
        } else {
            ns.mu2.abs().max(ns.mu_second_last.abs())
        };
        println!("norm_mu1={}", fmt_metric(ns.mu1));
        println!("norm_mu2={}", fmt_metric(ns.mu2));
        println!("norm_mu_second_last={}", fmt_metric(ns.mu_second_last));
        println!("norm_mu_min={}", fmt_metric(ns.mu_min));
        println!("norm_gap={}", fmt_metric(gap));
        println!("norm_residual={}", fmt_metric(ns.residual));
    }
    Ok(0)
}

fn cmd_verify(cli: &Cli, n1: usize, n2: usize, p: f64, trials: u64, seed: u64) -> Result<i32> {
    let mut cfg = ProofChainConfig::new(n1, n2, p, trials, seed);
    if let Some(cap) = cli.oracle_cap {
        cfg.oracle_cap = cap;
    }
    let report = verify_proof_chain(&cfg)?;
    let total = report.total();
    println!("trials={total}");
    println!("reconstruction={}/{total}", report.reconstruction_passes);
    println!("weyl={}/{total}", report.weyl_passes);
    println!("negation={}/{total}", report.negation_passes);
    println!("symmetry={}/{total}", report.symmetry_passes);
    println!("k_residual_computed={}/{total}", report.k_residual_computed);
    println!("k_scaled_median={}", fmt_opt(report.k_scaled_median));
    println!(
        "k_entrywise_scaled_median={}",
        fmt_opt(report.k_entrywise_scaled_median)
    );
    let ok = report.all_passed();
    println!("all_passed={ok}");
    Ok(if ok { 0 } else { 3 })
}

fn require<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Config(format!("missing {flag} (provide it or use --config)")))
}

/// `(n1, n2, p, trials, seed)` as optionally supplied on the command line.
type ExperimentFlags = (Option<usize>, Option<usize>, Option<f64>, Option<u64>, Option<u64>);

fn build_experiment_config(
    cli: &Cli,
    config: Option<&Path>,
    flags: ExperimentFlags,
    mode: Option<&str>,
    max_iter: Option<usize>,
) -> Result<ExperimentConfig> {
    let (n1, n2, p, trials, seed) = flags;
    let mut cfg = match config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::new(
            require(n1, "--n1")?,
            require(n2, "--n2")?,
            require(p, "--p")?,
            require(trials, "--trials")?,
            require(seed, "--seed")?,
        ),
    };
    if let Some(v) = n1 {
        cfg.n1 = v;
    }
    if let Some(v) = n2 {
        cfg.n2 = v;
    }
    if let Some(v) = p {
        cfg.p = v;
    }
    if let Some(v) = trials {
        cfg.trials = v;
    }
    if let Some(v) = seed {
        cfg.master_seed = v;
    }
    if let Some(m) = mode {
        cfg.mode = m.parse()?;
    }
    if let Some(v) = max_iter {
        cfg.max_iter = v;
    }
    if let Some(v) = cli.tol {
        cfg.tol = v;
    }
    if let Some(v) = cli.slack {
        cfg.slack = v;
    }
    if let Some(v) = cli.oracle_cap {
        cfg.oracle_cap = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn available_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn print_summary(summary: &Summary) {
    println!("trials={}", summary.trials);
    println!("excluded={}", summary.excluded);
    println!("satisfied_fraction={}", fmt_metric(summary.satisfied_fraction));
    println!("ratio_min={}", fmt_opt(summary.ratio_min));
    println!("ratio_median={}", fmt_opt(summary.ratio_median));
    println!("ratio_max={}", fmt_opt(summary.ratio_max));
    if let Some(f) = summary.norm_satisfied_fraction {
        println!("norm_satisfied_fraction={}", fmt_metric(f));
    }
    if let Some(d) = summary.mean_rel_dev {
        println!("mean_rel_dev={}", fmt_metric(d));
    }
}

fn cmd_experiment(cli: &Cli, cfg: &ExperimentConfig, out: &Path) -> Result<i32> {
    let workers = cli.workers.unwrap_or_else(available_workers);
    let (records, summary) = run_experiment(cfg, workers)?;
    write_csv(&records, &summary, out)?;
    print_summary(&summary);
    println!("csv={}", out.display());
    Ok(if summary.satisfied_fraction == 1.0 && summary.excluded == 0 {
        0
    } else {
        3
    })
}

/// The smoke checks behind `bigap selftest`: fast, deterministic, each
/// pinned to a closed form. Returns `(name, outcome)` pairs.
pub fn selftest_checks() -> Vec<(&'static str, std::result::Result<(), String>)> {
    type Check = (&'static str, fn() -> std::result::Result<(), String>);

    fn ensure(cond: bool, detail: String) -> std::result::Result<(), String> {
        if cond {
            Ok(())
        } else {
            Err(detail)
        }
    }
    fn close(x: f64, y: f64, tol: f64, what: &str) -> std::result::Result<(), String> {
        ensure((x - y).abs() <= tol, format!("{what}: {x} vs {y}"))
    }
    fn fresh(seed: u64) -> Stream {
        derive_stream(SeedSpec::new(seed, 0))
    }
    fn complete(n1: usize, n2: usize) -> BipartiteGraph {
        let mut s = fresh(0);
        sample_bipartite(n1, n2, 1.0, &mut s).unwrap()
    }

    let checks: Vec<Check> = vec![
        ("stream-determinism", || {
            let (mut a, mut b) = (fresh(42), fresh(42));
            for _ in 0..16 {
                if a.next_u64() != b.next_u64() {
                    return Err("identical seeds diverged".into());
                }
            }
            let mut c = derive_stream(SeedSpec::new(42, 1));
            ensure(fresh(42).next_u64() != c.next_u64(), "trial streams collide".into())
        }),
        ("sampler-extremes", || {
            let mut s = fresh(3);
            let empty = sample_bipartite(4, 7, 0.0, &mut s).map_err(|e| e.to_string())?;
            ensure(empty.m() == 0, format!("p=0 gave {} edges", empty.m()))?;
            let full = sample_bipartite(4, 7, 1.0, &mut s).map_err(|e| e.to_string())?;
            ensure(full.m() == 28, format!("p=1 gave {} edges", full.m()))
        }),
        ("complete-bipartite-spectrum", || {
            let s = dense_summary(&adjacency(&complete(2, 3)), 16).map_err(|e| e.to_string())?;
            close(s.mu1, 6.0f64.sqrt(), 1e-10, "mu1 of K_{2,3}")?;
            close(s.mu2, 0.0, 1e-10, "mu2 of K_{2,3}")?;
            close(s.mu_min, -(6.0f64.sqrt()), 1e-10, "mu_min of K_{2,3}")
        }),
        ("path-spectrum", || {
            let eigs = dense_eig(&adjacency(&complete(1, 2))).map_err(|e| e.to_string())?;
            close(eigs[0], -(2.0f64.sqrt()), 1e-12, "low end of the 3-path")?;
            close(eigs[1], 0.0, 1e-12, "middle of the 3-path")?;
            close(eigs[2], 2.0f64.sqrt(), 1e-12, "top of the 3-path")
        }),
        ("smallest-positive-eigenvalue", || {
            let s = dense_summary(&adjacency(&complete(4, 6)), 16).map_err(|e| e.to_string())?;
            let mu_plus = s.mu_plus.ok_or("mu_plus missing for K_{4,6}")?;
            ensure(s.mu_plus_certified, "mu_plus not certified on a full spectrum".into())?;
            close(mu_plus, 24.0f64.sqrt(), 1e-10, "mu_plus of K_{4,6}")
        }),
        ("scale-identity", || {
            let (n1, n2, p) = (100, 200, 0.3);
            let lhs = normalized_gap_bound(n1, n2, p).map_err(|e| e.to_string())?
                * ((n1 * n2) as f64 * p * p).sqrt();
            let rhs = theorem_bound(n1, n2, p).map_err(|e| e.to_string())?;
            close(lhs / rhs, 1.0, 1e-12, "normalized and adjacency bounds")
        }),
        ("perturbation-sandwich", || {
            let mut s = fresh(17);
            let g1 = sample_bipartite(3, 4, 0.6, &mut s).map_err(|e| e.to_string())?;
            let g2 = sample_bipartite(3, 4, 0.6, &mut s).map_err(|e| e.to_string())?;
            let (a, b) = (adjacency(&g1), adjacency(&g2));
            let sum = add(&a, &b).map_err(|e| e.to_string())?;
            let desc = |m| -> std::result::Result<Vec<f64>, String> {
                let mut e = dense_eig(m).map_err(|e| e.to_string())?;
                e.reverse();
                Ok(e)
            };
            let (ok, worst) = weyl_check(&desc(&a)?, &desc(&b)?, &desc(&sum)?, 1e-10)
                .map_err(|e| e.to_string())?;
            ensure(ok, format!("sandwich violated by {worst}"))
        }),
        ("iterative-matches-dense", || {
            let mut s = fresh(8);
            let g = sample_bipartite(30, 40, 0.3, &mut s).map_err(|e| e.to_string())?;
            let a = adjacency(&g);
            let d = dense_summary(&a, 128).map_err(|e| e.to_string())?;
            let l = lanczos_extreme(&a, 2, 1e-10, 512, &mut s).map_err(|e| e.to_string())?;
            close(l.mu1, d.mu1, 1e-8, "mu1")?;
            close(l.mu2, d.mu2, 1e-8, "mu2")?;
            close(l.mu_second_last, d.mu_second_last, 1e-8, "mu_second_last")?;
            close(l.mu_min, d.mu_min, 1e-8, "mu_min")
        }),
        ("biregular-residual", || {
            let k = k_residual(&complete(5, 8), 1.0).map_err(|e| e.to_string())?;
            ensure(
                k.norm_inf == 0.0 && k.entrywise == 0.0,
                format!("complete graph residual {} / {}", k.norm_inf, k.entrywise),
            )
        }),
    ];

    checks.into_iter().map(|(name, f)| (name, f())).collect()
}

fn cmd_selftest() -> i32 {
    let mut failures = 0;
    for (name, outcome) in selftest_checks() {
        match outcome {
            Ok(()) => println!("ok {name}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failures == 0 {
        println!("selftest passed");
        0
    } else {
        println!("selftest failed ({failures} checks)");
        3
    }
}
