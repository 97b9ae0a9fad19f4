//! Randomized invariants: property-based checks over wide parameter ranges
//! (proptest) and distributional goodness-of-fit tests that compare the
//! sampler and the raw stream against their exact reference laws
//! (chi-square with critical values from `statrs`, never hand-waved).

use std::collections::BTreeSet;

use proptest::prelude::*;
use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, DiscreteCDF};

use bigap::harness::{csv_string, parse_csv_str};
use bigap::rng::{derive_stream, SeedSpec};
use bigap::spectra::{add, adjacency, dense_eig, dense_summary};
use bigap::{
    fk_bound, normalized_gap_bound, run_experiment, sample_bipartite, theorem_bound, weyl_check,
    ExperimentConfig, Mode, Summary,
};

proptest! {
    /// Sampling is a pure function of `(n1, n2, p, seed, trial)`: repeated
    /// calls agree bit for bit, and every sample is a simple bipartite
    /// graph — indices in range, no duplicate edges, extremes exact.
    #[test]
    fn sampled_graphs_are_valid_and_deterministic(
        n1 in 1usize..=24,
        n2 in 1usize..=24,
        p in 0.0f64..=1.0,
        seed in any::<u64>(),
        trial in 0u64..1000,
    ) {
        let mut s1 = derive_stream(SeedSpec::new(seed, trial));
        let mut s2 = derive_stream(SeedSpec::new(seed, trial));
        let g1 = sample_bipartite(n1, n2, p, &mut s1).unwrap();
        let g2 = sample_bipartite(n1, n2, p, &mut s2).unwrap();
        prop_assert_eq!(&g1, &g2);

        prop_assert!(g1.m() <= n1 * n2);
        let distinct: BTreeSet<_> = g1.edges().iter().collect();
        prop_assert_eq!(distinct.len(), g1.m(), "duplicate edge escaped the sampler");
        for &(i, j) in g1.edges() {
            prop_assert!(i < n1 && j < n2, "edge ({i}, {j}) out of range");
        }
        if p == 0.0 {
            prop_assert_eq!(g1.m(), 0);
        }
        if p == 1.0 {
            prop_assert_eq!(g1.m(), n1 * n2);
        }
    }

    /// Closed-form algebra of the bounds, over the whole parameter box:
    /// positivity, the exact square-part ratio, the adjacency/normalized
    /// scale identity, and monotonicity in the edge probability.
    #[test]
    fn bound_formulas_satisfy_their_algebra(
        n1 in 1usize..=2000,
        n2 in 1usize..=2000,
        pa in 1e-6f64..=1.0,
        pb in 1e-6f64..=1.0,
    ) {
        let p = pa;
        let theorem = theorem_bound(n1, n2, p).unwrap();
        prop_assert!(theorem > 0.0);

        // Equal parts collapse to a single scale: the bound is exactly
        // (sqrt(2) + 2) times the one-part law 2 sqrt(np).
        let square = theorem_bound(n1, n1, p).unwrap() / fk_bound(n1, p).unwrap();
        prop_assert!((square - (2.0f64.sqrt() + 2.0)).abs() <= 1e-12 * square);

        // Normalized and adjacency scales describe one bound.
        let scaled = normalized_gap_bound(n1, n2, p).unwrap()
            * ((n1 * n2) as f64 * p * p).sqrt();
        prop_assert!((scaled - theorem).abs() <= 1e-12 * theorem,
            "scale identity broke: {scaled} vs {theorem}");

        // More edges: larger adjacency bound, smaller normalized bound.
        let (lo, hi) = if pa <= pb { (pa, pb) } else { (pb, pa) };
        let eps = 1e-12 * theorem;
        prop_assert!(
            theorem_bound(n1, n2, lo).unwrap() <= theorem_bound(n1, n2, hi).unwrap() + eps
        );
        prop_assert!(
            normalized_gap_bound(n1, n2, hi).unwrap()
                <= normalized_gap_bound(n1, n2, lo).unwrap() + eps
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Bipartite adjacency spectra are symmetric around zero, sum to the
    /// zero trace, and (for three or more vertices) have a nonnegative
    /// second-largest eigenvalue.
    #[test]
    fn bipartite_spectra_are_symmetric_about_zero(
        n1 in 1usize..=8,
        n2 in 1usize..=8,
        p in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let mut s = derive_stream(SeedSpec::new(seed, 0));
        let g = sample_bipartite(n1, n2, p, &mut s).unwrap();
        let eigs = dense_eig(&adjacency(&g)).unwrap();
        let n = n1 + n2;
        let scale = eigs.last().unwrap().abs().max(1.0);
        for i in 0..n {
            prop_assert!(
                (eigs[i] + eigs[n - 1 - i]).abs() <= 1e-8 * scale,
                "spectrum not symmetric: {} vs {}", eigs[i], eigs[n - 1 - i]
            );
        }
        prop_assert!(eigs.iter().sum::<f64>().abs() <= 1e-8 * scale * n as f64);
        if n >= 3 {
            let s = dense_summary(&adjacency(&g), 64).unwrap();
            prop_assert!(s.mu2 >= -1e-10, "mu2 = {} negative", s.mu2);
        }
    }

    /// The eigenvalue perturbation inequality holds for random pairs of
    /// graphs on the same vertex set, at every index.
    #[test]
    fn perturbation_inequality_holds_for_random_pairs(
        n1 in 1usize..=7,
        n2 in 1usize..=7,
        pa in 0.0f64..=1.0,
        pb in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let mut s = derive_stream(SeedSpec::new(seed, 0));
        let ga = sample_bipartite(n1, n2, pa, &mut s).unwrap();
        let gb = sample_bipartite(n1, n2, pb, &mut s).unwrap();
        let (a, b) = (adjacency(&ga), adjacency(&gb));
        let sum = add(&a, &b).unwrap();
        let desc = |m| {
            let mut e = dense_eig(m).unwrap();
            e.reverse();
            e
        };
        let (ok, worst) = weyl_check(&desc(&a), &desc(&b), &desc(&sum), 1e-8).unwrap();
        prop_assert!(ok, "inequality violated by {worst}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// A full experiment written to CSV text and parsed back reproduces
    /// every record bit for bit (timings aside) and recomputes to the
    /// same summary — including runs where trials legitimately fail.
    #[test]
    fn experiment_csv_round_trips_exactly(
        (n1, n2) in (1usize..=10).prop_flat_map(|a| (Just(a), a..=12usize)),
        p in 0.05f64..=1.0,
        trials in 1u64..=4,
        seed in any::<u64>(),
        both in any::<bool>(),
    ) {
        let mut cfg = ExperimentConfig::new(n1, n2, p, trials, seed);
        cfg.mode = if both { Mode::Both } else { Mode::Adjacency };
        let (records, summary) = run_experiment(&cfg, 2).unwrap();
        let text = csv_string(&records, &summary);
        let parsed = parse_csv_str(&text, "<memory>").unwrap();
        prop_assert_eq!(parsed.len(), records.len());
        for (orig, back) in records.iter().zip(&parsed) {
            prop_assert!(orig.content_eq(back),
                "trial {} did not survive the round trip", orig.trial_index);
        }
        let recomputed = Summary::compute(&parsed, cfg.slack);
        prop_assert_eq!(recomputed, summary);
    }
}

/// Smallest `k` with `CDF(k) >= q`, by linear scan.
fn binomial_quantile(dist: &Binomial, q: f64, n: u64) -> u64 {
    (0..=n).find(|&k| dist.cdf(k) >= q).unwrap_or(n)
}

fn chi_square_critical(cells: usize, alpha: f64) -> f64 {
    ChiSquared::new((cells - 1) as f64).unwrap().inverse_cdf(1.0 - alpha)
}

/// Edge counts of `G(30, 40, 0.2)` against the exact `Bin(1200, 0.2)` law:
/// 400 independent samples, octile cells, chi-square at the 0.1% level.
/// The seed is fixed, so this is deterministic — a failure means the
/// sampler's law drifted, not bad luck.
#[test]
fn edge_counts_match_the_binomial_law() {
    let (n1, n2, p, samples) = (30usize, 40usize, 0.2f64, 400u64);
    let pairs = (n1 * n2) as u64;
    let dist = Binomial::new(p, pairs).unwrap();

    // Cell boundaries at the octiles of the reference law, deduplicated so
    // every cell has comfortably large expected mass.
    let mut bounds: Vec<u64> =
        (1..8).map(|j| binomial_quantile(&dist, j as f64 / 8.0, pairs)).collect();
    bounds.dedup();
    let cells = bounds.len() + 1;
    assert!(cells >= 5, "degenerate reference law");

    let mut observed = vec![0u64; cells];
    for trial in 0..samples {
        let mut s = derive_stream(SeedSpec::new(2718, trial));
        let m = sample_bipartite(n1, n2, p, &mut s).unwrap().m() as u64;
        let cell = bounds.iter().position(|&b| m <= b).unwrap_or(cells - 1);
        observed[cell] += 1;
    }

    let mut chi2 = 0.0;
    for (cell, &obs) in observed.iter().enumerate() {
        let lo = if cell == 0 { 0.0 } else { dist.cdf(bounds[cell - 1]) };
        let hi = if cell == cells - 1 { 1.0 } else { dist.cdf(bounds[cell]) };
        let expected = (hi - lo) * samples as f64;
        assert!(expected > 20.0, "cell {cell} too thin for chi-square");
        chi2 += (obs as f64 - expected).powi(2) / expected;
    }
    let crit = chi_square_critical(cells, 0.001);
    assert!(
        chi2 < crit,
        "edge-count law rejected: chi2 = {chi2:.2} >= {crit:.2} over {cells} cells"
    );
}

/// Raw unit-interval draws fill ten equal bins uniformly (chi-square at
/// the 0.1% level) and never leave `[0, 1)`. Deterministic, like above.
#[test]
fn unit_interval_draws_are_uniform() {
    let draws = 20_000usize;
    let mut s = derive_stream(SeedSpec::new(31415, 0));
    let mut observed = [0u64; 10];
    for _ in 0..draws {
        let x = s.next_f64();
        assert!((0.0..1.0).contains(&x), "draw {x} escaped [0, 1)");
        observed[(x * 10.0) as usize] += 1;
    }
    let expected = draws as f64 / 10.0;
    let chi2: f64 =
        observed.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let crit = chi_square_critical(10, 0.001);
    assert!(chi2 < crit, "uniformity rejected: chi2 = {chi2:.2} >= {crit:.2}");
}
