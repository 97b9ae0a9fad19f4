//! Where the final normalization step genuinely holds — and where it
//! doesn't: a measurement with two honest readings.
//!
//! With expectation-perfect degrees, `A / sqrt(n1 n2 p^2)` and the
//! normalized adjacency `D^{-1/2} A D^{-1/2}` would coincide. Their
//! difference K measures degree fluctuation, and the question is whether K
//! vanishes, after multiplying by `sqrt(n1 n2 p^2)`, as n grows. The answer
//! depends on which norm you read:
//!
//! - **entrywise max** `max_ij |K_ij|`, rescaled, decays like
//!   `sqrt(ln n / (n p))` — the perturbation per entry genuinely vanishes;
//! - **induced infinity norm** (max absolute row sum), rescaled, *grows*
//!   like `sqrt(n p ln n)`: a row sums ~np entrywise errors, so the very
//!   norm that would dominate the spectral radius does not go to zero.
//!
//! This example prints both readings side by side over a size ladder, so
//! the divergence is a reproducible observation rather than a footnote.
//! The spectral conclusion survives anyway — the normalized spectrum equals
//! the `A/(np)`-spectrum up to the factor `np / d_i d_j`-style degree
//! ratios, which concentrate at 1 — but it is *not* delivered by the
//! induced-norm route; see the normalized_gap example for the direct
//! verification.
//!
//! ```text
//! cargo run --example kresidual_decay
//! ```

use bigap::rng::{derive_stream, SeedSpec};
use bigap::{k_residual, sample_bipartite};

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn main() -> bigap::Result<()> {
    let (p, trials) = (0.1, 20u64);
    println!("K = A / sqrt(n1 n2 p^2) - D^(-1/2) A D^(-1/2),  p = {p}, {trials} trials per size\n");
    println!(
        "{:>6} {:>22} {:>22}",
        "n", "entrywise * scale", "induced inf * scale"
    );

    let mut entrywise_medians = Vec::new();
    let mut induced_medians = Vec::new();
    for n in [250usize, 500, 1000] {
        let mut entrywise = Vec::new();
        let mut induced = Vec::new();
        for trial in 0..trials {
            let mut stream = derive_stream(SeedSpec::new(606, trial));
            let g = sample_bipartite(n, n, p, &mut stream)?;
            let k = k_residual(&g, p)?;
            entrywise.push(k.entrywise_scaled);
            induced.push(k.scaled);
        }
        let (e, i) = (median(entrywise), median(induced));
        println!("{n:>6} {e:>22.4} {i:>22.4}");
        entrywise_medians.push(e);
        induced_medians.push(i);
    }

    let decays = entrywise_medians.windows(2).all(|w| w[1] < w[0]);
    let grows = induced_medians.windows(2).all(|w| w[1] > w[0]);
    println!("\nentrywise reading strictly decays:  {decays}");
    println!("induced-norm reading strictly grows: {grows}");
    println!(
        "\nboth statements are checked, not assumed — the acceptance suite \
         pins the observed\nmedians as regression bands and records the \
         induced-norm reading as a genuine\ncounterexample to the \
         vanishing claim at this scale"
    );
    Ok(())
}
