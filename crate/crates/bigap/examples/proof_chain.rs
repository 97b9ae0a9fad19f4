//! Replaying the argument behind the bound, one mechanical step at a time.
//!
//! The proof of the second-eigenvalue bound runs through a concrete chain:
//! extend the bipartite graph G to a one-part graph G' by sampling the
//! within-side pairs too; split `A(G')` into left-block + cross + right-block;
//! then chain two eigenvalue perturbation steps into
//!
//! ```text
//! mu_2(A(G)) <= mu_2(A(G')) + mu_1(-A_left) + mu_1(-A_right)
//! ```
//!
//! using the negation rule `mu_i(-M) = -mu_{n+1-i}(M)` to express the
//! correction terms. Each step is a falsifiable numerical identity, and
//! this example replays all of them at several edge densities — including
//! the degenerate p = 0 and p = 1, where everything has a closed form.
//!
//! ```text
//! cargo run --example proof_chain
//! ```

use bigap::{verify_proof_chain, ProofChainConfig};

fn main() -> bigap::Result<()> {
    println!("block-decomposition replay at n1 = n2 = 20, 25 trials per density\n");
    println!(
        "{:>5} {:>15} {:>8} {:>10} {:>10} {:>12} {:>14}",
        "p", "reconstruction", "weyl", "negation", "symmetry", "min margin", "k residual"
    );

    for p in [0.0, 0.1, 0.3, 0.7, 1.0] {
        let report = verify_proof_chain(&ProofChainConfig::new(20, 20, p, 25, 1))?;
        let total = report.total();

        // The worst-case headroom in the chain inequality: how far the
        // right side stayed above the left. Never negative on a pass.
        let min_margin = report
            .trials
            .iter()
            .map(|t| t.weyl_margin)
            .fold(f64::INFINITY, f64::min);

        println!(
            "{p:>5.1} {:>12}/{total} {:>6}/{total} {:>8}/{total} {:>8}/{total} {min_margin:>12.4} {:>14}",
            report.reconstruction_passes,
            report.weyl_passes,
            report.negation_passes,
            report.symmetry_passes,
            match report.k_scaled_median {
                Some(k) => format!("{k:.4}"),
                None => "undefined".to_string(),
            },
        );
        assert!(report.all_passed(), "identity check failed at p = {p}");
    }

    println!(
        "\nevery identity held in every trial; the chain's margin is the \
         distance between\nthe bipartite second eigenvalue and what the \
         one-part argument guarantees for it.\nAt p = 0 the margin is \
         exactly 0 (all matrices vanish); at p = 1 it is exactly 1\n\
         (mu_2 of a complete graph is -1, and each correction term \
         contributes +1)."
    );
    Ok(())
}
