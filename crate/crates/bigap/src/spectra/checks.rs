//! Spectral bookkeeping checks: the bipartite symmetry of adjacency spectra
//! and the index-reversal rule for negated matrices.
//!
//! Both are stated over eigenvalue *lists*, so they compose with either
//! solver path — and both return the worst defect alongside the verdict, so
//! a failing check quantifies by how much it failed.

use crate::error::{Error, Result};

/// Is a sorted spectrum symmetric around zero? Returns the verdict together
/// with the maximum pairing defect `max_i |mu_i + mu_{n+1-i}|`.
///
/// The input must be sorted (either direction works — the pairing is
/// palindromic). Bipartite adjacency spectra satisfy this exactly.
pub fn check_bipartite_symmetry(sorted_eigs: &[f64], tol: f64) -> (bool, f64) {
    let n = sorted_eigs.len();
    let defect = (0..n)
        .map(|i| (sorted_eigs[i] + sorted_eigs[n - 1 - i]).abs())
        .fold(0.0, f64::max);
    (defect <= tol, defect)
}

/// Verify the negation rule `mu_i(-M) = -mu_{n+1-i}(M)` for every index.
///
/// Both lists must be sorted in the *same* direction (either works: the
/// defect `max_i |nu_i + mu_{n+1-i}|` is invariant under reversing both)
/// and have equal length; returns the verdict and the worst defect.
pub fn negation_spectrum_check(
    eigs_sorted: &[f64],
    eigs_neg_sorted: &[f64],
    tol: f64,
) -> Result<(bool, f64)> {
    if eigs_sorted.len() != eigs_neg_sorted.len() {
        return Err(Error::domain(format!(
            "spectrum length mismatch: {} vs {}",
            eigs_sorted.len(),
            eigs_neg_sorted.len()
        )));
    }
    let n = eigs_sorted.len();
    let defect = (0..n)
        .map(|i| (eigs_neg_sorted[i] + eigs_sorted[n - 1 - i]).abs())
        .fold(0.0, f64::max);
    Ok((defect <= tol, defect))
}
