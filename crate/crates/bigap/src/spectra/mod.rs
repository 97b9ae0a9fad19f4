//! Spectral machinery: sparse symmetric matrices, the iterative extreme
//! eigensolver, the brute-force dense oracle, the normalized adjacency
//! operator, and the bookkeeping checks (ordering, symmetry, negation).
//!
//! Eigenvalues follow the descending convention mu1 >= mu2 >= ... >= mu_n.
//! Two derived scalars recur throughout the laboratory:
//!
//! * `mu_abs` — `max(|mu2|, |mu_n|)`, the largest nontrivial eigenvalue
//!   magnitude, the quantity bounded by the second-eigenvalue theorem;
//! * `mu_plus` — the least strictly positive eigenvalue, reported with an
//!   explicit certification flag because an extreme-only solver cannot
//!   always prove it has seen the smallest positive one.
//!
//! Every solver path reports an honest residual `max ||Mv - lambda v|| /
//! ||v||` over the eigenpairs it returns; no eigenvalue enters a summary
//! without its residual having been measured against the matrix itself.

mod checks;
mod dense;
mod lanczos;
mod normalized;
mod sparse;

pub use checks::{check_bipartite_symmetry, negation_spectrum_check};
pub use dense::{dense_eig, dense_eig_with_cap, dense_summary, DEFAULT_ORACLE_CAP};
pub use lanczos::lanczos_extreme;
pub use normalized::{k_residual, normalized_adjacency, IsolatedPolicy, KResidual, NormalizedAdjacency};
pub use sparse::{add, adjacency, adjacency_full, split_blocks, SparseSymMatrix};

/// Extreme eigenvalues of a symmetric matrix in descending-order notation,
/// with the derived scalars and the solver's measured residual.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    /// Largest eigenvalue, mu1.
    pub mu1: f64,
    /// Second largest, mu2.
    pub mu2: f64,
    /// Second smallest, mu_{n-1}.
    pub mu_second_last: f64,
    /// Smallest, mu_n.
    pub mu_min: f64,
    /// `max(|mu2|, |mu_n|)`.
    pub mu_abs: f64,
    /// Least strictly positive eigenvalue among those computed, if any.
    pub mu_plus: Option<f64>,
    /// Whether `mu_plus` (or its absence) is certain: true when the whole
    /// spectrum was computed, or when the uncomputed interior is provably on
    /// the correct side of the candidates. False means "smallest positive
    /// seen so far, but an unseen interior eigenvalue could undercut it".
    pub mu_plus_certified: bool,
    /// `max ||Mv - lambda v||_2 / ||v||_2` over the reported eigenpairs.
    pub residual: f64,
}

/// Threshold below which an eigenvalue is treated as "not strictly positive"
/// when locating `mu_plus`, relative to the matrix scale: numerically, exact
/// zeros surface as values of order `n * eps * scale`, far below this floor,
/// while genuinely positive eigenvalues of desk-scale graphs sit far above.
pub(crate) fn positive_floor(scale: f64) -> f64 {
    1e-10 * scale.max(1.0)
}

impl SpectralSummary {
    /// Assemble a summary from a complete ascending spectrum. `scale` is the
    /// matrix magnitude used for the positivity floor (typically the
    /// infinity norm); `residual` is the honest measured residual of the
    /// extreme pairs.
    ///
    /// With the whole spectrum in hand, `mu_plus` is always certified. For
    /// the degenerate 1-dimensional case the second eigenvalues coincide
    /// with the extremes.
    pub fn from_full_spectrum(eigs_ascending: &[f64], residual: f64, scale: f64) -> Self {
        assert!(!eigs_ascending.is_empty(), "summary of an empty spectrum");
        let n = eigs_ascending.len();
        let mu1 = eigs_ascending[n - 1];
        let mu_min = eigs_ascending[0];
        let mu2 = if n >= 2 { eigs_ascending[n - 2] } else { mu1 };
        let mu_second_last = if n >= 2 { eigs_ascending[1] } else { mu_min };
        let floor = positive_floor(scale);
        let mu_plus = eigs_ascending.iter().copied().find(|&x| x > floor);
        SpectralSummary {
            mu1,
            mu2,
            mu_second_last,
            mu_min,
            mu_abs: mu2.abs().max(mu_min.abs()),
            mu_plus,
            mu_plus_certified: true,
            residual,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_from_an_ascending_spectrum_orders_fields() {
        let s = SpectralSummary::from_full_spectrum(&[-2.0, -0.5, 0.0, 1.0, 3.0], 1e-12, 3.0);
        assert_eq!(s.mu1, 3.0);
        assert_eq!(s.mu2, 1.0);
        assert_eq!(s.mu_second_last, -0.5);
        assert_eq!(s.mu_min, -2.0);
        assert_eq!(s.mu_abs, 2.0);
        assert_eq!(s.mu_plus, Some(1.0));
        assert!(s.mu_plus_certified);
    }

    #[test]
    fn mu_plus_skips_numerical_zeros() {
        // 1e-14 at scale 1 is below the positivity floor: an exact zero
        // computed in floating point, not a real positive eigenvalue.
        let s = SpectralSummary::from_full_spectrum(&[-1.0, 1e-14, 1.0], 0.0, 1.0);
        assert_eq!(s.mu_plus, Some(1.0));
    }

    #[test]
    fn mu_plus_is_none_for_a_nonpositive_spectrum() {
        let s = SpectralSummary::from_full_spectrum(&[-3.0, -1.0, 0.0], 0.0, 3.0);
        assert_eq!(s.mu_plus, None);
        assert!(s.mu_plus_certified);
    }

    #[test]
    fn one_dimensional_spectrum_degenerates_cleanly() {
        let s = SpectralSummary::from_full_spectrum(&[2.5], 0.0, 2.5);
        assert_eq!((s.mu1, s.mu2, s.mu_second_last, s.mu_min), (2.5, 2.5, 2.5, 2.5));
    }
}
