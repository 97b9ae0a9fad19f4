//! Brute-force dense eigendecomposition, the oracle everything else is
//! measured against.
//!
//! The O(n^3) cost is capped (default 1024) so an accidental call at
//! experiment scale fails loudly instead of stalling. Residuals reported by
//! [`dense_summary`] are measured honestly against the sparse matrix, not
//! assumed from the factorization.

use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::spectra::sparse::SparseSymMatrix;
use crate::spectra::SpectralSummary;

/// Default dimension cap for the dense path: n^3 work stays comfortably
/// under a second up to here.
pub const DEFAULT_ORACLE_CAP: usize = 1024;

/// All eigenvalues of a symmetric sparse matrix, ascending, via dense
/// decomposition. Errors above [`DEFAULT_ORACLE_CAP`].
pub fn dense_eig(m: &SparseSymMatrix) -> Result<Vec<f64>> {
    dense_eig_with_cap(m, DEFAULT_ORACLE_CAP)
}

/// [`dense_eig`] with an explicit cap.
pub fn dense_eig_with_cap(m: &SparseSymMatrix, cap: usize) -> Result<Vec<f64>> {
    let decomposition = decompose(m, cap)?;
    let mut eigs: Vec<f64> = decomposition.eigenvalues.iter().copied().collect();
    eigs.sort_unstable_by(f64::total_cmp);
    Ok(eigs)
}

/// Full-spectrum [`SpectralSummary`] via the dense path, with residuals of
/// the four extreme eigenpairs measured against the sparse matrix.
pub fn dense_summary(m: &SparseSymMatrix, cap: usize) -> Result<SpectralSummary> {
    let decomposition = decompose(m, cap)?;
    let n = m.n();
    // Ascending permutation of the (unsorted) eigenvalues.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| {
        decomposition.eigenvalues[a].total_cmp(&decomposition.eigenvalues[b])
    });
    let eigs: Vec<f64> = order.iter().map(|&i| decomposition.eigenvalues[i]).collect();

    // Residuals for the extreme pairs: mu_n, mu_{n-1}, mu2, mu1.
    let mut residual = 0.0f64;
    let targets: Vec<usize> = if n >= 2 { vec![0, 1, n - 2, n - 1] } else { vec![0] };
    let mut av = vec![0.0; n];
    for &pos in &targets {
        let col = decomposition.eigenvectors.column(order[pos]);
        let v: Vec<f64> = col.iter().copied().collect();
        m.matvec(&v, &mut av);
        let lambda = eigs[pos];
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            let r = av[i] - lambda * v[i];
            num += r * r;
            den += v[i] * v[i];
        }
        residual = residual.max((num / den.max(f64::MIN_POSITIVE)).sqrt());
    }
    Ok(SpectralSummary::from_full_spectrum(&eigs, residual, m.infinity_norm()))
}

fn decompose(m: &SparseSymMatrix, cap: usize) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    if m.n() > cap {
        return Err(Error::OracleCap { n: m.n(), cap });
    }
    if m.n() == 0 {
        return Err(Error::domain("cannot decompose an empty matrix"));
    }
    Ok(SymmetricEigen::new(m.to_dense()))
}
