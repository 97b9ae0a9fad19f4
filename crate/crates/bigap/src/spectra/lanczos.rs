//! Lanczos iteration with full reorthogonalization for the extreme
//! eigenvalues of a sparse symmetric matrix.
//!
//! Design points, in the order they matter:
//!
//! * **Full reorthogonalization.** Every new basis vector is orthogonalized
//!   (classical Gram–Schmidt, with a second pass when the first one removes
//!   a large component) against the *entire* accumulated basis. At desk
//!   scale the O(j·n) per-step cost is cheap, and it buys freedom from the
//!   ghost-eigenvalue pathology of plain Lanczos.
//! * **Breakdown restarts.** When the residual basis vector collapses
//!   (`beta ~ 0`), the Krylov space has locked onto an invariant subspace.
//!   We record a zero coupling in the tridiagonal matrix and continue with a
//!   fresh random vector orthogonal to everything so far. The tridiagonal
//!   matrix becomes block diagonal and its eigendecomposition merges all
//!   sweeps automatically. This is what makes *degenerate* extreme
//!   eigenvalues reachable: a single Krylov sweep can only ever see one copy
//!   of each eigenvalue, so e.g. the triple zero of the complete bipartite
//!   2x3 graph requires a restart to surface as mu2. If the basis exhausts
//!   all n dimensions, every eigenvalue has been found and the summary says
//!   so (certified mu_plus).
//! * **Honest convergence.** Cheap estimates (`|beta_j * s_last|` from the
//!   tridiagonal eigenvectors) only *gate* the expensive test; acceptance is
//!   always by the measured residual `||A v - theta v|| / ||v||` of the
//!   assembled Ritz pairs. Non-convergence is an error carrying the best
//!   residual achieved — never a silently degraded number.
//!
//! The returned `mu_plus` is the least strictly positive *computed*
//! eigenvalue; it is certified only when the uncomputed interior provably
//! cannot undercut it (see `certify_mu_plus`).

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::spectra::sparse::SparseSymMatrix;
use crate::spectra::{dense_summary, positive_floor, SpectralSummary};

/// How often (in Lanczos steps) the convergence estimate is consulted.
const CHECK_CADENCE: usize = 8;

/// Ratio used by the two-pass Gram–Schmidt criterion: if one pass shrinks
/// the vector below this fraction of its prior norm, cancellation was
/// significant and a second pass runs.
const REORTH_THRESHOLD: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Compute the `k_each_end` largest and smallest eigenvalues of a symmetric
/// sparse matrix by restarted Lanczos with full reorthogonalization.
///
/// Each reported eigenpair satisfies `||A v - theta v|| / ||v|| <= tol`.
/// Matrices smaller than `2 * k_each_end` fall through to the dense oracle.
/// Non-convergence within `max_iter` basis extensions is an explicit error.
pub fn lanczos_extreme(
    m: &SparseSymMatrix,
    k_each_end: usize,
    tol: f64,
    max_iter: usize,
    stream: &mut Stream,
) -> Result<SpectralSummary> {
    let n = m.n();
    if n == 0 {
        return Err(Error::domain("cannot solve an empty matrix"));
    }
    if k_each_end < 2 {
        return Err(Error::domain(format!(
            "k_each_end must be at least 2 to populate mu2 and mu_(n-1), got {k_each_end}"
        )));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    if n < 2 * k_each_end {
        // Too small for two disjoint Ritz ends; the dense path is exact and
        // instant here.
        return dense_summary(m, n);
    }

    let scale = m.infinity_norm().max(1.0);
    let budget = max_iter.max(1);

    let mut state = LanczosState::new(m, scale);
    state.push_start_vector(stream)?;

    let mut best_residual = f64::INFINITY;
    for step in 1..=budget {
        let outcome = state.extend(stream);
        let exhausted = matches!(outcome, Extend::Exhausted);

        let due = exhausted
            || step == budget
            || matches!(outcome, Extend::Junction)
            || state.dim().is_multiple_of(CHECK_CADENCE);
        if due {
            if let Some(summary) =
                state.try_accept(k_each_end, tol, &mut best_residual)
            {
                return Ok(summary);
            }
        }
        if exhausted {
            break;
        }
    }
    // One final attempt covers the case where the budget ended between
    // cadence points.
    if let Some(summary) = state.try_accept(k_each_end, tol, &mut best_residual) {
        return Ok(summary);
    }
    Err(Error::NonConvergence { max_iter: budget, best_residual, tol })
}

/// What happened when the basis was asked to grow by one vector.
enum Extend {
    /// A regular Lanczos step added a coupled vector.
    Grew,
    /// Breakdown: an invariant subspace closed; a fresh random vector was
    /// spliced in with zero coupling.
    Junction,
    /// The basis spans the whole space (or no usable new direction exists);
    /// every eigenvalue is now in the tridiagonal matrix.
    Exhausted,
}

struct LanczosState<'a> {
    m: &'a SparseSymMatrix,
    n: usize,
    scale: f64,
    /// Coupling magnitude below which the Krylov space is declared invariant.
    breakdown_eps: f64,
    /// Orthonormal basis vectors, q[0..=dim].
    q: Vec<Vec<f64>>,
    /// Diagonal of the tridiagonal matrix; alpha[j] pairs with q[j].
    alpha: Vec<f64>,
    /// Couplings; beta[j] joins q[j] to q[j+1] (0.0 at junctions).
    beta: Vec<f64>,
}

impl<'a> LanczosState<'a> {
    fn new(m: &'a SparseSymMatrix, scale: f64) -> Self {
        LanczosState {
            m,
            n: m.n(),
            scale,
            breakdown_eps: scale * 1e-13,
            q: Vec::new(),
            alpha: Vec::new(),
            beta: Vec::new(),
        }
    }

    /// Number of processed basis vectors = dimension of the tridiagonal matrix.
    fn dim(&self) -> usize {
        self.alpha.len()
    }

    fn push_start_vector(&mut self, stream: &mut Stream) -> Result<()> {
        let v = self
            .random_orthonormal(stream)
            .ok_or_else(|| Error::domain("could not draw a start vector"))?;
        self.q.push(v);
        Ok(())
    }

    /// Draw a random vector and orthogonalize it against the current basis.
    /// Returns `None` when no numerically meaningful new direction exists.
    fn random_orthonormal(&self, stream: &mut Stream) -> Option<Vec<f64>> {
        if self.q.len() >= self.n {
            return None;
        }
        for _ in 0..32 {
            let mut v: Vec<f64> = (0..self.n).map(|_| stream.next_symmetric_f64()).collect();
            let before = norm(&v);
            if before == 0.0 {
                continue;
            }
            for qv in &self.q {
                let c = dot(&v, qv);
                axpy(&mut v, -c, qv);
            }
            // Second pass unconditionally: the projection removed almost the
            // whole vector whenever the basis is large, so cancellation is
            // the common case here, not the exception.
            for qv in &self.q {
                let c = dot(&v, qv);
                axpy(&mut v, -c, qv);
            }
            let after = norm(&v);
            // A random direction in the orthogonal complement keeps, in
            // expectation, a fraction sqrt((n - dim)/n) of its norm; a tiny
            // remainder means numerical rank exhaustion.
            if after > before * 1e-8 {
                scal(&mut v, 1.0 / after);
                return Some(v);
            }
        }
        None
    }

    /// One Lanczos step: process the newest basis vector, then either couple
    /// in its successor, splice a junction, or report exhaustion.
    fn extend(&mut self, stream: &mut Stream) -> Extend {
        let j = self.alpha.len();
        debug_assert_eq!(self.q.len(), j + 1);
        let mut w = vec![0.0; self.n];
        self.m.matvec(&self.q[j], &mut w);
        let a_j = dot(&w, &self.q[j]);
        self.alpha.push(a_j);
        axpy(&mut w, -a_j, &self.q[j]);
        if j > 0 && self.beta[j - 1] != 0.0 {
            let b = self.beta[j - 1];
            let prev = self.q[j - 1].clone();
            axpy(&mut w, -b, &prev);
        }
        self.full_reorthogonalize(&mut w);
        let b_j = norm(&w);

        if self.q.len() == self.n {
            // No room for another vector: the tridiagonal matrix is complete
            // and holds the entire spectrum. (b_j is ~0 up to roundoff.)
            self.beta.push(0.0);
            return Extend::Exhausted;
        }
        if b_j <= self.breakdown_eps {
            self.beta.push(0.0);
            match self.random_orthonormal(stream) {
                Some(v) => {
                    self.q.push(v);
                    Extend::Junction
                }
                None => Extend::Exhausted,
            }
        } else {
            self.beta.push(b_j);
            scal(&mut w, 1.0 / b_j);
            self.q.push(w);
            Extend::Grew
        }
    }

    /// Two-pass classical Gram–Schmidt against the whole basis.
    fn full_reorthogonalize(&self, w: &mut [f64]) {
        let before = norm(w);
        for qv in &self.q {
            let c = dot(w, qv);
            axpy(w, -c, qv);
        }
        if norm(w) < REORTH_THRESHOLD * before {
            for qv in &self.q {
                let c = dot(w, qv);
                axpy(w, -c, qv);
            }
        }
    }

    /// Solve the current tridiagonal matrix, gate on the cheap residual
    /// estimates, and accept only if the honestly measured residuals of all
    /// `2k` target pairs meet `tol`.
    fn try_accept(&self, k: usize, tol: f64, best_residual: &mut f64) -> Option<SpectralSummary> {
        let d = self.dim();
        if d < 2 * k {
            // The solver only enters iterative mode when n >= 2k, so even an
            // exhausted basis has d = n >= 2k; a basis this small simply is
            // not ready yet.
            return None;
        }
        let t = self.tridiagonal();
        let eig = SymmetricEigen::new(t);
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_unstable_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let theta: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();

        let all_computed = d == self.n;
        let targets: Vec<usize> = (0..k).chain(d - k..d).collect();

        // Cheap gate: |beta_last * s_last| bounds each pair's residual. At a
        // junction (or full basis) beta_last is zero and the gate passes.
        let beta_last = *self.beta.last().unwrap_or(&0.0);
        if beta_last > self.breakdown_eps {
            let gate_ok = targets.iter().all(|&pos| {
                let s_last = eig.eigenvectors[(d - 1, order[pos])];
                (beta_last * s_last).abs() <= tol
            });
            if !gate_ok && !all_computed {
                return None;
            }
        }

        // Honest check: assemble each target Ritz vector and measure its
        // residual against the sparse matrix.
        let mut residual = 0.0f64;
        let mut av = vec![0.0; self.n];
        for &pos in &targets {
            let s = eig.eigenvectors.column(order[pos]);
            let mut v = vec![0.0; self.n];
            for (idx, qv) in self.q.iter().take(d).enumerate() {
                axpy(&mut v, s[idx], qv);
            }
            self.m.matvec(&v, &mut av);
            let lambda = theta[pos];
            let mut num = 0.0;
            let mut den = 0.0;
            for i in 0..self.n {
                let r = av[i] - lambda * v[i];
                num += r * r;
                den += v[i] * v[i];
            }
            residual = residual.max((num / den.max(f64::MIN_POSITIVE)).sqrt());
        }
        *best_residual = best_residual.min(residual);
        if residual > tol {
            return None;
        }

        let (mu_plus, certified) = certify_mu_plus(&theta, &targets, all_computed, self.scale);
        let (mu1, mu2) = (theta[d - 1], theta[d - 2]);
        let (mu_min, mu_second_last) = (theta[0], theta[1]);
        Some(SpectralSummary {
            mu1,
            mu2,
            mu_second_last,
            mu_min,
            mu_abs: mu2.abs().max(mu_min.abs()),
            mu_plus,
            mu_plus_certified: certified,
            residual,
        })
    }

    fn tridiagonal(&self) -> DMatrix<f64> {
        let d = self.dim();
        let mut t = DMatrix::zeros(d, d);
        for i in 0..d {
            t[(i, i)] = self.alpha[i];
            if i + 1 < d {
                t[(i, i + 1)] = self.beta[i];
                t[(i + 1, i)] = self.beta[i];
            }
        }
        t
    }
}

/// Decide `mu_plus` from the computed Ritz values.
///
/// Candidates are the converged target positions. When the whole spectrum
/// was computed the answer is exact. Otherwise the uncomputed interior lies
/// (for a solver that has bracketed both ends) between the largest computed
/// bottom value `lo` and the smallest computed top value `hi`; the candidate
/// is certified when either `hi <= 0` (no hidden positive value) or the
/// candidate itself is `<= lo` (nothing hidden can undercut it). Anything
/// else is reported but flagged uncertified.
fn certify_mu_plus(
    theta: &[f64],
    targets: &[usize],
    all_computed: bool,
    scale: f64,
) -> (Option<f64>, bool) {
    let floor = positive_floor(scale);
    if all_computed {
        return (theta.iter().copied().find(|&x| x > floor), true);
    }
    let candidates: Vec<f64> = targets.iter().map(|&pos| theta[pos]).collect();
    let half = candidates.len() / 2;
    let lo = candidates[..half].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let hi = candidates[half..].iter().copied().fold(f64::INFINITY, f64::min);
    let c = candidates.iter().copied().filter(|&x| x > floor).fold(f64::INFINITY, f64::min);
    if c.is_finite() {
        let certified = hi <= floor || c <= lo + floor;
        (Some(c), certified)
    } else {
        // No positive candidate seen; that is conclusive only if nothing
        // positive can hide in the interior.
        (None, hi <= floor)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn scal(v: &mut [f64], a: f64) {
    for vi in v.iter_mut() {
        *vi *= a;
    }
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}
