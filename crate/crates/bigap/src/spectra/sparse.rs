//! Compressed sparse row storage for symmetric matrices, plus the adjacency
//! constructors and the block split used by the union-embedding argument.
//!
//! The full symmetric pattern is stored (both triangles), so `matvec` is a
//! single CSR sweep with no branching on triangle ownership. Construction
//! sorts and merges entries; structural symmetry is a checkable invariant
//! rather than an assumption.

use crate::error::{Error, Result};
use crate::graphgen::{BipartiteGraph, Graph};

/// A symmetric `n x n` sparse matrix in CSR form, both triangles stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseSymMatrix {
    /// Build from an iterator of `(i, j, v)` entries given in either or both
    /// triangles. Each off-diagonal entry is mirrored; duplicate coordinates
    /// (after mirroring) are summed. Explicit zeros are dropped.
    pub fn from_entries(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut coo: Vec<(usize, usize, f64)> = Vec::new();
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(Error::domain(format!(
                    "entry ({i}, {j}) out of range for dimension {n}"
                )));
            }
            if v == 0.0 {
                continue;
            }
            coo.push((i, j, v));
            if i != j {
                coo.push((j, i, v));
            }
        }
        coo.sort_unstable_by_key(|&(i, j, _)| (i, j));
        // Merge duplicates produced by the caller handing us both triangles.
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(coo.len());
        for (i, j, v) in coo {
            match merged.last_mut() {
                Some(&mut (pi, pj, ref mut pv)) if pi == i && pj == j => *pv += v,
                _ => merged.push((i, j, v)),
            }
        }
        let mut row_ptr = vec![0usize; n + 1];
        for &(i, _, _) in &merged {
            row_ptr[i + 1] += 1;
        }
        for r in 0..n {
            row_ptr[r + 1] += row_ptr[r];
        }
        let col_idx = merged.iter().map(|&(_, j, _)| j).collect();
        let values = merged.iter().map(|&(_, _, v)| v).collect();
        Ok(SparseSymMatrix { n, row_ptr, col_idx, values })
    }

    /// The zero matrix of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        SparseSymMatrix { n, row_ptr: vec![0; n + 1], col_idx: Vec::new(), values: Vec::new() }
    }

    /// Matrix dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored entries (both triangles counted).
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Row pointer array (length `n + 1`).
    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    /// Column index array, sorted within each row.
    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    /// Stored values, parallel to `col_idx`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Iterate one row as `(column, value)` pairs.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let lo = self.row_ptr[i];
        let hi = self.row_ptr[i + 1];
        self.col_idx[lo..hi].iter().copied().zip(self.values[lo..hi].iter().copied())
    }

    /// `y = A x`. Panics on dimension mismatch (programming error, not input).
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.n, "matvec input dimension");
        assert_eq!(y.len(), self.n, "matvec output dimension");
        for (i, out) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (j, v) in self.row(i) {
                acc += v * x[j];
            }
            *out = acc;
        }
    }

    /// Verify structural symmetry: entry `(i, j)` present iff `(j, i)` is,
    /// with equal value. The constructors guarantee this; the checker exists
    /// so tests and debugging sessions can re-establish it independently.
    pub fn is_structurally_symmetric(&self) -> bool {
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                match self.get(j, i) {
                    Some(w) if w == v => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Look up entry `(i, j)` by binary search within the row.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let lo = self.row_ptr[i];
        let hi = self.row_ptr[i + 1];
        self.col_idx[lo..hi]
            .binary_search(&j)
            .ok()
            .map(|offset| self.values[lo + offset])
    }

    /// Induced infinity norm: the maximum absolute row sum. For symmetric
    /// matrices this dominates the spectral radius.
    pub fn infinity_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).map(|(_, v)| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry (the entrywise max norm). Zero for an empty
    /// matrix.
    pub fn entrywise_max(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// The negated matrix, `-A`.
    pub fn negated(&self) -> Self {
        SparseSymMatrix {
            n: self.n,
            row_ptr: self.row_ptr.clone(),
            col_idx: self.col_idx.clone(),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    /// Densify for the brute-force oracle.
    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Exact entrywise equality (same dimension, same pattern, same values).
    pub fn entrywise_eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.row_ptr == other.row_ptr
            && self.col_idx == other.col_idx
            && self.values == other.values
    }
}

/// Adjacency matrix of a bipartite graph on `n1 + n2` vertices: left block
/// first, so entry `(i, n1 + j)` is 1 for each edge `(i, j)` and both
/// diagonal blocks are zero.
pub fn adjacency(g: &BipartiteGraph) -> SparseSymMatrix {
    let n1 = g.n1();
    SparseSymMatrix::from_entries(
        n1 + g.n2(),
        g.edges().iter().map(|&(i, j)| (i, n1 + j, 1.0)),
    )
    .expect("edges validated by BipartiteGraph invariants")
}

/// Adjacency matrix of a plain graph.
pub fn adjacency_full(g: &Graph) -> SparseSymMatrix {
    SparseSymMatrix::from_entries(g.n(), g.edges().iter().map(|&(a, b)| (a, b, 1.0)))
        .expect("edges validated by Graph invariants")
}

/// Split a symmetric matrix into its three blocks relative to the partition
/// `[0, n1) | [n1, n)`, each returned padded to the full dimension:
/// top-left block, off-diagonal (cross) blocks, bottom-right block.
/// The three parts sum to the input exactly (disjoint supports, so the sum
/// involves no floating-point addition at all).
pub fn split_blocks(
    m: &SparseSymMatrix,
    n1: usize,
) -> Result<(SparseSymMatrix, SparseSymMatrix, SparseSymMatrix)> {
    let n = m.n();
    if n1 > n {
        return Err(Error::domain(format!("split point n1 = {n1} exceeds dimension {n}")));
    }
    let mut top = Vec::new();
    let mut cross = Vec::new();
    let mut bottom = Vec::new();
    for i in 0..n {
        for (j, v) in m.row(i) {
            if j < i {
                continue; // keep one triangle; from_entries mirrors
            }
            match (i < n1, j < n1) {
                (true, true) => top.push((i, j, v)),
                (false, false) => bottom.push((i, j, v)),
                _ => cross.push((i, j, v)),
            }
        }
    }
    Ok((
        SparseSymMatrix::from_entries(n, top)?,
        SparseSymMatrix::from_entries(n, cross)?,
        SparseSymMatrix::from_entries(n, bottom)?,
    ))
}

/// Entrywise sum of two same-dimension symmetric matrices. Used by tests to
/// reconstruct a split; exact when supports are disjoint.
pub fn add(a: &SparseSymMatrix, b: &SparseSymMatrix) -> Result<SparseSymMatrix> {
    if a.n() != b.n() {
        return Err(Error::domain(format!("dimension mismatch: {} vs {}", a.n(), b.n())));
    }
    let upper = |m: &SparseSymMatrix| -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(m.nnz() / 2 + m.n());
        for i in 0..m.n() {
            for (j, v) in m.row(i) {
                if j >= i {
                    out.push((i, j, v));
                }
            }
        }
        out
    };
    let mut entries = upper(a);
    entries.extend(upper(b));
    SparseSymMatrix::from_entries(a.n(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::{embed_union, sample_bipartite};
    use crate::rng::{derive_stream, SeedSpec};

    #[test]
    fn complete_2x3_adjacency_has_12_unit_entries_and_zero_diagonal_blocks() {
        let mut s = derive_stream(SeedSpec::new(1, 0));
        let g = sample_bipartite(2, 3, 1.0, &mut s).unwrap();
        let a = adjacency(&g);
        assert_eq!(a.n(), 5);
        assert_eq!(a.nnz(), 12, "6 edges, both triangles");
        assert!(a.values().iter().all(|&v| v == 1.0));
        assert!(a.is_structurally_symmetric());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(a.get(i, j), None, "left block must be zero");
            }
        }
        for i in 2..5 {
            for j in 2..5 {
                assert_eq!(a.get(i, j), None, "right block must be zero");
            }
        }
    }

    #[test]
    fn single_edge_1x1_adjacency_is_the_2x2_swap_matrix() {
        let g = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        let a = adjacency(&g);
        assert_eq!(a.get(0, 1), Some(1.0));
        assert_eq!(a.get(1, 0), Some(1.0));
        assert_eq!(a.get(0, 0), None);
        assert_eq!(a.nnz(), 2);
    }

    #[test]
    fn empty_graph_gives_the_zero_matrix() {
        let g = BipartiteGraph::new(3, 4, vec![]).unwrap();
        let a = adjacency(&g);
        assert_eq!(a.nnz(), 0);
        assert_eq!(a.infinity_norm(), 0.0);
        let mut y = vec![1.0; 7];
        a.matvec(&[1.0; 7], &mut y);
        assert!(y.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn matvec_matches_dense_multiplication() {
        let mut s = derive_stream(SeedSpec::new(3, 0));
        let g = sample_bipartite(8, 11, 0.4, &mut s).unwrap();
        let a = adjacency(&g);
        let dense = a.to_dense();
        let x: Vec<f64> = (0..a.n()).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut y = vec![0.0; a.n()];
        a.matvec(&x, &mut y);
        let xd = nalgebra::DVector::from_column_slice(&x);
        let yd = &dense * xd;
        for i in 0..a.n() {
            assert!((y[i] - yd[i]).abs() < 1e-12, "row {i}: {} vs {}", y[i], yd[i]);
        }
    }

    #[test]
    fn k5_splits_into_2_12_6_nonzeros_and_reconstructs() {
        // K5 with n1 = 2: top block holds edge {0,1} (2 stored entries),
        // cross holds the 6 side-crossing edges (12), bottom the 3 edges of
        // the right triangle (6).
        let mut s = derive_stream(SeedSpec::new(1, 0));
        let complete = sample_bipartite(2, 3, 1.0, &mut s).unwrap();
        let k5 = adjacency_full(&embed_union(&complete, 1.0, &mut s).unwrap());
        let (top, cross, bottom) = split_blocks(&k5, 2).unwrap();
        assert_eq!(top.nnz(), 2);
        assert_eq!(cross.nnz(), 12);
        assert_eq!(bottom.nnz(), 6);
        let sum = add(&add(&top, &cross).unwrap(), &bottom).unwrap();
        assert!(sum.entrywise_eq(&k5), "blocks must reconstruct the input exactly");
    }

    #[test]
    fn zero_matrix_splits_into_zero_matrices() {
        let z = SparseSymMatrix::zeros(6);
        let (a, b, c) = split_blocks(&z, 2).unwrap();
        assert_eq!((a.nnz(), b.nnz(), c.nnz()), (0, 0, 0));
    }

    #[test]
    fn split_rejects_out_of_range_partition() {
        assert!(split_blocks(&SparseSymMatrix::zeros(4), 5).is_err());
    }

    #[test]
    fn sampled_union_split_reconstructs_exactly() {
        let mut s = derive_stream(SeedSpec::new(9, 2));
        let g = sample_bipartite(15, 20, 0.3, &mut s).unwrap();
        let gp = embed_union(&g, 0.3, &mut s).unwrap();
        let m = adjacency_full(&gp);
        let (top, cross, bottom) = split_blocks(&m, 15).unwrap();
        let sum = add(&add(&top, &cross).unwrap(), &bottom).unwrap();
        assert!(sum.entrywise_eq(&m));
        // The cross part is exactly the bipartite adjacency of g.
        assert!(cross.entrywise_eq(&adjacency(&g)));
    }

    #[test]
    fn from_entries_merges_duplicates_and_rejects_bad_indices() {
        let m = SparseSymMatrix::from_entries(3, vec![(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        assert_eq!(m.get(0, 1), Some(2.0), "both triangles handed in: values sum");
        assert!(SparseSymMatrix::from_entries(2, vec![(0, 5, 1.0)]).is_err());
    }

    #[test]
    fn diagonal_entries_are_stored_once() {
        let m = SparseSymMatrix::from_entries(2, vec![(0, 0, 1.0), (1, 1, 1.0)]).unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 0), Some(1.0));
        assert!(m.is_structurally_symmetric());
    }

    #[test]
    fn norms_on_a_known_matrix() {
        // [[0, 2, 0], [2, 0, -3], [0, -3, 0]]: row sums 2, 5, 3.
        let m =
            SparseSymMatrix::from_entries(3, vec![(0, 1, 2.0), (1, 2, -3.0)]).unwrap();
        assert_eq!(m.infinity_norm(), 5.0);
        assert_eq!(m.entrywise_max(), 3.0);
        let neg = m.negated();
        assert_eq!(neg.get(0, 1), Some(-2.0));
        assert_eq!(neg.infinity_norm(), 5.0);
    }
}
