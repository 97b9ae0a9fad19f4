//! Seeded sampling of random graphs: the bipartite model `G(n1, n2, p)`,
//! the plain Erdős–Rényi model `G(n, p)`, and the union embedding that turns
//! a bipartite sample into a sample of `G(n1+n2, p)` by adding side-internal
//! edges.
//!
//! All samplers use geometric skip-sampling: instead of flipping one coin per
//! candidate edge, we draw the gap to the next present edge from a geometric
//! distribution over the linearized cell index space. Expected cost is
//! `O(m)` in the number of realized edges rather than `O(n^2)` in the number
//! of candidates, which is what makes sparse regimes (`n·p` constant) cheap.
//!
//! Determinism: every sampler consumes a caller-supplied [`Stream`], and a
//! given `(master_seed, trial_index)` always reproduces the same edge list,
//! bit for bit, independent of platform or thread schedule.

use crate::error::{Error, Result};
use crate::rng::Stream;

/// A bipartite graph with left part `{0, .., n1-1}`, right part
/// `{0, .., n2-1}`, and only cross edges.
///
/// Invariants (enforced by [`BipartiteGraph::new`], preserved by samplers):
/// no duplicate pairs, every index in range, hence `m <= n1 * n2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n1: usize,
    n2: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    /// Build a bipartite graph from an explicit edge list, validating all
    /// invariants. Samplers construct graphs directly; this is the entry
    /// point for file loads and hand-built fixtures.
    pub fn new(n1: usize, n2: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::domain(format!(
                "both sides must be nonempty, got n1 = {n1}, n2 = {n2}"
            )));
        }
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for &(i, j) in &edges {
            if i >= n1 || j >= n2 {
                return Err(Error::domain(format!(
                    "edge ({i}, {j}) out of range for n1 = {n1}, n2 = {n2}"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::domain(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(BipartiteGraph { n1, n2, edges })
    }

    /// Number of left vertices.
    pub fn n1(&self) -> usize {
        self.n1
    }

    /// Number of right vertices.
    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// The cross edges as `(left index, right index)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Per-side degree sequences, `(left_degrees, right_degrees)`.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut left = vec![0usize; self.n1];
        let mut right = vec![0usize; self.n2];
        for &(i, j) in &self.edges {
            left[i] += 1;
            right[j] += 1;
        }
        (left, right)
    }
}

/// A plain undirected graph on vertices `{0, .., n-1}`.
///
/// Edges are unordered pairs stored as `(a, b)` with `a < b`; no duplicates,
/// no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Build a graph from an explicit edge list, validating all invariants.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("graph must have at least one vertex"));
        }
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= b {
                return Err(Error::domain(format!(
                    "edge ({a}, {b}) must be stored with a < b (no self-loops)"
                )));
            }
            if b >= n {
                return Err(Error::domain(format!("edge ({a}, {b}) out of range for n = {n}")));
            }
            if !seen.insert((a, b)) {
                return Err(Error::domain(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(Graph { n, edges })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// The edges as `(a, b)` pairs with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Degree summary of a bipartite sample against its expected
/// `(n2*p, n1*p)`-regularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    /// Smallest left-vertex degree.
    pub min_left: usize,
    /// Largest left-vertex degree.
    pub max_left: usize,
    /// Smallest right-vertex degree.
    pub min_right: usize,
    /// Largest right-vertex degree.
    pub max_right: usize,
    /// Expected left degree, `n2 * p`.
    pub expected_left: f64,
    /// Expected right degree, `n1 * p`.
    pub expected_right: f64,
    /// `max over both sides of |deg - expected| / expected`, or `None` when
    /// an expected degree is zero (`p = 0`): reporting 0 there would fake a
    /// perfectly regular graph, so undefined stays distinct from 0.
    pub rel_dev: Option<f64>,
}

/// Check that a probability parameter is in `[0, 1]` and finite.
fn validate_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::domain(format!("edge probability must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// Emit the selected cell indices among `0..total`, each kept independently
/// with probability `p`, by jumping geometric gaps between kept cells.
///
/// For `U` uniform on `[0, 1)`, `floor(ln(1-U) / ln(1-p))` is the number of
/// skipped cells before the next kept one. `p = 0` and `p = 1` take exact
/// branches so no float edge cases leak in.
fn skip_sample_cells(total: u64, p: f64, stream: &mut Stream) -> Vec<u64> {
    if p <= 0.0 || total == 0 {
        return Vec::new();
    }
    if p >= 1.0 {
        return (0..total).collect();
    }
    let mut kept = Vec::with_capacity((total as f64 * p * 1.05) as usize + 8);
    let ln_q = (-p).ln_1p(); // ln(1 - p), strictly negative here
    let mut pos: u64 = 0;
    loop {
        let r = stream.next_f64();
        let gap = ((-r).ln_1p() / ln_q).floor();
        // Compare in f64 before casting: a huge gap must terminate cleanly
        // rather than wrap on the u64 conversion.
        if gap >= (total - pos) as f64 {
            break;
        }
        pos += gap as u64;
        kept.push(pos);
        pos += 1;
        if pos >= total {
            break;
        }
    }
    kept
}

/// Sample `G(n1, n2, p)`: each of the `n1 * n2` cross edges present
/// independently with probability `p`.
pub fn sample_bipartite(
    n1: usize,
    n2: usize,
    p: f64,
    stream: &mut Stream,
) -> Result<BipartiteGraph> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::domain(format!(
            "both sides must be nonempty, got n1 = {n1}, n2 = {n2}"
        )));
    }
    validate_probability(p)?;
    let total = (n1 as u64) * (n2 as u64);
    let edges = skip_sample_cells(total, p, stream)
        .into_iter()
        .map(|k| ((k / n2 as u64) as usize, (k % n2 as u64) as usize))
        .collect();
    Ok(BipartiteGraph { n1, n2, edges })
}

/// Decode ascending linearized indices over the strict upper triangle of an
/// `n x n` grid into `(a, b)` pairs with `a < b`.
///
/// Cell `k` counts row-major over rows `a = 0, 1, ...` where row `a` holds
/// the `n - 1 - a` pairs `(a, a+1), .., (a, n-1)`. Because the input is
/// ascending, a single forward walk decodes all of them in `O(n + m)`.
fn decode_pairs_ascending(n: usize, cells: &[u64]) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(cells.len());
    let mut row = 0usize;
    let mut row_start = 0u64;
    let mut row_len = (n - 1) as u64;
    for &k in cells {
        while k >= row_start + row_len {
            row_start += row_len;
            row += 1;
            row_len -= 1;
        }
        let b = row + 1 + (k - row_start) as usize;
        edges.push((row, b));
    }
    edges
}

/// Sample `G(n, p)`: each of the `C(n, 2)` non-loop edges present
/// independently with probability `p`.
pub fn sample_er(n: usize, p: f64, stream: &mut Stream) -> Result<Graph> {
    if n == 0 {
        return Err(Error::domain("graph must have at least one vertex"));
    }
    validate_probability(p)?;
    let total = (n as u64) * (n as u64 - 1) / 2;
    let cells = skip_sample_cells(total, p, stream);
    Ok(Graph { n, edges: decode_pairs_ascending(n, &cells) })
}

/// Embed a bipartite sample into the union model: relabel left vertices to
/// `[0, n1)` and right vertices to `[n1, n1+n2)`, keep every cross edge, and
/// add each side-internal edge independently with probability `p`.
///
/// When `g ~ G(n1, n2, p)` and the same `p` is used here, the output is
/// distributed as `G(n1 + n2, p)` — the union trick behind the adjacency
/// block decomposition. The left-block-first labeling makes that block
/// structure literal in matrix layout.
pub fn embed_union(g: &BipartiteGraph, p: f64, stream: &mut Stream) -> Result<Graph> {
    validate_probability(p)?;
    let (n1, n2) = (g.n1, g.n2);
    let n = n1 + n2;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(g.m());
    // Intra-left pairs {a, b} in [0, n1); consumed from the stream first.
    let left_cells = skip_sample_cells((n1 as u64) * (n1 as u64 - 1) / 2, p, stream);
    edges.extend(decode_pairs_ascending(n1, &left_cells));
    // Intra-right pairs, shifted into [n1, n1 + n2).
    let right_cells = skip_sample_cells((n2 as u64) * (n2 as u64 - 1) / 2, p, stream);
    edges.extend(
        decode_pairs_ascending(n2, &right_cells)
            .into_iter()
            .map(|(a, b)| (a + n1, b + n1)),
    );
    // Cross edges preserved exactly; (i, n1 + j) always satisfies a < b.
    edges.extend(g.edges.iter().map(|&(i, j)| (i, n1 + j)));
    Ok(Graph { n, edges })
}

/// Exact degree extremes of a bipartite sample plus the relative deviation
/// from expected `(n2*p, n1*p)`-regularity.
pub fn degree_stats(g: &BipartiteGraph, p: f64) -> DegreeStats {
    let (left, right) = g.degrees();
    let (min_left, max_left) = extremes(&left);
    let (min_right, max_right) = extremes(&right);
    let expected_left = g.n2 as f64 * p;
    let expected_right = g.n1 as f64 * p;
    let rel_dev = if expected_left > 0.0 && expected_right > 0.0 {
        let dev_left = (max_left as f64 - expected_left)
            .abs()
            .max((min_left as f64 - expected_left).abs())
            / expected_left;
        let dev_right = (max_right as f64 - expected_right)
            .abs()
            .max((min_right as f64 - expected_right).abs())
            / expected_right;
        Some(dev_left.max(dev_right))
    } else {
        None
    };
    DegreeStats {
        min_left,
        max_left,
        min_right,
        max_right,
        expected_left,
        expected_right,
        rel_dev,
    }
}

fn extremes(degrees: &[usize]) -> (usize, usize) {
    let min = degrees.iter().copied().min().unwrap_or(0);
    let max = degrees.iter().copied().max().unwrap_or(0);
    (min, max)
}
