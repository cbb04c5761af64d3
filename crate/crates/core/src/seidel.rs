//! Seidel matrices, graphs and switching.
//!
//! Edge convention: a Seidel entry of `-1` means the two vertices are adjacent.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::lineset::{check_tol, Field, GramMatrix, LineSet};
use crate::{Error, Result, C64};

/// Largest vertex count accepted by [`switching_equivalent`].
pub const MAX_SWITCHING_VERTICES: usize = 24;

/// Eigenvalues below this fraction of the largest are treated as zero.
pub const RANK_THRESHOLD: f64 = 1e-9;

/// Symmetric sign pattern with zero diagonal and `+-1` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeidelMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SeidelMatrix {
    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidSeidel(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        let s = Self { n, entries };
        for i in 0..n {
            if s.get(i, i) != 0 {
                return Err(Error::InvalidSeidel(format!("diagonal entry {i} is nonzero")));
            }
            for j in 0..n {
                if i != j {
                    let x = s.get(i, j);
                    if x != 1 && x != -1 {
                        return Err(Error::InvalidSeidel(format!("entry ({i}, {j}) = {x}")));
                    }
                    if x != s.get(j, i) {
                        return Err(Error::InvalidSeidel(format!("entry ({i}, {j}) is not symmetric")));
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n.max(1)).map(<[i8]>::to_vec).collect()
    }

    /// `I + alpha S`.
    pub fn gram_with_alpha(&self, alpha: f64) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                1.0
            } else {
                alpha * self.get(i, j) as f64
            }
        })
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<bool>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adjacency: vec![vec![false; n]; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                g.adjacency[i][j] = i != j;
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, limit: n });
                }
            }
            if u == v {
                return Err(Error::InvalidSeidel(format!("self-loop at vertex {u}")));
            }
            g.adjacency[u][v] = true;
            g.adjacency[v][u] = true;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle edges are in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u][v]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adjacency[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].iter().filter(|&&a| a).count()
    }

    fn row_mask(&self, v: usize) -> u32 {
        self.adjacency[v]
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

/// Sign pattern of a real equiangular Gram matrix.
pub fn seidel_from_gram(g: &GramMatrix, alpha: f64, tol: f64) -> Result<SeidelMatrix> {
    check_tol(tol)?;
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    let n = g.size();
    let mut entries = vec![0i8; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let z = g.get(i, j);
            if z.im.abs() > tol || (z.re.abs() - alpha).abs() > tol {
                return Err(Error::NotEquiangularGram {
                    row: i,
                    col: j,
                    value: z.re,
                    alpha,
                    tol,
                });
            }
            entries[i * n + j] = if z.re > 0.0 { 1 } else { -1 };
        }
    }
    Ok(SeidelMatrix { n, entries })
}

pub fn graph_from_seidel(s: &SeidelMatrix) -> Graph {
    let mut g = Graph::empty(s.n);
    for i in 0..s.n {
        for j in 0..s.n {
            g.adjacency[i][j] = i != j && s.get(i, j) == -1;
        }
    }
    g
}

pub fn seidel_from_graph(g: &Graph) -> SeidelMatrix {
    let n = g.n;
    let mut entries = vec![0i8; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                entries[i * n + j] = if g.adjacency[i][j] { -1 } else { 1 };
            }
        }
    }
    SeidelMatrix { n, entries }
}

/// Complements every edge with exactly one endpoint in `subset`.
pub fn switch(g: &Graph, subset: &BTreeSet<usize>) -> Result<Graph> {
    if let Some(&bad) = subset.iter().find(|&&v| v >= g.n) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            limit: g.n,
        });
    }
    let mut out = g.clone();
    for u in 0..g.n {
        for v in 0..g.n {
            if u != v && subset.contains(&u) != subset.contains(&v) {
                out.adjacency[u][v] = !g.adjacency[u][v];
            }
        }
    }
    Ok(out)
}

/// Negates vector `i`; the lines are unchanged.
pub fn negate_line_vector(ls: &LineSet, i: usize) -> Result<LineSet> {
    if i >= ls.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            limit: ls.len(),
        });
    }
    let mut vectors = ls.vectors().to_vec();
    vectors[i].iter_mut().for_each(|z| *z = -*z);
    LineSet::from_raw(ls.dimension(), ls.field(), vectors)
}

/// Whether some switch of `g1` equals `g2`, with vertex labels fixed.
///
/// Exhaustive over the `2^(n-1)` subsets that exclude the last vertex
/// (switching by `A` and by its complement agree).
pub fn switching_equivalent(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.n != g2.n {
        return Err(Error::VertexCountMismatch(g1.n, g2.n));
    }
    let n = g1.n;
    if n > MAX_SWITCHING_VERTICES {
        return Err(Error::TooLarge {
            found: n,
            limit: MAX_SWITCHING_VERTICES,
        });
    }
    if n <= 1 {
        return Ok(true);
    }
    let full: u32 = (1u32 << n) - 1;
    let rows1: Vec<u32> = (0..n).map(|v| g1.row_mask(v)).collect();
    let rows2: Vec<u32> = (0..n).map(|v| g2.row_mask(v)).collect();
    let found = (0u32..1 << (n - 1)).any(|subset| {
        (0..n).all(|v| {
            let cut = if subset >> v & 1 == 1 { full & !subset } else { subset };
            (rows1[v] ^ cut) & !(1 << v) == rows2[v]
        })
    });
    Ok(found)
}

/// Parameters `(n, k, lambda, mu)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrgParameters {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
    /// Complete or edgeless: one of `lambda`/`mu` is vacuous and reported as 0.
    pub degenerate: bool,
}

pub fn is_strongly_regular(g: &Graph) -> Option<SrgParameters> {
    let n = g.n;
    if n == 0 {
        return None;
    }
    let k = g.degree(0);
    if (1..n).any(|v| g.degree(v) != k) {
        return None;
    }
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in (u + 1)..n {
            let common = (0..n)
                .filter(|&w| g.adjacency[u][w] && g.adjacency[v][w])
                .count();
            let slot = if g.adjacency[u][v] { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(c) if c != common => return None,
                _ => {}
            }
        }
    }
    Some(SrgParameters {
        n,
        k,
        lambda: lambda.unwrap_or(0),
        mu: mu.unwrap_or(0),
        degenerate: lambda.is_none() || mu.is_none(),
    })
}

/// Factors `G = I + alpha S` as `V^T V` and returns the columns of `V`.
///
/// The dimension is the numerical rank of `G` (eigenvalues above
/// [`RANK_THRESHOLD`] times the largest). Fails when `G` has an eigenvalue
/// below `-tol`.
pub fn lines_from_seidel(s: &SeidelMatrix, alpha: f64, tol: f64) -> Result<LineSet> {
    check_tol(tol)?;
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    let n = s.n;
    if n == 0 {
        return Err(Error::TooFewVectors {
            required: 1,
            found: 0,
        });
    }
    let eig = SymmetricEigen::new(s.gram_with_alpha(alpha));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -tol {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    let max = eig.eigenvalues[order[0]];
    let kept: Vec<usize> = order
        .into_iter()
        .filter(|&i| eig.eigenvalues[i] > RANK_THRESHOLD * max)
        .collect();
    let r = kept.len();
    let vectors = (0..n)
        .map(|col| {
            kept.iter()
                .map(|&e| C64::new(eig.eigenvalues[e].sqrt() * eig.eigenvectors[(col, e)], 0.0))
                .collect()
        })
        .collect();
    LineSet::from_raw(r, Field::Real, vectors)
}
