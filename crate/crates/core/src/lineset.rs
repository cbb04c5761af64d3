//! Line sets, Gram matrices and the equiangularity certifier.

use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::{Error, Result, C64};

/// Default certification tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Norm tolerance enforced by [`LineSet::new`].
pub const UNIT_NORM_TOL: f64 = 1e-8;

/// Scalar field the line set lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

/// An ordered list of vectors, each representing a line through the origin.
///
/// Vectors are stored as complex amplitudes in both fields; real sets carry
/// exactly zero imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSet {
    dimension: usize,
    field: Field,
    vectors: Vec<Vec<C64>>,
}

impl LineSet {
    /// Builds a line set, checking shape and unit norms (within [`UNIT_NORM_TOL`]).
    pub fn new(dimension: usize, field: Field, vectors: Vec<Vec<C64>>) -> Result<Self> {
        let set = Self::from_raw(dimension, field, vectors)?;
        for (index, v) in set.vectors.iter().enumerate() {
            let norm = vector_norm(v);
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::NotUnitNorm { index, norm });
            }
        }
        Ok(set)
    }

    /// Builds a line set checking shape only. Norms are left to the certifiers,
    /// which is what parsers of untrusted files want.
    pub fn from_raw(dimension: usize, field: Field, vectors: Vec<Vec<C64>>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::DimensionTooSmall { min: 1, found: 0 });
        }
        if vectors.is_empty() {
            return Err(Error::TooFewVectors {
                required: 1,
                found: 0,
            });
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != dimension {
                return Err(Error::DimensionMismatch {
                    index,
                    expected: dimension,
                    found: v.len(),
                });
            }
            if field == Field::Real && v.iter().any(|z| z.im != 0.0) {
                return Err(Error::NotReal { index });
            }
        }
        Ok(Self {
            dimension,
            field,
            vectors,
        })
    }

    pub fn real(dimension: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let vectors = vectors
            .into_iter()
            .map(|v| v.into_iter().map(|x| C64::new(x, 0.0)).collect())
            .collect();
        Self::new(dimension, Field::Real, vectors)
    }

    pub fn complex(dimension: usize, vectors: Vec<Vec<C64>>) -> Result<Self> {
        Self::new(dimension, Field::Complex, vectors)
    }

    /// Scales every vector to unit norm. Zero vectors are rejected.
    pub fn normalized(dimension: usize, field: Field, vectors: Vec<Vec<C64>>) -> Result<Self> {
        let mut vectors = vectors;
        for (index, v) in vectors.iter_mut().enumerate() {
            let norm = vector_norm(v);
            if norm == 0.0 {
                return Err(Error::NotUnitNorm { index, norm });
            }
            v.iter_mut().for_each(|z| *z /= norm);
        }
        Self::new(dimension, field, vectors)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> Option<&[C64]> {
        self.vectors.get(i).map(Vec::as_slice)
    }

    /// Real parts of every vector; meaningful for real sets.
    pub fn real_vectors(&self) -> Vec<Vec<f64>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|z| z.re).collect())
            .collect()
    }

    pub fn into_vectors(self) -> Vec<Vec<C64>> {
        self.vectors
    }

    /// Inner product of vectors `j` and `k`, conjugate-linear in the first slot.
    pub fn overlap(&self, j: usize, k: usize) -> C64 {
        inner(&self.vectors[j], &self.vectors[k])
    }
}

/// `<a, b>` with conjugation on `a`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter()
        .zip(b)
        .fold(C64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y)
}

pub fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Pairwise inner products of a line set.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<C64>,
}

impl GramMatrix {
    pub fn from_entries(entries: DMatrix<C64>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, j: usize, k: usize) -> C64 {
        self.entries[(j, k)]
    }

    /// True when every imaginary part is within `tol` of zero.
    pub fn is_real(&self, tol: f64) -> bool {
        self.entries.iter().all(|z| z.im.abs() <= tol)
    }

    /// Eigenvalues in descending order (the matrix is Hermitian).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.entries.clone());
        let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        values.sort_by(|a, b| b.total_cmp(a));
        values
    }

    /// Number of eigenvalues above `threshold`.
    pub fn numerical_rank(&self, threshold: f64) -> usize {
        self.eigenvalues().iter().filter(|&&l| l > threshold).count()
    }

    /// Largest entrywise difference to another Gram matrix of the same size.
    pub fn max_abs_diff(&self, other: &GramMatrix) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub fn gram(ls: &LineSet) -> GramMatrix {
    let n = ls.len();
    let mut entries = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    for j in 0..n {
        for k in j..n {
            let z = ls.overlap(j, k);
            entries[(j, k)] = z;
            entries[(k, j)] = z.conj();
        }
    }
    GramMatrix { entries }
}

/// Outcome of an equiangularity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub is_equiangular: bool,
    /// Median off-diagonal overlap magnitude.
    pub alpha: f64,
    pub max_deviation: f64,
    /// Largest `| |v_j| - 1 |` over the set.
    pub max_norm_deviation: f64,
    pub tolerance_used: f64,
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Checks that every pair of distinct vectors has the same overlap magnitude.
pub fn certify_equiangular(ls: &LineSet, tol: f64) -> Result<Certificate> {
    check_tol(tol)?;
    let n = ls.len();
    if n < 2 {
        return Err(Error::TooFewVectors {
            required: 2,
            found: n,
        });
    }
    let max_norm_deviation = ls
        .vectors()
        .iter()
        .map(|v| (vector_norm(v) - 1.0).abs())
        .fold(0.0, f64::max);

    let mut magnitudes = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for k in (j + 1)..n {
            magnitudes.push(ls.overlap(j, k).norm());
        }
    }
    let alpha = median(&mut magnitudes.clone());
    let max_deviation = magnitudes
        .iter()
        .map(|m| (m - alpha).abs())
        .fold(0.0, f64::max);

    Ok(Certificate {
        is_equiangular: max_deviation <= tol && max_norm_deviation <= tol,
        alpha: alpha.clamp(0.0, 1.0),
        max_deviation,
        max_norm_deviation,
        tolerance_used: tol,
    })
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let m = values.len();
    if m % 2 == 1 {
        values[m / 2]
    } else {
        0.5 * (values[m / 2 - 1] + values[m / 2])
    }
}

/// Maximum number of equiangular lines in dimension `d`.
pub fn gerzon_bound(d: usize, field: Field) -> usize {
    match field {
        Field::Real => d * (d + 1) / 2,
        Field::Complex => d * d,
    }
}

/// Common overlap magnitude forced on a set meeting [`gerzon_bound`].
pub fn saturating_alpha(d: usize, field: Field) -> f64 {
    let shift = match field {
        Field::Real => 2.0,
        Field::Complex => 1.0,
    };
    1.0 / (d as f64 + shift).sqrt()
}
