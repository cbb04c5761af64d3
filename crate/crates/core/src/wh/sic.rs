use alloc::format;

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::lineset::{check_tol, vector_norm, LineSet};
use crate::{Error, Result, C64};

/// Tolerance for the Hermiticity, trace and positivity checks on density operators.
pub const DENSITY_TOL: f64 = 1e-10;

/// Largest tomography solve residual accepted by [`SicTomography::reconstruct`].
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

/// Outcome of a SIC check on `d^2` vectors in `C^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SicCertificate {
    pub pass: bool,
    /// `1 / (d + 1)`.
    pub target_overlap: f64,
    /// Largest `| |<v_j, v_k>|^2 - 1/(d+1) |` over distinct pairs.
    pub max_overlap_deviation: f64,
    /// Largest entry of `sum_j v_j v_j^dagger - d I` in magnitude.
    pub identity_residual: f64,
    pub max_norm_deviation: f64,
    pub tolerance_used: f64,
}

pub fn certify_sic(ls: &LineSet, tol: f64) -> Result<SicCertificate> {
    check_tol(tol)?;
    let d = ls.dimension();
    let n = ls.len();
    if n != d * d {
        return Err(Error::WrongCount {
            expected: d * d,
            found: n,
        });
    }
    let target = 1.0 / (d as f64 + 1.0);
    let mut max_overlap_deviation: f64 = 0.0;
    for j in 0..n {
        for k in (j + 1)..n {
            let dev = (ls.overlap(j, k).norm_sqr() - target).abs();
            max_overlap_deviation = max_overlap_deviation.max(dev);
        }
    }
    let max_norm_deviation = ls
        .vectors()
        .iter()
        .map(|v| (vector_norm(v) - 1.0).abs())
        .fold(0.0, f64::max);
    let mut frame = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
    for v in ls.vectors() {
        for r in 0..d {
            for c in 0..d {
                frame[(r, c)] += v[r] * v[c].conj();
            }
        }
    }
    for i in 0..d {
        frame[(i, i)] -= C64::new(d as f64, 0.0);
    }
    let identity_residual = frame.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(SicCertificate {
        pass: max_overlap_deviation <= tol
            && identity_residual <= tol
            && max_norm_deviation <= tol,
        target_overlap: target,
        max_overlap_deviation,
        identity_residual,
        max_norm_deviation,
        tolerance_used: tol,
    })
}

fn check_density(rho: &DMatrix<C64>, d: usize) -> Result<()> {
    if rho.nrows() != d || rho.ncols() != d {
        return Err(Error::InvalidDensity(format!(
            "shape {}x{}, expected {d}x{d}",
            rho.nrows(),
            rho.ncols()
        )));
    }
    let asym = (rho - rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if asym > DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("not Hermitian (deviation {asym})")));
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("trace {trace}")));
    }
    let min = min_eigenvalue(rho);
    if min < -DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("negative eigenvalue {min}")));
    }
    Ok(())
}

fn min_eigenvalue(m: &DMatrix<C64>) -> f64 {
    SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// `<v, rho v>`, real part.
fn expectation(rho: &DMatrix<C64>, v: &[C64]) -> f64 {
    let d = v.len();
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..d {
        for c in 0..d {
            acc += v[r].conj() * rho[(r, c)] * v[c];
        }
    }
    acc.re
}

/// Outcome probabilities `p(j) = tr(rho Pi_j) / d` for the measurement with
/// elements `E_j = Pi_j / d`. `ls` is assumed to be a certified SIC.
pub fn born_probabilities(rho: &DMatrix<C64>, ls: &LineSet) -> Result<Vec<f64>> {
    let d = ls.dimension();
    check_density(rho, d)?;
    let scale = 1.0 / d as f64;
    Ok(ls
        .vectors()
        .iter()
        .map(|v| expectation(rho, v) * scale)
        .collect())
}

/// Orthonormal Hermitian basis: diagonal units, then symmetric and
/// antisymmetric pairs for each `r < c`.
fn hermitian_basis(d: usize) -> Vec<DMatrix<C64>> {
    let mut out = Vec::with_capacity(d * d);
    let h = core::f64::consts::FRAC_1_SQRT_2;
    for i in 0..d {
        let mut m = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
        m[(i, i)] = C64::new(1.0, 0.0);
        out.push(m);
    }
    for r in 0..d {
        for c in (r + 1)..d {
            let mut s = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
            s[(r, c)] = C64::new(h, 0.0);
            s[(c, r)] = C64::new(h, 0.0);
            out.push(s);
            let mut a = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
            a[(r, c)] = C64::new(0.0, -h);
            a[(c, r)] = C64::new(0.0, h);
            out.push(a);
        }
    }
    out
}

/// A reconstructed operator with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub rho: DMatrix<C64>,
    /// `max_j |p'(j) - p(j)|` where `p'` are the Born probabilities of `rho`.
    pub residual: f64,
    pub min_eigenvalue: f64,
    /// `rho` is positive semidefinite (within [`DENSITY_TOL`]).
    pub is_physical: bool,
}

/// Linear inversion of the Born map for a fixed informationally complete set.
///
/// The `d^2 x d^2` real system maps coordinates in an orthonormal Hermitian
/// basis to outcome probabilities; it is factored once.
#[derive(Debug, Clone)]
pub struct SicTomography {
    dimension: usize,
    basis: Vec<DMatrix<C64>>,
    born: DMatrix<f64>,
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl SicTomography {
    pub fn new(ls: &LineSet) -> Result<Self> {
        let d = ls.dimension();
        if ls.len() != d * d {
            return Err(Error::WrongCount {
                expected: d * d,
                found: ls.len(),
            });
        }
        let basis = hermitian_basis(d);
        let scale = 1.0 / d as f64;
        let born = DMatrix::from_fn(d * d, d * d, |j, m| {
            expectation(&basis[m], ls.vectors()[j].as_slice()) * scale
        });
        let lu = born.clone().lu();
        Ok(Self {
            dimension: d,
            basis,
            born,
            lu,
        })
    }

    pub fn reconstruct(&self, p: &[f64]) -> Result<Reconstruction> {
        let d = self.dimension;
        if p.len() != d * d {
            return Err(Error::InvalidProbabilities(format!(
                "length {}, expected {}",
                p.len(),
                d * d
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidProbabilities(format!("sum {sum}, expected 1")));
        }
        let rhs = DVector::from_column_slice(p);
        let coords = self
            .lu
            .solve(&rhs)
            .ok_or_else(|| Error::InvalidProbabilities("measurement is not informationally complete".into()))?;
        let residual = (&self.born * &coords - &rhs).amax();
        if residual > RECONSTRUCTION_TOL {
            return Err(Error::InvalidProbabilities(format!(
                "outside the image of the Born map (residual {residual})"
            )));
        }
        let mut rho = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
        for (m, b) in self.basis.iter().enumerate() {
            rho += b * C64::new(coords[m], 0.0);
        }
        let min_eigenvalue = min_eigenvalue(&rho);
        Ok(Reconstruction {
            rho,
            residual,
            min_eigenvalue,
            is_physical: min_eigenvalue >= -DENSITY_TOL,
        })
    }
}

/// One-shot [`SicTomography::reconstruct`].
pub fn reconstruct_state(p: &[f64], ls: &LineSet) -> Result<Reconstruction> {
    SicTomography::new(ls)?.reconstruct(p)
}

/// Gauge threshold: the first amplitude at least this large is made real positive.
const GAUGE_MIN: f64 = 1e-8;
/// Overlaps smaller than this have no meaningful phase.
const PHASE_MIN: f64 = 1e-13;

/// Unit-modulus phases of the pairwise overlaps, after fixing each vector's
/// gauge so its first non-negligible amplitude is real and positive.
pub fn overlap_phases(ls: &LineSet) -> Result<DMatrix<C64>> {
    let fixed: Vec<Vec<C64>> = ls
        .vectors()
        .iter()
        .map(|v| {
            let pivot = v.iter().find(|z| z.norm() >= GAUGE_MIN).copied();
            match pivot {
                Some(z) => {
                    let phase = z.conj() / z.norm();
                    v.iter().map(|x| x * phase).collect()
                }
                None => v.clone(),
            }
        })
        .collect();
    let n = fixed.len();
    let mut out = DMatrix::from_element(n, n, C64::new(1.0, 0.0));
    for j in 0..n {
        for k in (j + 1)..n {
            let z = crate::lineset::inner(&fixed[j], &fixed[k]);
            let magnitude = z.norm();
            if magnitude < PHASE_MIN {
                return Err(Error::PhaseUndefined {
                    row: j,
                    col: k,
                    magnitude,
                });
            }
            out[(j, k)] = z / magnitude;
            out[(k, j)] = (z / magnitude).conj();
        }
    }
    Ok(out)
}

