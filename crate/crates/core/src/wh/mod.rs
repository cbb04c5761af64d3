//! Weyl-Heisenberg displacement operators, group orbits, SIC fiducial search,
//! SIC certification and SIC-based state tomography.
//!
//! Every group element used here is a monomial matrix (a permutation with
//! phases), so operators are stored as [`MonomialOp`] and applied in `O(d)`.

mod potential;
mod search;
mod sic;

pub use potential::{frame_potential, FramePotential};
pub use search::{
    evaluate_restart, minimize_on_sphere, search, search_fiducial, RestartOutcome, SearchOptions,
    SearchOutcome, SphereMinimum, DEFAULT_RESTARTS,
};
pub use sic::{
    born_probabilities, certify_sic, overlap_phases, reconstruct_state, Reconstruction,
    SicCertificate, SicTomography, DENSITY_TOL,
};

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::lineset::{vector_norm, Field, LineSet};
use crate::{Error, Result, C64};

/// `exp(i pi k / d)`, with `k` reduced mod `2d` first.
fn root_of_unity_half(k: i64, d: usize) -> C64 {
    let m = 2 * d as i64;
    let k = k.rem_euclid(m);
    let theta = core::f64::consts::PI * k as f64 / d as f64;
    C64::new(theta.cos(), theta.sin())
}

/// An operator `(D psi)_n = coeff[n] * psi[source[n]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialOp {
    source: Vec<usize>,
    coeff: Vec<C64>,
}

impl MonomialOp {
    pub fn identity(d: usize) -> Self {
        Self {
            source: (0..d).collect(),
            coeff: vec![C64::new(1.0, 0.0); d],
        }
    }

    pub fn dimension(&self) -> usize {
        self.source.len()
    }

    pub fn apply(&self, psi: &[C64], out: &mut [C64]) {
        for (n, o) in out.iter_mut().enumerate() {
            *o = self.coeff[n] * psi[self.source[n]];
        }
    }

    pub fn apply_adjoint(&self, psi: &[C64], out: &mut [C64]) {
        for n in 0..self.source.len() {
            out[self.source[n]] = self.coeff[n].conj() * psi[n];
        }
    }

    /// `<psi, D psi>`.
    pub fn expectation(&self, psi: &[C64]) -> C64 {
        (0..psi.len()).fold(C64::new(0.0, 0.0), |acc, n| {
            acc + psi[n].conj() * self.coeff[n] * psi[self.source[n]]
        })
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        let d = self.dimension();
        let mut m = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
        for n in 0..d {
            m[(n, self.source[n])] = self.coeff[n];
        }
        m
    }
}

/// Label `(a, b)` of the displacement `D_{a,b}`, both reduced mod `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DisplacementIndex {
    pub a: usize,
    pub b: usize,
}

impl DisplacementIndex {
    pub fn new(a: usize, b: usize, d: usize) -> Result<Self> {
        for x in [a, b] {
            if x >= d {
                return Err(Error::IndexOutOfRange { index: x, limit: d });
            }
        }
        Ok(Self { a, b })
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::DimensionTooSmall { min: 2, found: d })
    } else {
        Ok(())
    }
}

/// Shift `X e_n = e_{n+1 mod d}`.
pub fn shift_x(d: usize) -> Result<DMatrix<C64>> {
    check_dim(d)?;
    Ok(displacement_op(1, 0, d, false).to_matrix())
}

/// Clock `Z e_n = exp(2 pi i n / d) e_n`.
pub fn clock_z(d: usize) -> Result<DMatrix<C64>> {
    check_dim(d)?;
    Ok(displacement_op(0, 1, d, false).to_matrix())
}

/// `D_{a,b} = tau^{ab} X^a Z^b` with `tau = -exp(i pi / d)`.
pub fn displacement(idx: DisplacementIndex, d: usize) -> Result<DMatrix<C64>> {
    check_dim(d)?;
    DisplacementIndex::new(idx.a, idx.b, d)?;
    Ok(displacement_op(idx.a, idx.b, d, true).to_matrix())
}

/// `(X^a Z^b psi)_n = omega^{b(n-a)} psi_{n-a}`, optionally times `tau^{ab}`.
/// Phases are accumulated as integer multiples of `pi / d`.
fn displacement_op(a: usize, b: usize, d: usize, with_tau: bool) -> MonomialOp {
    let (a, b, di) = (a as i64, b as i64, d as i64);
    let tau = if with_tau { a * b * (di + 1) } else { 0 };
    let mut source = Vec::with_capacity(d);
    let mut coeff = Vec::with_capacity(d);
    for n in 0..di {
        let shifted = (n - a).rem_euclid(di);
        source.push(shifted as usize);
        coeff.push(root_of_unity_half(tau + 2 * b * shifted, d));
    }
    MonomialOp { source, coeff }
}

/// Which covariance group an orbit or search uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Weyl-Heisenberg group in dimension `d`.
    WeylHeisenberg(usize),
    /// Three-fold tensor product of the qubit Pauli group, in dimension 8.
    ThreeQubitPauli,
}

impl GroupKind {
    pub fn dimension(self) -> usize {
        match self {
            GroupKind::WeylHeisenberg(d) => d,
            GroupKind::ThreeQubitPauli => 8,
        }
    }
}

/// The `d^2` operators of a covariance group, identity first.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceGroup {
    kind: GroupKind,
    elements: Vec<MonomialOp>,
}

impl CovarianceGroup {
    pub fn new(kind: GroupKind) -> Result<Self> {
        let elements = match kind {
            GroupKind::WeylHeisenberg(d) => {
                check_dim(d)?;
                let mut ops = Vec::with_capacity(d * d);
                for a in 0..d {
                    for b in 0..d {
                        ops.push(displacement_op(a, b, d, true));
                    }
                }
                ops
            }
            GroupKind::ThreeQubitPauli => three_qubit_ops(),
        };
        Ok(Self { kind, elements })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.kind.dimension()
    }

    pub fn elements(&self) -> &[MonomialOp] {
        &self.elements
    }

    /// The images `D_k f` of a fiducial under every group element.
    pub fn orbit(&self, f: &Fiducial) -> Result<LineSet> {
        let d = self.dimension();
        if f.dimension() != d {
            return Err(Error::DimensionMismatch {
                index: 0,
                expected: d,
                found: f.dimension(),
            });
        }
        let vectors = self
            .elements
            .iter()
            .map(|op| {
                let mut out = vec![C64::new(0.0, 0.0); d];
                op.apply(f.amplitudes(), &mut out);
                out
            })
            .collect();
        LineSet::new(d, Field::Complex, vectors)
    }
}

/// `P_1 (x) P_2 (x) P_3` with each `P = X^a Z^b` on a qubit, ordered
/// lexicographically over `(a_1, b_1), (a_2, b_2), (a_3, b_3)`.
fn three_qubit_ops() -> Vec<MonomialOp> {
    let mut ops = Vec::with_capacity(64);
    for label in 0..64usize {
        let pairs: [(usize, usize); 3] = core::array::from_fn(|q| {
            let p = label >> (2 * (2 - q)) & 3;
            (p >> 1, p & 1)
        });
        let flip = pairs.iter().fold(0, |acc, &(a, _)| acc << 1 | a);
        let mut source = Vec::with_capacity(8);
        let mut coeff = Vec::with_capacity(8);
        for n in 0..8usize {
            let s = n ^ flip;
            let mut sign = 1.0;
            for (q, &(_, b)) in pairs.iter().enumerate() {
                let bit = s >> (2 - q) & 1;
                if b * bit == 1 {
                    sign = -sign;
                }
            }
            source.push(s);
            coeff.push(C64::new(sign, 0.0));
        }
        ops.push(MonomialOp { source, coeff });
    }
    ops
}

/// A unit vector whose group orbit is a candidate SIC.
#[derive(Debug, Clone, PartialEq)]
pub struct Fiducial {
    amplitudes: Vec<C64>,
}

/// Norm tolerance for [`Fiducial::new`].
pub const FIDUCIAL_NORM_TOL: f64 = 1e-12;

impl Fiducial {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = vector_norm(&amplitudes);
        if amplitudes.len() < 2 {
            return Err(Error::DimensionTooSmall {
                min: 2,
                found: amplitudes.len(),
            });
        }
        if (norm - 1.0).abs() > FIDUCIAL_NORM_TOL {
            return Err(Error::NotUnitNorm { index: 0, norm });
        }
        Ok(Self { amplitudes })
    }

    /// Scales to unit norm first.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm = vector_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotUnitNorm { index: 0, norm });
        }
        amplitudes.iter_mut().for_each(|z| *z /= norm);
        Self::new(amplitudes)
    }

    /// The standard basis vector `e_k`.
    pub fn basis(d: usize, k: usize) -> Result<Self> {
        if k >= d {
            return Err(Error::IndexOutOfRange { index: k, limit: d });
        }
        let mut v = vec![C64::new(0.0, 0.0); d];
        v[k] = C64::new(1.0, 0.0);
        Self::new(v)
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Real parameters `(Re f, Im f)` as used by [`FramePotential`].
    pub fn parameters(&self) -> Vec<f64> {
        potential::to_real(&self.amplitudes)
    }
}

/// Weyl-Heisenberg orbit `{D_{a,b} f}` in lexicographic `(a, b)` order.
pub fn wh_orbit(f: &Fiducial) -> Result<LineSet> {
    CovarianceGroup::new(GroupKind::WeylHeisenberg(f.dimension()))?.orbit(f)
}

/// Orbit of an 8-dimensional fiducial under the three-qubit Pauli group.
pub fn three_qubit_orbit(f: &Fiducial) -> Result<LineSet> {
    if f.dimension() != 8 {
        return Err(Error::DimensionMismatch {
            index: 0,
            expected: 8,
            found: f.dimension(),
        });
    }
    CovarianceGroup::new(GroupKind::ThreeQubitPauli)?.orbit(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &DMatrix<C64>, b: &DMatrix<C64>, tol: f64) -> bool {
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() <= tol)
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn qubit_operators() {
        let x = shift_x(2).unwrap();
        assert_eq!(
            x,
            DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
        );
        let z = clock_z(2).unwrap();
        assert!(close(
            &z,
            &DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
            1e-15
        ));
    }

    #[test]
    fn shift_moves_basis_forward() {
        let x = shift_x(5).unwrap();
        for n in 0..5 {
            assert_eq!(x[((n + 1) % 5, n)], c(1.0, 0.0));
        }
    }

    #[test]
    fn commutation_and_order() {
        for d in 2..=9 {
            let x = shift_x(d).unwrap();
            let z = clock_z(d).unwrap();
            let omega = root_of_unity_half(2, d);
            assert!(close(&(&z * &x), &((&x * &z) * omega), 1e-14));
            let id = DMatrix::identity(d, d);
            assert!(close(&x.pow(d as u32), &id, 1e-14));
            assert!(close(&z.pow(d as u32), &id, 1e-13));
            assert!(close(&(x.adjoint() * &x), &id, 1e-15));
        }
    }

    #[test]
    fn displacement_basics() {
        for d in 2..=6 {
            let id = DMatrix::<C64>::identity(d, d);
            assert!(close(
                &displacement(DisplacementIndex::new(0, 0, d).unwrap(), d).unwrap(),
                &id,
                0.0
            ));
            for a in 0..d {
                for b in 0..d {
                    let m = displacement(DisplacementIndex { a, b }, d).unwrap();
                    assert!(close(&(m.adjoint() * &m), &id, 1e-14));
                    // D_{a,b}^dagger = D_{-a,-b}; labels reduced mod d cost a sign in even d
                    let inv = displacement(DisplacementIndex { a: (d - a) % d, b: (d - b) % d }, d)
                        .unwrap();
                    let flipped = -inv.clone();
                    assert!(
                        close(&m.adjoint(), &inv, 1e-13)
                            || (d % 2 == 0 && close(&m.adjoint(), &flipped, 1e-13))
                    );
                }
            }
        }
        assert!(DisplacementIndex::new(3, 0, 3).is_err());
        assert!(shift_x(1).is_err());
    }

    #[test]
    fn qubit_displacements_are_paulis() {
        // tau = -exp(i pi/2) = -i, so D_{1,1} = -i X Z = -Y
        let y = displacement(DisplacementIndex { a: 1, b: 1 }, 2).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 1.), c(0., -1.), c(0., 0.)]);
        assert!(close(&y, &expected, 1e-15));
        let x = displacement(DisplacementIndex { a: 1, b: 0 }, 2).unwrap();
        assert_eq!(x, shift_x(2).unwrap());
        let z = displacement(DisplacementIndex { a: 0, b: 1 }, 2).unwrap();
        assert!(close(&z, &clock_z(2).unwrap(), 0.0));
    }

    #[test]
    fn orbit_of_basis_vector_repeats_lines() {
        let orbit = wh_orbit(&Fiducial::basis(2, 0).unwrap()).unwrap();
        assert_eq!(orbit.len(), 4);
        let mut distinct: Vec<usize> = Vec::new();
        for v in orbit.vectors() {
            let k = v.iter().position(|z| z.norm() > 0.5).unwrap();
            if !distinct.contains(&k) {
                distinct.push(k);
            }
        }
        assert_eq!(distinct.len(), 2);
    }

    #[test]
    fn three_qubit_group_elements() {
        let g = CovarianceGroup::new(GroupKind::ThreeQubitPauli).unwrap();
        assert_eq!(g.elements().len(), 64);
        assert_eq!(g.elements()[0], MonomialOp::identity(8));
        let x = shift_x(2).unwrap();
        let z = clock_z(2).unwrap();
        let paulis = [DMatrix::identity(2, 2), z.clone(), x.clone(), &x * &z];
        for (label, op) in g.elements().iter().enumerate() {
            let p = |q: usize| &paulis[label >> (2 * (2 - q)) & 3];
            let expected = p(0).kronecker(p(1)).kronecker(p(2));
            assert!(close(&op.to_matrix(), &expected, 1e-15), "label {label}");
        }
        assert!(three_qubit_orbit(&Fiducial::basis(4, 0).unwrap()).is_err());
    }

    #[test]
    fn adjoint_application() {
        let op = displacement_op(2, 3, 5, true);
        let m = op.to_matrix();
        let psi: Vec<C64> = (0..5).map(|k| c(k as f64, 1.0 - k as f64)).collect();
        let mut out = vec![c(0., 0.); 5];
        op.apply_adjoint(&psi, &mut out);
        let expected = m.adjoint() * nalgebra::DVector::from_vec(psi.clone());
        for n in 0..5 {
            assert!((out[n] - expected[n]).norm() < 1e-13);
        }
    }
}
