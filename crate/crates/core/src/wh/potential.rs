use alloc::vec;
use alloc::vec::Vec;


use super::{CovarianceGroup, Fiducial, GroupKind};
use crate::{Result, C64};

/// Frame potential `sum_{k != identity} |<f, D_k f>|^4` over a covariance group.
///
/// Evaluated on the real parameter vector `x = (Re f, Im f)` of length `2d`
/// and normalized by `|f|^8`, which makes it scale invariant: the search can
/// take unconstrained steps and retract onto the sphere afterwards.
#[derive(Debug, Clone)]
pub struct FramePotential {
    group: CovarianceGroup,
}

impl FramePotential {
    pub fn new(kind: GroupKind) -> Result<Self> {
        Ok(Self {
            group: CovarianceGroup::new(kind)?,
        })
    }

    pub fn group(&self) -> &CovarianceGroup {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.group.dimension()
    }

    /// Global minimum `(d - 1) / (d + 1)`, attained exactly by SIC fiducials.
    pub fn minimum(&self) -> f64 {
        let d = self.dimension() as f64;
        (d - 1.0) / (d + 1.0)
    }

    pub fn value_of(&self, psi: &[C64]) -> f64 {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let s: f64 = self.group.elements()[1..]
            .iter()
            .map(|op| op.expectation(psi).norm_sqr().powi(2))
            .sum();
        s / (norm2 * norm2 * norm2 * norm2)
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.value_of(&to_complex(x))
    }

    /// Value and gradient with respect to `x`.
    pub fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let d = self.dimension();
        let psi = to_complex(x);
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let mut s = 0.0;
        // h = dS / d(conj psi)
        let mut h = vec![C64::new(0.0, 0.0); d];
        let mut fwd = vec![C64::new(0.0, 0.0); d];
        let mut back = vec![C64::new(0.0, 0.0); d];
        for op in &self.group.elements()[1..] {
            let g = op.expectation(&psi);
            let g2 = g.norm_sqr();
            s += g2 * g2;
            op.apply(&psi, &mut fwd);
            op.apply_adjoint(&psi, &mut back);
            let gc = g.conj() * (2.0 * g2);
            let gs = g * (2.0 * g2);
            for n in 0..d {
                h[n] += gc * fwd[n] + gs * back[n];
            }
        }
        let n8 = norm2.powi(4);
        let n10 = n8 * norm2;
        for n in 0..d {
            grad[n] = 2.0 * h[n].re / n8 - 8.0 * s * x[n] / n10;
            grad[n + d] = 2.0 * h[n].im / n8 - 8.0 * s * x[n + d] / n10;
        }
        s / n8
    }
}

pub(crate) fn to_complex(x: &[f64]) -> Vec<C64> {
    let d = x.len() / 2;
    (0..d).map(|n| C64::new(x[n], x[n + d])).collect()
}

pub(crate) fn to_real(psi: &[C64]) -> Vec<f64> {
    psi.iter().map(|z| z.re).chain(psi.iter().map(|z| z.im)).collect()
}

/// Weyl-Heisenberg frame potential of a fiducial.
pub fn frame_potential(f: &Fiducial) -> Result<f64> {
    Ok(FramePotential::new(GroupKind::WeylHeisenberg(f.dimension()))?.value_of(f.amplitudes()))
}
