//! Explicit real equiangular line sets: hexagon, icosahedron, the 28 lines
//! built from the oriented Fano plane, and hyperplane restriction.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lineset::{check_tol, inner, LineSet};
use crate::{Error, Result, C64};

/// The three diagonals of a regular hexagon, at angles 0, pi/3 and 2pi/3.
pub fn hexagon_lines() -> LineSet {
    let vectors = (0..3)
        .map(|k| {
            let t = k as f64 * core::f64::consts::FRAC_PI_3;
            vec![t.cos(), t.sin()]
        })
        .collect();
    LineSet::real(2, vectors).expect("hexagon vectors are unit")
}

/// The six diagonals of a regular icosahedron, from the cyclic family `(0, +-1, phi)`.
pub fn icosahedron_lines() -> LineSet {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let norm = (1.0 + phi * phi).sqrt();
    let mut vectors = Vec::with_capacity(6);
    for shift in 0..3 {
        for sign in [1.0, -1.0] {
            let base = [0.0, sign, phi];
            let mut v = vec![0.0; 3];
            for (i, x) in base.iter().enumerate() {
                v[(i + shift) % 3] = x / norm;
            }
            vectors.push(v);
        }
    }
    LineSet::real(3, vectors).expect("icosahedron vectors are unit")
}

/// Fano plane lines as point triples (points 1..=7), in incidence-row order.
pub const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 7, 6],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 6, 5],
];

/// The Fano plane: seven lines of three points, with its line-point incidence grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoPlane {
    pub lines: [[usize; 3]; 7],
    /// `incidence[i][j] == 1` iff line `i` contains point `j + 1`.
    pub incidence: [[u8; 7]; 7],
}

impl FanoPlane {
    pub fn contains(&self, line: usize, point: usize) -> bool {
        self.incidence[line][point - 1] == 1
    }
}

impl fmt::Display for FanoPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.incidence {
            let mut first = true;
            for x in row {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn fano_incidence() -> FanoPlane {
    let mut incidence = [[0u8; 7]; 7];
    for (i, line) in FANO_LINES.iter().enumerate() {
        for &p in line {
            incidence[i][p - 1] = 1;
        }
    }
    FanoPlane {
        lines: FANO_LINES,
        incidence,
    }
}

/// Cayley-Graves table: `OCTONION_TABLE[i][j] = (sign, k)` means `e_i e_j = sign * e_k`,
/// with index 0 standing for the real unit.
pub const OCTONION_TABLE: [[(i8, u8); 8]; 8] = [
    [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
    [(1, 4), (-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 5), (1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
    [(1, 6), (1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
    [(1, 7), (-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
];

/// Product of two octonion units, `e_i e_j`, as `(sign, index)`.
pub fn octonion_multiply(i: usize, j: usize) -> Result<(i8, usize)> {
    if i > 7 {
        return Err(Error::IndexOutOfRange { index: i, limit: 8 });
    }
    if j > 7 {
        return Err(Error::IndexOutOfRange { index: j, limit: 8 });
    }
    let (s, k) = OCTONION_TABLE[i][j];
    Ok((s, k as usize))
}

/// The 28 sign vectors with entries in {-1, 0, 1}, one per (Fano line, point off the line).
///
/// The entry at coordinate `q` of line `l` is the sign of the right product
/// `e_q e_p`, where `p` is the point off the line. Every pattern has an even
/// number of minus signs.
/// Order: lines in [`FANO_LINES`] order, then `p` ascending.
pub fn fano_28_sign_vectors() -> Vec<[i8; 7]> {
    let plane = fano_incidence();
    let mut out = Vec::with_capacity(28);
    for (li, line) in plane.lines.iter().enumerate() {
        for p in (1..=7).filter(|&p| !plane.contains(li, p)) {
            let mut v = [0i8; 7];
            for &q in line {
                v[q - 1] = OCTONION_TABLE[q][p].0;
            }
            out.push(v);
        }
    }
    out
}

/// The 28 equiangular lines in R^7 with common overlap 1/3.
///
/// The integer sign vectors are checked exactly (squared norm 3, every
/// pairwise overlap +-1) before being scaled by 1/sqrt(3).
pub fn fano_28_lines() -> LineSet {
    let signs = fano_28_sign_vectors();
    for (j, a) in signs.iter().enumerate() {
        for (k, b) in signs.iter().enumerate() {
            let dot: i32 = a.iter().zip(b).map(|(&x, &y)| x as i32 * y as i32).sum();
            let expected = if j == k { 3 } else { 1 };
            assert_eq!(dot.abs(), expected, "Fano sign vectors {j}, {k}");
        }
    }
    let scale = 1.0 / 3f64.sqrt();
    let vectors = signs
        .iter()
        .map(|s| s.iter().map(|&x| x as f64 * scale).collect())
        .collect();
    LineSet::real(7, vectors).expect("Fano vectors are unit")
}

/// Orthonormal basis of the hyperplane orthogonal to `v`.
///
/// Gram-Schmidt over the standard basis vectors, skipping the coordinate
/// where `|v|` is largest, after seeding with `v / |v|`.
pub fn complement_basis(v: &[f64]) -> Result<Vec<Vec<f64>>> {
    let d = v.len();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroVector);
    }
    let pivot = (0..d)
        .max_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()))
        .unwrap_or(0);
    let mut frame: Vec<Vec<f64>> = vec![v.iter().map(|x| x / norm).collect()];
    for i in (0..d).filter(|&i| i != pivot) {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for b in &frame {
                let c: f64 = b.iter().zip(&e).map(|(x, y)| x * y).sum();
                e.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = e.iter().map(|x| x * x).sum::<f64>().sqrt();
        e.iter_mut().for_each(|x| *x /= n);
        frame.push(e);
    }
    frame.remove(0);
    Ok(frame)
}

/// Lines kept by a hyperplane restriction, with their original indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    pub retained: Vec<usize>,
    pub lines: LineSet,
}

/// Keeps the lines orthogonal to `v` (overlap magnitude below `tol`) and
/// re-expresses them in an orthonormal basis of `v`'s complement.
pub fn restrict_to_hyperplane(ls: &LineSet, v: &[f64], tol: f64) -> Result<LineSet> {
    restrict_to_hyperplane_indexed(ls, v, tol).map(|r| r.lines)
}

pub fn restrict_to_hyperplane_indexed(ls: &LineSet, v: &[f64], tol: f64) -> Result<Restriction> {
    check_tol(tol)?;
    let d = ls.dimension();
    if v.len() != d {
        return Err(Error::DimensionMismatch {
            index: 0,
            expected: d,
            found: v.len(),
        });
    }
    if d < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: d });
    }
    let basis = complement_basis(v)?;
    let vc: Vec<C64> = v.iter().map(|&x| C64::new(x, 0.0)).collect();
    let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();

    let mut retained = Vec::new();
    let mut vectors = Vec::new();
    for (i, x) in ls.vectors().iter().enumerate() {
        if inner(&vc, x).norm() / vnorm >= tol {
            continue;
        }
        retained.push(i);
        vectors.push(
            basis
                .iter()
                .map(|b| {
                    x.iter()
                        .zip(b)
                        .fold(C64::new(0.0, 0.0), |acc, (z, &w)| acc + z * w)
                })
                .collect::<Vec<C64>>(),
        );
    }
    if vectors.is_empty() {
        return Err(Error::EmptyRestriction { total: ls.len() });
    }
    // Retained vectors lie in the hyperplane, so their norms are preserved;
    // renormalizing absorbs the sub-tolerance component along v.
    let lines = LineSet::normalized(d - 1, ls.field(), vectors)?;
    Ok(Restriction { retained, lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lineset::{certify_equiangular, gerzon_bound, gram, saturating_alpha, Field};

    #[test]
    fn hexagon_overlaps() {
        let h = hexagon_lines();
        assert!((h.overlap(0, 1).re - 0.5).abs() < 1e-15);
        assert!((h.overlap(0, 2).re + 0.5).abs() < 1e-15);
        let c = certify_equiangular(&h, 1e-12).unwrap();
        assert!(c.is_equiangular);
        assert!((c.alpha - 0.5).abs() < 1e-12);
        assert_eq!(h.len(), gerzon_bound(2, Field::Real));
    }

    #[test]
    fn icosahedron_saturates() {
        let ico = icosahedron_lines();
        assert_eq!(ico.len(), gerzon_bound(3, Field::Real));
        let c = certify_equiangular(&ico, 1e-12).unwrap();
        assert!(c.is_equiangular);
        assert!((c.alpha - saturating_alpha(3, Field::Real)).abs() < 1e-12);
    }

    #[test]
    fn fano_matrix_rows() {
        let f = fano_incidence();
        assert_eq!(f.incidence[0], [1, 1, 1, 0, 0, 0, 0]);
        for col in 0..7 {
            assert_eq!(f.incidence.iter().map(|r| r[col]).sum::<u8>(), 3);
        }
        for i in 0..7 {
            assert_eq!(f.incidence[i].iter().sum::<u8>(), 3);
            for j in (i + 1)..7 {
                let common: u8 = (0..7).map(|c| f.incidence[i][c] * f.incidence[j][c]).sum();
                assert_eq!(common, 1);
            }
        }
        let printed = "1 1 1 0 0 0 0\n1 0 0 1 1 0 0\n1 0 0 0 0 1 1\n0 1 0 1 0 1 0\n\
                       0 1 0 0 1 0 1\n0 0 1 1 0 0 1\n0 0 1 0 1 1 0\n";
        assert_eq!(alloc::format!("{f}"), printed);
    }

    #[test]
    fn octonion_examples() {
        assert_eq!(octonion_multiply(1, 2).unwrap(), (1, 3));
        assert_eq!(octonion_multiply(2, 1).unwrap(), (-1, 3));
        assert_eq!(octonion_multiply(4, 4).unwrap(), (-1, 0));
        assert!(octonion_multiply(8, 0).is_err());
    }

    #[test]
    fn octonion_table_structure() {
        for i in 1..8 {
            assert_eq!(octonion_multiply(i, i).unwrap(), (-1, 0));
            for j in 1..8 {
                if i != j {
                    let (s, k) = octonion_multiply(i, j).unwrap();
                    assert_eq!(octonion_multiply(j, i).unwrap(), (-s, k));
                }
            }
        }
        for line in FANO_LINES {
            for &a in &line {
                for &b in &line {
                    if a != b {
                        let (_, k) = octonion_multiply(a, b).unwrap();
                        assert!(line.contains(&k));
                    }
                }
            }
        }
    }

    #[test]
    fn fano_28_groups() {
        let signs = fano_28_sign_vectors();
        assert_eq!(signs.len(), 28);
        for group in signs.chunks(4) {
            for a in group {
                assert_eq!(a.iter().filter(|&&x| x != 0).count(), 3);
                for b in group {
                    if a != b {
                        let hamming = a.iter().zip(b).filter(|(x, y)| x != y).count();
                        assert_eq!(hamming, 2);
                    }
                }
            }
        }
        let ls = fano_28_lines();
        let c = certify_equiangular(&ls, 1e-10).unwrap();
        assert!(c.is_equiangular);
        assert!((c.alpha - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn hexagon_restricted_to_line() {
        let r = restrict_to_hyperplane_indexed(&hexagon_lines(), &[0.0, 1.0], 1e-9).unwrap();
        assert_eq!(r.retained, vec![0]);
        assert_eq!(r.lines.dimension(), 1);
        assert!((r.lines.vectors()[0][0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn restriction_preserves_overlaps() {
        let ls = fano_28_lines();
        let v = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let r = restrict_to_hyperplane_indexed(&ls, &v, 1e-9).unwrap();
        // lines avoiding coordinate 1: the four lines without point 1, four vectors each
        assert_eq!(r.retained.len(), 16);
        let g_full = gram(&ls);
        let g_sub = gram(&r.lines);
        for (a, &i) in r.retained.iter().enumerate() {
            for (b, &j) in r.retained.iter().enumerate() {
                assert!((g_full.get(i, j) - g_sub.get(a, b)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn empty_restriction_is_error() {
        let err = restrict_to_hyperplane(&icosahedron_lines(), &[1.0, 1.0, 1.0], 1e-9);
        assert_eq!(err, Err(Error::EmptyRestriction { total: 6 }));
        assert_eq!(
            restrict_to_hyperplane(&hexagon_lines(), &[0.0, 0.0], 1e-9),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn complement_basis_is_orthonormal() {
        let v = [0.3, -2.0, 0.5, 1.0];
        let b = complement_basis(&v).unwrap();
        assert_eq!(b.len(), 3);
        for (i, x) in b.iter().enumerate() {
            let dv: f64 = x.iter().zip(&v).map(|(a, c)| a * c).sum();
            assert!(dv.abs() < 1e-14);
            for (j, y) in b.iter().enumerate() {
                let d: f64 = x.iter().zip(y).map(|(a, c)| a * c).sum();
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((d - e).abs() < 1e-14);
            }
        }
    }
}
