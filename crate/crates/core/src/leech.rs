//! Binary Golay code, Leech lattice membership and short-vector enumeration,
//! and the 276 equiangular lines in R^23 obtained from a type-3 vector.
//!
//! Lattice vectors are stored in the usual integer coordinates, i.e. scaled
//! by sqrt(8): the inner product is `sum(u_i v_i) / 8` and the type of `v`
//! is `sum(v_i^2) / 16`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;


use crate::lineset::{Field, LineSet};
use crate::real::{complement_basis, restrict_to_hyperplane};
use crate::{Error, Result, C64};

const MASK24: u32 = (1 << 24) - 1;

/// Right half `B` of the generator `[I | B]`; bit `j` of row `i` is `B[i][j]`.
const GOLAY_B: [&str; 12] = [
    "110111000101",
    "101110001011",
    "011100010111",
    "111000101101",
    "110001011011",
    "100010110111",
    "000101101111",
    "001011011101",
    "010110111001",
    "101101110001",
    "011011100011",
    "111111111110",
];

/// The extended binary Golay code [24, 12, 8].
///
/// Words are 24-bit masks; bit `i` is coordinate `i`. The generator is in
/// standard form, so the first 12 bits of a codeword are its message bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GolayCode {
    generator: [u32; 12],
    codewords: Vec<u32>,
}

impl GolayCode {
    pub fn generator(&self) -> &[u32; 12] {
        &self.generator
    }

    /// All 4096 codewords, sorted.
    pub fn codewords(&self) -> &[u32] {
        &self.codewords
    }

    pub fn encode(&self, message: u32) -> u32 {
        (0..12)
            .filter(|i| message >> i & 1 == 1)
            .fold(0, |acc, i| acc ^ self.generator[i])
    }

    pub fn contains(&self, word: u32) -> bool {
        word & !MASK24 == 0 && self.encode(word & 0xfff) == word
    }

    /// Number of codewords of each weight 0..=24.
    pub fn weight_distribution(&self) -> [usize; 25] {
        let mut counts = [0; 25];
        for w in &self.codewords {
            counts[w.count_ones() as usize] += 1;
        }
        counts
    }
}

pub fn golay_codewords() -> GolayCode {
    let mut generator = [0u32; 12];
    for (i, row) in GOLAY_B.iter().enumerate() {
        let b = row
            .bytes()
            .enumerate()
            .filter(|(_, c)| *c == b'1')
            .fold(0u32, |acc, (j, _)| acc | 1 << (12 + j));
        generator[i] = 1 << i | b;
    }
    let mut code = GolayCode {
        generator,
        codewords: Vec::new(),
    };
    let mut words: Vec<u32> = (0..4096).map(|m| code.encode(m)).collect();
    words.sort_unstable();
    code.codewords = words;
    code
}

/// A Leech lattice vector in integer (sqrt(8)-scaled) coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeechVector([i8; 24]);

impl LeechVector {
    /// Validates membership.
    pub fn new(coords: [i32; 24], code: &GolayCode) -> Option<Self> {
        if coords.iter().any(|&x| x < i8::MIN as i32 || x > i8::MAX as i32) {
            return None;
        }
        if !is_leech_vector_in(&coords, code) {
            return None;
        }
        Some(Self(coords.map(|x| x as i8)))
    }

    pub fn coords(&self) -> [i32; 24] {
        self.0.map(i32::from)
    }

    pub fn raw(&self) -> &[i8; 24] {
        &self.0
    }

    pub fn norm_raw(&self) -> i32 {
        self.0.iter().map(|&x| x as i32 * x as i32).sum()
    }

    /// Half the norm: `sum(v_i^2) / 16`; `None` when not integral.
    pub fn lattice_type(&self) -> Option<u32> {
        let n = self.norm_raw();
        (n % 16 == 0).then_some((n / 16) as u32)
    }

    /// Unscaled dot product `sum(u_i v_i)` (eight times the lattice inner product).
    pub fn dot_raw(&self, other: &LeechVector) -> i32 {
        dot_raw(&self.coords(), &other.coords())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl fmt::Display for LeechVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn dot_raw(a: &[i32; 24], b: &[i32; 24]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Membership in the Leech lattice via the Golay-code congruences:
/// all coordinates share a parity `m`; for each residue class mod 4, the
/// support of that class is a Golay codeword; and the coordinate sum is
/// `4m mod 8`.
pub fn is_leech_vector(x: &[i32; 24]) -> bool {
    is_leech_vector_in(x, &golay_codewords())
}

pub fn is_leech_vector_in(x: &[i32; 24], code: &GolayCode) -> bool {
    let parity = x[0].rem_euclid(2);
    if x.iter().any(|v| v.rem_euclid(2) != parity) {
        return false;
    }
    let sum: i32 = x.iter().sum();
    if sum.rem_euclid(8) != 4 * parity {
        return false;
    }
    // residue 2 (even) or 1 (odd) determines the complementary class.
    let target = if parity == 0 { 2 } else { 1 };
    let support = x
        .iter()
        .enumerate()
        .filter(|(_, v)| v.rem_euclid(4) == target)
        .fold(0u32, |acc, (i, _)| acc | 1 << i);
    code.contains(support)
}

/// Lattice vectors of type `t` (norm `16 t` in raw units), sorted.
///
/// For every codeword `c`, coordinates are drawn from the residue classes
/// that `c` forces (e.g. `{+-2, +-6, ..}` on `c` and `{0, +-4, ..}` off it
/// for even vectors) by a depth-first search bounded by the remaining norm.
/// `limit` caps the number of vectors returned.
pub fn leech_type_vectors(t: u32, limit: Option<usize>) -> Result<Vec<LeechVector>> {
    if !(2..=3).contains(&t) {
        return Err(Error::UnsupportedType(t));
    }
    let code = golay_codewords();
    let target = 16 * t as i32;
    let limit = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut coords = [0i32; 24];
    for &word in code.codewords() {
        for parity in [0, 1] {
            let mut search = ShapeSearch {
                word,
                parity,
                target,
                limit,
                out: &mut out,
                coords: &mut coords,
            };
            search.descend(0, 0);
            if out.len() >= limit {
                out.truncate(limit);
                out.sort_unstable();
                return Ok(out);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

struct ShapeSearch<'a> {
    word: u32,
    parity: i32,
    target: i32,
    limit: usize,
    out: &'a mut Vec<LeechVector>,
    coords: &'a mut [i32; 24],
}

impl ShapeSearch<'_> {
    /// Values allowed at position `i`, i.e. the residue class mod 4 the codeword selects.
    fn residue(&self, i: usize) -> i32 {
        let on = self.word >> i & 1 == 1;
        match (self.parity, on) {
            (0, true) => 2,
            (0, false) => 0,
            (_, true) => 1,
            (_, false) => 3,
        }
    }

    fn min_square(&self, i: usize) -> i32 {
        match self.residue(i) {
            0 => 0,
            2 => 4,
            _ => 1,
        }
    }

    fn descend(&mut self, pos: usize, used: i32) {
        if self.out.len() >= self.limit {
            return;
        }
        let rest: i32 = (pos..24).map(|i| self.min_square(i)).sum();
        if used + rest > self.target {
            return;
        }
        if pos == 24 {
            if used == self.target {
                let sum: i32 = self.coords.iter().sum();
                if sum.rem_euclid(8) == 4 * self.parity {
                    self.out.push(LeechVector(self.coords.map(|x| x as i8)));
                }
            }
            return;
        }
        let r = self.residue(pos);
        let rest_after = rest - self.min_square(pos);
        let budget = self.target - used - rest_after;
        // candidate values congruent to r mod 4 with square within budget
        let max_abs = (budget as f64).sqrt() as i32;
        for value in -max_abs..=max_abs {
            if value.rem_euclid(4) != r {
                continue;
            }
            self.coords[pos] = value;
            self.descend(pos + 1, used + value * value);
        }
        self.coords[pos] = 0;
    }
}

/// Default type-3 vector `(5, 1, 1, ..., 1)`.
pub fn default_type3() -> LeechVector {
    let mut c = [1i32; 24];
    c[0] = 5;
    LeechVector::new(c, &golay_codewords()).expect("default type-3 vector is in the lattice")
}

/// Parses and validates a type-3 lattice vector.
pub fn type3_vector(coords: [i32; 24]) -> Result<LeechVector> {
    let v = LeechVector::new(coords, &golay_codewords())
        .ok_or_else(|| Error::NotType3(format!("{coords:?} is not in the Leech lattice")))?;
    match v.lattice_type() {
        Some(3) => Ok(v),
        other => Err(Error::NotType3(format!("{v} has type {other:?}"))),
    }
}

/// The 276-line construction, keeping the lattice data alongside the lines.
#[derive(Debug, Clone)]
pub struct LeechLines {
    pub v3: LeechVector,
    /// Unordered pairs `{u, v3 - u}` of type-2 vectors, smaller vector first.
    pub pairs: Vec<(LeechVector, LeechVector)>,
    /// Integer representatives `2u - v3`, orthogonal to `v3`, raw norm 80.
    pub representatives: Vec<[i32; 24]>,
    /// The lines expressed in an orthonormal basis of `v3`'s complement.
    pub lines: LineSet,
}

/// Sums `u + (v3 - u) = v3` over type-2 pairs.
///
/// `type2` must be sorted (as returned by [`leech_type_vectors`]).
pub fn type2_pairs(v3: &LeechVector, type2: &[LeechVector]) -> Vec<(LeechVector, LeechVector)> {
    let target = v3.coords();
    let mut pairs = Vec::new();
    for u in type2 {
        let uc = u.coords();
        let mut rest = [0i8; 24];
        let mut fits = true;
        for i in 0..24 {
            let x = target[i] - uc[i];
            if !(i8::MIN as i32..=i8::MAX as i32).contains(&x) {
                fits = false;
                break;
            }
            rest[i] = x as i8;
        }
        if !fits {
            continue;
        }
        let w = LeechVector(rest);
        if *u < w && type2.binary_search(&w).is_ok() {
            pairs.push((*u, w));
        }
    }
    pairs
}

pub fn leech_276_construction(v3: &LeechVector) -> Result<LeechLines> {
    let type2 = leech_type_vectors(2, None)?;
    leech_276_from_type2(v3, &type2)
}

pub fn leech_276_from_type2(v3: &LeechVector, type2: &[LeechVector]) -> Result<LeechLines> {
    if v3.lattice_type() != Some(3) || !is_leech_vector(&v3.coords()) {
        return Err(Error::NotType3(format!("{v3}")));
    }
    let pairs = type2_pairs(v3, type2);
    if pairs.len() != 276 {
        return Err(Error::PairCount { found: pairs.len() });
    }
    let vc = v3.coords();
    let representatives: Vec<[i32; 24]> = pairs
        .iter()
        .map(|(u, _)| {
            let uc = u.coords();
            core::array::from_fn(|i| 2 * uc[i] - vc[i])
        })
        .collect();

    // exact checks before going to floating point
    for (u, _) in &pairs {
        assert_eq!(dot_raw(&u.coords(), &vc), 24, "<u, v3> must be 3");
    }
    for (j, w) in representatives.iter().enumerate() {
        assert_eq!(dot_raw(w, &vc), 0);
        assert_eq!(dot_raw(w, w), 80);
        for w2 in &representatives[j + 1..] {
            assert_eq!(dot_raw(w, w2).abs(), 16);
        }
    }

    let scale = 1.0 / 80f64.sqrt();
    let ambient: Vec<Vec<C64>> = representatives
        .iter()
        .map(|w| w.iter().map(|&x| C64::new(x as f64 * scale, 0.0)).collect())
        .collect();
    let ambient = LineSet::new(24, Field::Real, ambient)?;
    let v3f: Vec<f64> = vc.iter().map(|&x| x as f64).collect();
    let lines = restrict_to_hyperplane(&ambient, &v3f, 1e-9)?;
    debug_assert_eq!(lines.len(), 276);
    Ok(LeechLines {
        v3: *v3,
        pairs,
        representatives,
        lines,
    })
}

/// The 276 equiangular lines in R^23 (common overlap 1/5).
pub fn leech_276_lines(v3: &LeechVector) -> Result<LineSet> {
    leech_276_construction(v3).map(|c| c.lines)
}

/// A type-2 vector `u` with `<u, v3> = 2` (so `v3 - u` has type 3), expressed
/// in the 23-dimensional coordinates used by [`LeechLines::lines`].
///
/// Exactly 176 of the 276 lines are orthogonal to it.
pub fn restriction_vector_176(v3: &LeechVector, type2: &[LeechVector]) -> Option<Vec<f64>> {
    let u = type2.iter().find(|u| u.dot_raw(v3) == 16)?;
    let v3f: Vec<f64> = v3.coords().iter().map(|&x| x as f64).collect();
    let basis = complement_basis(&v3f).ok()?;
    let uf: Vec<f64> = u.coords().iter().map(|&x| x as f64).collect();
    Some(
        basis
            .iter()
            .map(|b| b.iter().zip(&uf).map(|(x, y)| x * y).sum())
            .collect(),
    )
}

/// The 176 equiangular lines in R^22 obtained by restricting the 276.
pub fn leech_176_lines(v3: &LeechVector) -> Result<LineSet> {
    let type2 = leech_type_vectors(2, None)?;
    let c = leech_276_from_type2(v3, &type2)?;
    let v = restriction_vector_176(v3, &type2).ok_or(Error::EmptyRestriction { total: 276 })?;
    restrict_to_hyperplane(&c.lines, &v, 1e-9)
}
