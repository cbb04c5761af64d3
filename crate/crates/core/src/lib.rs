//! Maximal equiangular line sets: explicit real constructions (hexagon,
//! icosahedron, the Fano-plane 28, the Leech-lattice 276 and its 176
//! restriction), certification, Seidel-matrix/graph switching, and
//! Weyl-Heisenberg SIC fiducial search with SIC-based tomography.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod leech;
pub mod lineset;
pub mod real;
pub mod seidel;
pub mod wh;

pub use error::{Error, Result};
pub use lineset::{
    certify_equiangular, gerzon_bound, gram, saturating_alpha, Certificate, Field, GramMatrix,
    LineSet, DEFAULT_TOL,
};

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
