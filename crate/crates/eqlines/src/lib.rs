//! File formats, multi-threaded fiducial search and the `eqlines`
//! command-line front end on top of `eqlines-core`.

pub mod cli;
pub mod format;
pub mod search;

pub use eqlines_core as core;
