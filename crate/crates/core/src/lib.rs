//! Classical triangulations of circle bundles over triangulated bases.
//!
//! A bundle is encoded as a consistent family of necklaces, one per simplex
//! of the base. The crate builds such families with a prescribed Euler
//! number, evaluates the local combinatorial formula, reconstructs the total
//! space as an explicit simplicial complex, and cross-checks everything with
//! integer homology and the coloring-game bound.

pub mod bundle;
pub mod chain;
pub mod complex;
pub mod error;
pub mod game;
pub mod gf2;
pub mod homology;
pub mod io;
pub mod lcf;
pub mod necklace;
pub mod total_space;

#[cfg(test)]
pub(crate) mod tests_support;

pub use error::{Error, Result};
