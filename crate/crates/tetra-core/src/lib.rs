//! Exact computations for the generalized binary tetrahedral groups
//! P'(8·3^s) and their spherical space forms S^(4n-1)/P'(8·3^s).
//!
//! The crate covers the group law, cyclotomic arithmetic with certified
//! sign decisions, the orbit polytope of the free action on S^3 and its
//! fundamental domain, the equivariant chain complexes C and E together
//! with their comparison maps, homology and the cohomology ring, and
//! Reidemeister torsion.

pub mod complexes;
pub mod cyclo;
pub mod error;
pub mod geometry;
pub mod group;
pub mod group_ring;
pub mod homology;
pub mod interval;
pub mod torsion;

#[cfg(test)]
mod properties;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupParams};
