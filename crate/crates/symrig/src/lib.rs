//! Generic rigidity and flexibility of planar frameworks that are symmetric
//! under an orientation-preserving crystallographic group Γₖ = Z² ⋊ Z/kZ
//! (k ∈ {2, 3, 4, 6}) or a finite rotation group Z/kZ acting on a cone.
//!
//! The crate decides membership in the combinatorial sparsity classes that
//! characterize generic rigidity of the quotient data, builds and solves the
//! associated direction networks exactly, and produces generic realizations.

pub mod direction;
pub mod field;
pub mod graph;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod matroid;
pub mod rigidity;
pub mod selftest;
pub mod sparsity;
pub mod subgroup;
