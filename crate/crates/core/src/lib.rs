//! Exact, machine-checked embeddings of finite lattices into lattices of
//! convex sets.
//!
//! The pipeline: a finite lattice ([`lattice`]) yields a colored tree of
//! join-cover sequences ([`tree`]); the contraction rewriting system on the
//! positive cone of the free space over that tree ([`rewrite`]) determines a
//! quotient space with rational coordinates ([`quotient`]); the images of the
//! tree nodes form a point configuration whose closure lattice
//! ([`geometry`]) receives the embedding ([`embedding`]). [`identity`]
//! evaluates lattice terms, including the planar identity, in any of these
//! lattices.

pub mod arith;
pub mod embedding;
pub mod geometry;
pub mod identity;
pub mod lattice;
pub mod linalg;
pub mod quotient;
pub mod random;
pub mod rewrite;
pub mod tree;

pub use arith::{OrdinalPoly, Rational};
pub use lattice::{FiniteLattice, LatticeError, LatticeSpec};
