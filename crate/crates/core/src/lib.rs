//! Exact integral cohomology rings of real moment-angle complexes.
//!
//! A finite simplicial complex `K` on vertices `1..=m` determines a real
//! moment-angle complex: the subspace of the cube `[-1,1]^m` formed by
//! gluing, for each simplex of `K`, the product of intervals over its
//! vertices and the two-point set `{-1,1}` over the rest. Its integral
//! cohomology splits as a direct sum over subsets `I` of the vertex set; the
//! summand for `I` is computed by a chain complex spanned by the simplices of
//! `K` inside `I`, graded so a simplex of size `k` sits in degree `k`.
//!
//! This crate computes that cohomology exactly over the integers, including
//! torsion, together with the cup product at the level of classes. A
//! dedicated layer handles the boundary of an `n`-gon, whose real
//! moment-angle complex is a closed orientable surface, and cross-checks the
//! combinatorial description of its ring (arc generators, a genus formula,
//! and an intersection-style pairing) against the general machinery.
//!
//! Everything is integer-exact: ranks, torsion coefficients and products are
//! computed via Smith normal forms over arbitrary-precision integers.

pub mod cup;
pub mod error;
pub mod koszul;
pub mod linalg;
pub mod polygon;
pub mod simplicial;

pub use cup::{chain_product, ring_table, Cochain, RingContext, RingTable, SignedGenerator};
pub use error::{Error, Result};
pub use linalg::{
    betti_profile, block_profiles, BettiProfile, BlockSummary, CohomologyBasis, CohomologyClass,
    Int, IntMatrix,
};
pub use polygon::{
    arcs, combinatorial_generators, genus, predicted_product, verify, ArcDecomposition,
    CombinatorialGenerator, ProductPrediction, VerificationReport,
};
pub use simplicial::{polygon_boundary, simplex_boundary, Complex, VertexSet};
