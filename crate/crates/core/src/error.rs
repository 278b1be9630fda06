use thiserror::Error;

use crate::simplicial::VertexSet;

/// Errors reported by the library.
///
/// Variants are split between input validation (bad ground sets, bad JSON,
/// out-of-range parameters) and computation-level failures (projecting a
/// vector that is not a cocycle, mismatched operands, broken internal
/// invariants).
#[derive(Debug, Error)]
pub enum Error {
    /// A vertex outside the ground set `{1, …, m}` was supplied.
    #[error("vertex {vertex} is outside the ground set {{1, …, {m}}}")]
    InvalidVertex { vertex: usize, m: usize },

    /// The requested ground set does not fit in one machine word.
    #[error("ground set size {m} exceeds the supported maximum of 63")]
    TooLarge { m: usize },

    /// A polygon boundary needs at least three vertices.
    #[error("polygon boundary requires n >= 3, got {n}")]
    InvalidPolygon { n: usize },

    /// A sphere triangulation needs dimension at least one.
    #[error("boundary sphere requires dimension >= 1, got {m}")]
    InvalidDimension { m: usize },

    /// Attempted to insert a vertex into a simplex already containing it.
    #[error("vertex {vertex} is already a member of {simplex}")]
    InvalidInsertion { vertex: usize, simplex: VertexSet },

    /// A vector handed to a cohomology projection is not in the kernel of the
    /// outgoing differential.
    #[error("vector is not a cocycle in block {block} at degree {degree}")]
    NotACocycle { block: VertexSet, degree: usize },

    /// Operands do not belong together (different ground complexes, different
    /// polygons, coordinate vectors of the wrong shape, …).
    #[error("mismatched operands: {0}")]
    Mismatch(String),

    /// A parameter fell outside its documented range.
    #[error("parameter {n} is outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },

    /// Input JSON could not be parsed into a complex description.
    #[error("malformed complex JSON: {0}")]
    Parse(String),

    /// An internal consistency check failed; this indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
