use thiserror::Error;

/// Crate-wide error type.
///
/// Geometry validation, spectral assembly, root isolation, and the oracle
/// solvers all report through this enum so that errors propagate cleanly
/// across module boundaries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {got}")]
    TooFewVertices { got: usize },

    #[error("edge {index} has length {length:e}, below the degeneracy threshold")]
    ZeroLengthEdge { index: usize, length: f64 },

    #[error("SelfIntersection: edges {edge_a} and {edge_b} intersect away from a shared vertex")]
    SelfIntersection { edge_a: usize, edge_b: usize },

    #[error("vertex {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("coordinate {coord} of vertex {index} is not finite")]
    NonFiniteCoordinate { index: usize, coord: usize },

    #[error("star graph needs at least 2 leaves, got {got}")]
    TooFewLeaves { got: usize },

    #[error("star edges {i} and {j} point in the same direction, so one contains the other")]
    NestedStarEdge { i: usize, j: usize },

    #[error("length {index} must be positive and finite, got {length}")]
    NonPositiveLength { index: usize, length: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("spectrum has no eigenvalue above the cluster tolerance")]
    AllZeroSpectrum,

    #[error("expected {expected} vertex values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parameter out of range: {what}")]
    ParameterOutOfRange { what: String },

    #[error("root-scan grid too coarse: isolated {found} of {expected} eigenvalues")]
    GridTooCoarse { found: usize, expected: usize },

    #[error("characteristic-polynomial root count mismatch: {found} of {expected}")]
    RootCountMismatch { found: usize, expected: usize },
}

impl Error {
    pub(crate) fn out_of_range(what: impl Into<String>) -> Self {
        Error::ParameterOutOfRange { what: what.into() }
    }
}
