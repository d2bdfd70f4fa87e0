use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures of the exact-geometry pipeline.
///
/// Variants fall into two groups: input validation (the data does not
/// describe the object it claims to) and precondition failures (the
/// object is valid but the requested operation does not apply to it).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generators span a {found}-dimensional space, need {expected}")]
    NotFullDimensional { expected: usize, found: usize },

    #[error("cone is not pointed")]
    NotPointed,

    #[error("polytope has non-integer vertex {0}")]
    NonLatticeVertex(String),

    #[error("empty point set")]
    EmptyPolytope,

    #[error("origin is not an interior point of the polytope")]
    OriginNotInterior,

    #[error("polygon required: polytope has dimension {dim} in rank {rank}")]
    PolygonRequired { rank: usize, dim: usize },

    #[error(
        "not smooth in codimension 2: 2-face spanned by rays {0} and {1} has elementary divisors other than (1,1)"
    )]
    NotSmoothInCodim2(usize, usize),

    #[error("cone is not Q-Gorenstein: rays lie on no common affine hyperplane")]
    NotQGorenstein,

    #[error("edge {index} of the polygon is not primitive (edge vector {vector:?})")]
    NonPrimitiveEdge { index: usize, vector: Vec<i64> },

    #[error("no face carries the degree: {0}")]
    NoQualifyingFace(String),

    #[error("degree {0:?} is not primitive")]
    NonPrimitiveDegree(Vec<i64>),

    #[error("degree {0:?} is not in the dual cone")]
    DegreeOutsideDualCone(Vec<i64>),

    #[error("slice of the cone at degree {0:?} is not compact")]
    NonCompactSlice(Vec<i64>),

    #[error("parameter vector is not in the summand cone: {0}")]
    NotInSummandCone(String),

    #[error("normal fan of the polytope does not refine that of the summand at vertex {0}")]
    FanNotRefined(usize),

    #[error("decomposition is invalid: {0}")]
    InvalidDecomposition(String),

    #[error("vertex condition fails at vertex {0}")]
    VertexCondition(usize),
}

impl Error {
    /// Whether the error says the input data is malformed, as opposed to a
    /// valid object on which the operation does not apply.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::ZeroVector
                | Error::DimensionMismatch { .. }
                | Error::NotFullDimensional { .. }
                | Error::NotPointed
                | Error::NonLatticeVertex(_)
                | Error::EmptyPolytope
                | Error::PolygonRequired { .. }
        )
    }
}
