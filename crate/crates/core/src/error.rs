use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polytope is unbounded")]
    UnboundedPolytope,
    #[error("polytope is not full-dimensional")]
    DegeneratePolytope,
    #[error("linear map is singular")]
    SingularMap,
    #[error("half-space cut leaves no interior")]
    EmptyIntersection,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid facet: {0}")]
    InvalidFacet(String),
    #[error("offset {0} lies outside (0, 1]")]
    InvalidOffset(String),
    #[error("polytope is not anticanonical: some offset differs from 1")]
    NotAnticanonical,
    #[error("pair is not K-semistable")]
    NotSemistable,
    #[error("origin is not an interior point of the polytope")]
    OriginNotInterior,
    #[error("volume must be positive")]
    NonpositiveVolume,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("simplex difference is empty: need a > b")]
    EmptyBody,
    #[error("no root in the admissible range")]
    NoRootInRange,
    #[error("bisection failed to converge: {0}")]
    NonConvergence(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("weights do not define a log Fano pair (sum >= n + 1)")]
    NotFano,
    #[error("target degree must lie in (0, (n+1)^n]")]
    InvalidDegree,
    #[error("coefficient list is invalid: {0}")]
    InvalidSpec(String),
    #[error("Hurwitz zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("anticanonical degree V vanishes")]
    ZeroVolume,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Whether the error stems from a numerical procedure rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence(_) | Error::NoRootInRange)
    }
}
