use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cone is not strictly convex")]
    NotStrictlyConvex,

    #[error("cone is not a face of the ambient cone")]
    NotAFace,

    #[error("unknown color `{0}`")]
    UnknownColor(String),

    #[error("invalid spherical data: {0}")]
    InvalidSphericalData(String),

    #[error("invalid colored fan: {0}")]
    InvalidFan(String),

    #[error("colored cone is not a member of the fan")]
    NotInFan,

    #[error("coordinate {0} is zero")]
    ZeroCoordinate(usize),

    #[error("zero pattern of the point matches no cone of the fan")]
    ZeroPatternOutsideFan,

    #[error("chart cone is not smooth")]
    NonSmoothChart,

    #[error("point outside the evaluator's domain: {0}")]
    OutsideDomain(String),

    #[error("unknown registry entry `{0}`")]
    UnknownEntry(String),

    #[error("unknown fan `{0}`")]
    UnknownFan(String),

    #[error("unknown character `{0}`")]
    UnknownCharacter(String),

    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    #[error("lambda exponent must be nonnegative")]
    NegativeMu,

    #[error("series in coordinate {0} has no finite inverse")]
    NotInvertible(usize),

    #[error("monomial of negative total degree is unbounded at lambda = 0")]
    NegativeDegreeAtInfinity,

    #[error("lattice point is not in the dual cone")]
    NotInDualCone,

    #[error("point is not in the cone")]
    PointOutsideCone,

    #[error("direction lies in the relative interior of no stratum")]
    NoStratum,

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("generic translates vanished at every sampled group element")]
    SamplingDegenerate,
}

pub type Result<T> = std::result::Result<T, Error>;
