use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot build a line through two equal points")]
    EqualPoints,

    #[error("cannot intersect a line with itself")]
    IdenticalLines,

    #[error("homogeneous coordinates must not all be zero")]
    ZeroTriple,

    #[error("affine lines require a nonzero slope")]
    ZeroSlope,

    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("input set must be nonempty")]
    EmptyInput,

    #[error("operation requires sets without the element zero")]
    ZeroElement,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("exhaustive energy count refused: {size} lines exceeds cap {cap}")]
    NaiveCapExceeded { size: usize, cap: usize },

    #[error("trace is infinite: {0} points of the set lie on the target line")]
    InfiniteTrace(usize),

    #[error("projective transform must be invertible")]
    SingularTransform,

    #[error("generator spec collapses to fewer than {requested} distinct values")]
    DegenerateSpec { requested: u64 },

    #[error("exponent fit needs at least three samples with strictly increasing sizes")]
    InsufficientSamples,

    #[error("parse error: {0}")]
    Parse(String),
}
