//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("monomials of unequal total degree ({0} vs {1})")]
    MixedDegree(u32, u32),
    #[error("variable index {index} out of range 1..={n}")]
    WrongArity { index: usize, n: usize },
    #[error("point has {got} coordinates but the form has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("forms live in different dimensions ({0} vs {1} variables)")]
    DimensionMismatch(usize, usize),
    #[error("degree mismatch ({0} vs {1})")]
    DegreeMismatch(u32, u32),
    #[error("ambient dimension must be at least 2 (got {0})")]
    DimensionTooSmall(usize),
    #[error("level {level} is not a valid harmonic level for degree {degree}")]
    BadLevel { level: u32, degree: u32 },
    #[error("vector is not an exact unit vector")]
    NotUnitVector,
    #[error("zero projection at level {0}; drop that level first")]
    ZeroProjection(u32),
    #[error("need m >= k >= 1 (got k={k}, m={m})")]
    BadDegrees { k: u32, m: u64 },
    #[error("epsilon must lie in (0, 1]")]
    BadEpsilon,
    #[error("form is not normalized to integral 1")]
    NotNormalized,
    #[error("sup norm must exceed 1 to reflect through the center")]
    DegenerateMax,
    #[error("form has zero integral on the sphere")]
    ZeroIntegral,
    #[error("term budget of {budget} terms exceeded")]
    TermBudgetExceeded { budget: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot divide by a non-constant form")]
    NonScalarDivisor,
}
