//! Exact coefficient arithmetic.
//!
//! Scalars live in `Q[α, α⁻¹] / (m·α^(m+n) − n)` tensored with monomials `T^r`
//! for rational `r`, i.e. finite sums inside a Novikov-type ring with a
//! single formal parameter `T`. The holonomy generator `α` can also be left
//! free (a Laurent variable) or be absent altogether, see [`AlphaMode`].
//!
//! [`LaurentPoly`] is a sparse Laurent polynomial in at most two formal
//! variables with [`Scalar`] coefficients. Every value is kept in a unique
//! normal form, so equality is structural.

mod alpha;
mod poly;
mod render;
mod scalar;

pub use alpha::{AlphaMode, AlphaRelation};
pub use poly::{LaurentPoly, MAX_VARIABLES};
pub use render::{QConvention, Renderer};
pub use scalar::Scalar;

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num / den`.
///
/// # Panics
/// If `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("alpha absent: alpha^{0} requested from a scalar without a holonomy generator")]
    AlphaAbsent(i64),
    #[error("zero scalar has no valuation")]
    ZeroScalar,
    #[error("alpha relations differ: {0} vs {1}")]
    RelationMismatch(AlphaRelation, AlphaRelation),
    #[error("weights of an alpha relation must be positive, got m = {m}, n = {n}")]
    InvalidRelation { m: i64, n: i64 },
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("at most {MAX_VARIABLES} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentArity { expected: usize, got: usize },
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("expected {expected} evaluation points, got {got}")]
    PointArity { expected: usize, got: usize },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
}
