//! Exact arithmetic: rationals, sparse Laurent polynomials, rational
//! functions with factored denominators, and truncated power series.

pub mod cyclotomic;
pub mod gcd;
pub mod monomial;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod text;
pub mod var;

pub use monomial::Monomial;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use series::{series_expand, Caps, TruncatedSeries};
pub use var::{Group, Var};

/// Coefficient field of every polynomial.
pub type Scalar = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("non-expandable pole: {0}")]
    NonExpandablePole(String),
    #[error("cap violation: {0}")]
    CapViolation(String),
    #[error("product does not truncate: {0}")]
    NonTruncating(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("length error: {0}")]
    Length(String),
    #[error("cell out of range: {0}")]
    CellOutOfRange(String),
    #[error("incompatible caps")]
    IncompatibleCaps,
    #[error("{0}")]
    Invalid(String),
}
