//! Exact arithmetic substrate: rationals, sparse multivariate polynomials,
//! dense rational matrices and series over powers of `1 - t^2`.

pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod series;

pub use matrix::{subspace_intersection, subspace_sum, EchelonBasis, RationalMatrix};
pub use poly::{monomials_of_degree, GradedPoly, Monomial, PolyOp};
pub use scalar::Scalar;
pub use series::{SeriesOp, SeriesQ};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("image {0} of a linear substitution is not a linear form")]
    NonlinearImage(usize),
    #[error("denominator is not a power of (1 - t^2)")]
    Denominator,
    #[error("invalid rational {0:?}")]
    Parse(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}
