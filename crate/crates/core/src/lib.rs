//! Exact Bernstein–Sato polynomial (b-function) toolkit for Vandermonde
//! determinants and Coxeter arrangement discriminants.
//!
//! Everything is computed over exact rationals. The polynomial and
//! linear-algebra layers are generic over their scalar ring; the aliases
//! below fix the concrete types used by the formulas and the CLI.

pub mod bfun;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod linalg;
pub mod partitions;
pub mod ratfactor;
pub mod scalar;
pub mod sympoly;
pub mod weyl;

pub use error::{Error, Result};
pub use ratfactor::FactoredBPoly;

/// Exact rational number, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Sparse multivariate polynomial with rational coefficients.
pub type QPoly = sympoly::MultiPoly<Rational>;

/// Matrix of rational polynomials.
pub type QPolyMatrix = sympoly::PolyMatrix<Rational>;

/// Build a rational from machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
