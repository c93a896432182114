//! Scalar traits shared by the generic polynomial and elimination code.

use std::fmt::{Debug, Display};
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Coefficient field for [`crate::sympoly::MultiPoly`].
///
/// Exact types (`BigRational`, `Ratio<i64>`) are the intended instances; the
/// identities in this crate are only meaningful over exact arithmetic.
pub trait Scalar: Signed + Clone + FromPrimitive + Debug + Display {}

impl<T> Scalar for T where T: Signed + Clone + FromPrimitive + Debug + Display {}

/// Euclidean ring used by fraction-free elimination.
pub trait EuclideanInt: Integer + Signed + Clone + Debug {}

impl<T> EuclideanInt for T where T: Integer + Signed + Clone + Debug {}
