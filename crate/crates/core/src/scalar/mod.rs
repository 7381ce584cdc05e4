//! Exact coefficient fields.
//!
//! Every algorithm in this crate is generic over [`Field`]. Two instantiations
//! ship with the crate:
//!
//! - [`Rational`]: arbitrary-precision rationals.
//! - [`RatFunc`]: rational functions in one transcendental parameter `t`
//!   over the rationals. Values that carry `t` are provably irrational, which
//!   makes "index is not rational" an exactly decidable predicate.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;

mod ratfunc;
mod rational;
mod roots;

pub use ratfunc::RatFunc;
pub use rational::Rational;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact field with canonical representatives.
///
/// Equality of two values is equality of their canonical encodings. The
/// arithmetic methods take references so generic code never has to clone
/// big-integer payloads just to add two numbers.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short name used on the command line and in reports.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &BigRational) -> Self;
    /// The transcendental parameter `t`, if the field has one.
    fn parameter() -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;

    /// Returns the value as a rational number when it lies in the prime field.
    fn to_rational(&self) -> Option<BigRational>;

    /// A fixed total order on canonical encodings. For the rationals this is
    /// the numeric order; other fields may use any deterministic order.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// Distinct roots lying in the field of the univariate polynomial with
    /// coefficients `coeffs` (ascending powers). The zero polynomial has no
    /// reported roots.
    fn roots(coeffs: &[Self]) -> Vec<Self>;

    fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// True iff the value lies in the prime field.
    fn is_rational_constant(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Parses the scalar grammar: integers, fractions, and (when the field
    /// has a parameter) expressions in `t` built with `+ - * / ^` and
    /// parentheses.
    fn parse(text: &str) -> Result<Self, ParseError> {
        crate::parse::parse_scalar(text)
    }

    /// Integer power, `exp` may be negative for nonzero values.
    fn pow(&self, exp: i64) -> Result<Self, ScalarError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}
