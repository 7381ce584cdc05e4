//! Exact normal forms for quasi-homogeneous singular 1-forms in the plane.

pub mod blowup;
pub mod cli;
pub mod io;
pub mod linalg;
pub mod normalizer;
pub mod oneform;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod spectral;

pub use parse::{parse_poly, parse_scalar, ParseError};
pub use poly::{BivPoly, GradedSlices, PolyError, UniPoly};
pub use scalar::{Field, RatFunc, Rational, ScalarError};
