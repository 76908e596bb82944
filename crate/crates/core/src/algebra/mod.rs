//! Exact arithmetic substrate: rationals, polynomials, rational functions,
//! Laurent series and linear algebra.

pub mod gcd;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod var;

pub use gcd::gcd;
pub use linalg::{det_exact, kernel_basis, rank, rref, Matrix};
pub use parse::{parse_poly, parse_rf, parse_scalar, parse_scalar_list};
pub use poly::{frac, int, scalar_string, Grading, Monomial, MultiPoly, Scalar};
pub use ratfunc::{RationalFunction, RF};
pub use series::{geometric, series_inverse, series_sqrt, LaurentSeries};
pub use var::Var;
