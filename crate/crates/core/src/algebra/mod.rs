//! Exact coefficient arithmetic and bivariate polynomials.

pub mod divisor;
pub mod parse;
pub mod poly2;
pub mod qbivar;
pub mod scalar;
pub mod tower;
pub mod upoly;

pub use divisor::{joint_components, GermDivisor};
pub use parse::{parse_poly, parse_poly_capped, DEFAULT_DEGREE_CAP};
pub use poly2::{Poly2, WeightVector};
pub use scalar::{fmt_rational, parse_rational, q, qi, Rational, Scalar};
pub use tower::{AlgNum, FieldTower, Split};
pub use upoly::UPoly;
