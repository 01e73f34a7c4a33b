//! Exact log canonical thresholds, minimal log discrepancies and Newton
//! polygon invariants of plane curve germs.
//!
//! Every quantity is an exact rational. Points with irrational coordinates
//! are handled by dynamic evaluation over towers of simple extensions of
//! the rationals; see [`algebra::tower`].

pub mod algebra;
pub mod blowup;
pub mod error;
pub mod formulas;
pub mod lctpoly;
pub mod newton;
pub mod resolve;
pub mod result;

pub use algebra::{AlgNum, GermDivisor, Poly2, Rational, Scalar, WeightVector};
pub use error::Error;
pub use result::{CertKind, LctResult, MldResult, Witness};

/// Polynomials with rational coefficients.
pub type QPoly = Poly2<Rational>;
/// Polynomials over a dynamic-evaluation tower.
pub type AlgPoly = Poly2<AlgNum>;
