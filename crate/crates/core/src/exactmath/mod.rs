//! Exact arithmetic: rationals, multivariate polynomials over the rationals,
//! rational functions in canonical form, and generic specialization points
//! for the torus weights.

mod gcd;
mod point;
mod poly;
mod ratfn;
mod rational;
mod scalar;

pub use gcd::poly_gcd;
pub use point::{sample_weight_point, WeightPoint};
pub use poly::{poly_arith, Monomial, MultiPolynomial, PolyOp};
pub use ratfn::{ratfn_canonicalize, ratfn_eval, RationalFunction};
pub use rational::{rat_normalize, Rational};
pub use scalar::Scalar;
