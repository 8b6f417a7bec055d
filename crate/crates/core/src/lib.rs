//! Exact arithmetic for integral octonions and the objects built on them:
//! E8 shells, Bhargava cubes and imaginary quadratic class groups, the
//! exceptional Jordan algebra, theta-lift Fourier coefficients and
//! W(E8)-invariant polynomials.
//!
//! The algebraic types are generic over a [`Ring`] scalar; the aliases below
//! name the instantiations used throughout.
#![allow(clippy::needless_range_loop)]

pub mod cubes;
pub mod error;
mod fast;
pub mod jordan;
pub mod lattice;
pub mod linalg;
pub mod octonion;
pub mod scalar;
pub mod theta;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::{Rational, Ring};

/// Element of Coxeter's order, in order-basis coordinates.
pub type IntOctonion = octonion::Octonion<i64>;
/// Element of the rational octonions, in order-basis coordinates.
pub type RatOctonion = octonion::Octonion<Rational>;
/// Element of the split order (pairs of integer 2x2 matrices).
pub type IntSplitOctonion = octonion::SplitOctonion<i64>;
/// Element of the integral exceptional Jordan algebra.
pub type IntJordan = jordan::JordanElement<i64>;
pub type IntFreudenthal = jordan::FreudenthalElement<i64>;
