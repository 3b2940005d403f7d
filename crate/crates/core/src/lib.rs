//! Exact verification engine for the even-dimensional generalized
//! MICZ-Kepler problem.
//!
//! The symbolic layer works over the Gaussian rationals; pointwise checks are
//! generic over an evaluation field, either the exact quadratic extension
//! [`ExactValue`] or double-precision [`FloatValue`].

pub mod clifford;
pub mod diffop;
pub mod error;
pub mod matrix;
pub mod micz;
pub mod radial;
pub mod reps;
pub mod runner;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type Gaussian = num_complex::Complex<Rational>;
/// `a + b√s` with rational parts.
pub type QuadExtValue = scalar::QuadExt<Rational>;
/// `a + b√s` with Gaussian-rational parts; the exact evaluation field.
pub type ExactValue = scalar::QuadExt<Gaussian>;
pub type FloatValue = num_complex::Complex64;
/// Coefficient expressions with Gaussian-rational content.
pub type Expr = scalar::ScalarExpr<Gaussian>;
