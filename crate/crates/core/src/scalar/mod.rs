//! Exact coefficient field and evaluation.

pub mod expr;
pub mod frac;
pub mod mono;
pub mod point;
pub mod poly;
pub mod quad;
pub mod ring;

pub use expr::{normalize, CompiledExpr, FloatPoint, RawExpr, ScalarExpr};
pub use frac::Frac;
pub use mono::Mono;
pub use point::{random_points, RationalPoint};
pub use poly::Poly;
pub use quad::QuadExt;
pub use ring::{Coeff, Ring, Scalar};
