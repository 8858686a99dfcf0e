//! Exact convex-geometric invariants of the cone of nonnegative homogeneous
//! forms and the cone of sums of powers of linear forms.
//!
//! Everything that can be exact is exact: coefficients are arbitrary-precision
//! rationals, integration over the unit sphere is closed-form, and the
//! ellipsoid/certificate comparisons are rational number comparisons. Floating
//! point appears only in the numeric sup-norm fallback for forms without axial
//! symmetry, and every such value is flagged as a best-effort lower bound.

pub mod cone;
pub mod error;
pub mod harmonic;
pub mod numeric;
pub mod operator;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod sample;
pub mod sphere;
pub mod univariate;

pub use error::Error;
pub use poly::{Exponent, HomoForm};
pub use rational::Rat;
