//! Exact sparse polynomials and rational functions over a generic scalar
//! field, with the substitutions, Laurent expansions and linear algebra the
//! rest of the crate is built on.

pub mod factor;
pub mod json;
pub mod laurent;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod render;
pub mod scalar;
pub mod vars;

pub use laurent::LaurentSeries;
pub use matrix::Matrix;
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use render::Style;
pub use scalar::{int, Scalar};
pub use vars::{Var, VarTable};
