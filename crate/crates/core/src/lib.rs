//! Exact computer algebra for dynamical weight functions, stable envelopes,
//! dynamical R-matrices and the rational dynamical quantum group acting on
//! the localized equivariant cohomology of `T*Gr_k(Cⁿ)`.

pub mod cohomology;
pub mod combinatorics;
pub mod context;
pub mod dynqg;
pub mod error;
pub mod rmatrix;
pub mod suites;
pub mod symalg;
pub mod weightfns;
pub mod xibasis;

pub use error::{Error, Result};

/// Arbitrary-precision rational coefficients.
pub type Rational = num_rational::BigRational;
pub type Poly = symalg::Polynomial<Rational>;
pub type RatF = symalg::RationalFunction<Rational>;
pub type RatMatrix = symalg::Matrix<Rational>;
pub type Laurent = symalg::LaurentSeries<Rational>;

/// Floating-point instantiations, for quick numerical experiments.
pub type PolyF64 = symalg::Polynomial<f64>;
pub type RatFF64 = symalg::RationalFunction<f64>;
