//! Exact algebra for the principal-minor map of symmetric matrices.
//!
//! The crate covers four layers:
//!
//! * [`index`] and [`minor_map`]: binary multi-indices, minor vectors, symmetric
//!   matrices and the map `[A, t] -> [t^(n-|I|) det A_I]`.
//! * [`poly`]: sparse polynomials in the `2^n` tensor coordinates `X^I`, with the
//!   `sl(2)^n` raising/lowering derivations, the group action and polarization.
//! * [`rep`] and [`hyperdet`]: symmetric-group characters, isotypic multiplicities,
//!   weight bases, and the hyperdeterminantal module built from Cayley's
//!   2x2x2 hyperdeterminant.
//! * [`membership`]: deciding whether a vector is the vector of principal
//!   minors of a symmetric matrix, and reconstructing such a matrix.
//!
//! All algebraic routines use exact rational arithmetic.

pub mod error;
pub mod hyperdet;
pub mod index;
pub mod linalg;
pub mod membership;
pub mod minor_map;
pub mod poly;
pub mod random;
pub mod rep;

pub use error::{Error, Result};
pub use index::{BinaryIndex, MinorVector, Rational, SymmetricMatrix, WeightVector};
pub use poly::{GroupElement, Monomial, TensorPolynomial};
