//! Exact octonion arithmetic and image classification for nonassociative
//! polynomials.
//!
//! The image of a multilinear polynomial on the octonions is one of `{0}`,
//! the scalars `F`, the pure octonions `V`, or all of `O`; which one is decided
//! from the finitely many evaluations on basis elements ([`classifier`]).
//! Semihomogeneous polynomials are handled through the ratio `‖v‖/a²`
//! ([`semihomog`]), and arbitrary polynomials on the Malcev algebra of pure
//! octonions through [`malcev`]. [`orbit`] builds the automorphisms that make
//! the classifications constructive.

pub mod algebra;
pub mod classifier;
pub mod corpus;
pub mod error;
pub mod identity;
mod linalg;
pub mod malcev;
pub mod orbit;
pub mod polynomial;
pub mod sampling;
pub mod scalar;
pub mod selfcheck;
pub mod semihomog;

pub use algebra::{Algebra, AlgebraParams, Eigenvalues, Octonion, StructureTable, TableEntry};
pub use classifier::{BasicEvaluation, ImageClass, Verdict};
pub use error::{Error, Result};
pub use polynomial::{parse, Polynomial, ProductKind, Word};
pub use scalar::{FieldMode, Rational, Scalar};
