//! Exact symbolic engine for quantum matrix algebras.
//!
//! The crate implements, over the rationals with symbolic parameters:
//! - [`laurent`]: multivariate Laurent polynomials, the coefficient ring for
//!   everything else (`q`, or `l` and `pij` in the multiparameter case).
//! - [`ncalg`]: free-algebra elements with Laurent coefficients and a
//!   terminating rewriting engine that computes normal forms with respect to
//!   an ordered PBW-style rule system.
//! - [`qmatrix`]: the one-parameter quantum matrix algebra, its localization
//!   at the top-left entry, the quantum determinant, cofactors, Laplace
//!   expansions, comultiplication, and row reduction.
//! - [`grassmann`]: the quantum plane / quantum Grassmannian contexts used as
//!   an independent route to the quantum determinant.
//! - [`multiparam`]: the multiparameter deformation, its determinant, minors,
//!   expansions, grading, cocycles, and the twist relating it to the
//!   one-parameter algebra.
//! - [`dieudonne`]: Bruhat normal forms over division rings, the Dieudonne
//!   determinant, and the pivot-chain factorization of quantum determinants.
//! - [`text`]: parsing for the canonical textual forms of coefficients and
//!   noncommutative polynomials.

pub mod dieudonne;
pub mod error;
pub mod grassmann;
pub mod laurent;
pub mod multiparam;
pub mod ncalg;
pub mod perm;
pub mod qmatrix;
pub mod relations;
pub mod report;
pub mod text;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, ParamSpace, Rational};
pub use ncalg::{Context, GenFamily, GeneratorId, Morphism, NcPoly, ReductionStrategy, Word};
