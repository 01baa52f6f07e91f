//! Exact computation of the Hodge-theoretic and cyclic-homological
//! invariants attached to finite-dimensional algebras over the rationals,
//! and dimension-level verification of the regulator triangle relating
//! algebraic K-theory, the non-commutative Deligne complex and its dual.
//!
//! Everything is exact: rationals, Gaussian-rational rational functions
//! carrying a formal `2πi`, and fraction-free elimination.
//!
//! Module map:
//!
//! * [`scalars`]: rationals, polynomials, Sturm counts, factorization, the
//!   conjugation-closed formal field.
//! * [`linalg`]: matrices, ranks, cochain complexes, cones, totalization,
//!   filtrations and semilinear involutions.
//! * [`hodge`]: Hodge complexes, Tate twists, the two Hom-bicomplexes.
//! * [`fdalgebra`]: structure-constant algebras and their Wedderburn data.
//! * [`cyclic`]: normalized Hochschild complex, HH/HC/HC⁻/HP tables.
//! * [`verify`]: rank oracles and the triangle bookkeeping.

pub mod cyclic;
pub mod error;
pub mod fdalgebra;
pub mod hodge;
pub mod linalg;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
pub use fdalgebra::{FdAlgebra, WedderburnData};
pub use hodge::HodgeComplex;
pub use linalg::{ChainComplex, Field, Matrix, SparseMatrix};
pub use scalars::{ConjElem, ConjField, Rational, UniPoly};
