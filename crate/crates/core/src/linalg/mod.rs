//! Exact linear algebra and cochain complexes.
//!
//! Indexing is cohomological throughout: differentials raise degree.
//! Homological objects are stored in negated degrees by their callers.

mod complex;
mod field;
mod filtered;
mod involution;
mod matrix;
mod sparse;

pub use complex::{cone, Bicomplex, ChainComplex, ChainMap, Cohomology};
pub use field::Field;
pub use filtered::{canonical_span, FilteredComplex};
pub use involution::{
    eigen_dims, eigen_subcomplex, iota_invariants, realify_from_real, realify_linear, realify_semilinear,
    restrict_scalars, SemilinearInvolution,
};
pub use matrix::{bareiss_rank, Gaussian, Matrix};
pub use sparse::{sparse_rank, SparseMatrix, DENSITY_THRESHOLD};
