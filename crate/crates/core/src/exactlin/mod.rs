//! Exact linear algebra over the rationals and prime fields.
//!
//! Everything above this module reduces to ranks, kernels and quotients of
//! matrices whose entries are exact field elements. Dense matrices cover the
//! small systems (structure constants, Hom spaces); the sparse [`Echelon`]
//! handles the large, very sparse differentials of bar complexes and
//! truncated Hom complexes.

mod dense;
mod field;
mod sparse;
mod subspace;

use thiserror::Error;

pub use dense::Mat;
pub use field::{as_small_integer, parse_rational, Field, FieldSpec, PrimeField, Rationals};
pub use sparse::{
    sparse_axpy, sparse_collect, sparse_from_dense, sparse_rank, sparse_scale, sparse_to_dense, Echelon, Inserted,
    SparseMat, SparseVec,
};
pub use subspace::{quotient_dim, Basis, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("basis vector {index} of the smaller subspace is not contained in the larger one")]
    NotContained { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("bad scalar: {0}")]
    BadScalar(String),
}

/// Reduced row echelon form.
pub fn rref<F: Field>(m: &Mat<F>) -> Mat<F> {
    m.rref()
}

/// Canonical basis of the right null space.
pub fn kernel_basis<F: Field>(m: &Mat<F>) -> Subspace<F> {
    m.kernel_basis()
}
