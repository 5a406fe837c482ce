//! Tridiagonal data types, Givens factorizations, the dense Jacobi oracle and
//! Lanczos reconstruction.

pub mod dense;
pub mod givens;
pub mod lanczos;
pub mod tridiag;

pub use dense::{dense_eig, lu_solve, DenseMatrix, Eigen, SymmetricDense};
pub use givens::{
    almost_invertible, qr_plain, qr_star, rq_star, Givens, OrthogonalFactor, PlainQr,
    UpperTriangularBand,
};
pub use lanczos::{
    jacobi_from_last_components, lanczos_from_spectrum, spectral_data, spectral_data_last,
};
pub use tridiag::{SignMatrix, SymTridiag};

use crate::error::Result;

/// Ascending eigenvalues of `T` from the dense oracle.
pub fn eigenvalues(t: &SymTridiag) -> Result<Vec<f64>> {
    Ok(dense_eig(&SymmetricDense::from_lower(&t.to_dense()))?.values)
}

/// `f(T) = V diag(values) V^T`, with `values[j]` attached to the `j`-th
/// smallest eigenvalue of `T`.
pub fn matrix_function(t: &SymTridiag, values: &[f64]) -> Result<SymmetricDense> {
    dense::matrix_function_dense(&SymmetricDense::from_lower(&t.to_dense()), values)
}
