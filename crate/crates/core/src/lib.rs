//! Signed shifted-QR steps on real symmetric tridiagonal matrices.
//!
//! The crate covers the step map `F_s(T) = Q⋆ᵀ T Q⋆` and its inverse, the
//! Rayleigh, Wilkinson and mixed shift strategies, the geometry of deflation
//! sets (canonical projections and tubular coordinates), and diagnostics
//! that measure quadratic versus cubic deflation rates.
//!
//! Indices are 0-based. For an `n x n` matrix `b(T)` is the entry `(n-1, n-2)`
//! and eigenvalue `i` is the `i`-th smallest.

// `!(x > 0.0)` deliberately rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod linalg;
pub mod sampling;
pub mod strategy;

pub use error::{Error, Result};
pub use linalg::{SignMatrix, SymTridiag};
