//! Dense complex linear algebra: matrices, Kronecker products, the
//! tridiagonal eigensolver and exponentials of skew-Hermitian generators.

mod eigen;
mod expm;
mod matrix;

pub use eigen::{eig_hermitian_tridiagonal, eig_hermitian_tridiagonal_with, TridiagonalEigen};
pub use expm::{expm_skew_hermitian, expm_skew_hermitian_with};
pub use matrix::{inner, kron, kron_vec, kron_with_limit, norm, norm_sqr, ComplexMatrix, C64, ONE, ZERO};
