//! Dense matrices and the spectral kernels behind the lifts.
//!
//! Exact matrices (Gaussian-rational entries) are used wherever the
//! computation is algebraic; eigenvalue-based routines work in double
//! precision with an explicit tolerance.

pub mod matrix;
pub mod random;
pub mod realify;
pub mod spectral;
pub mod split;

pub use matrix::{
    is_unitary, orthogonality_residual, parse_complex_matrix, parse_exact_matrix, symmetry_residual,
    unitarity_residual, ComplexMatrix, ExactMatrix, Matrix, MatrixJson, RealMatrix,
};
pub use realify::{realify, sigma_flip};
pub use spectral::{symmetric_unitary_sqrt, unitary_eigen, SymmetricSqrt, UnitaryEigen};
pub use split::{complexify_split, ComplexifiedSplit, RealStructure};

/// Default tolerance for floating-point routines.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Environment variable overriding [`DEFAULT_TOL`] in the CLI.
pub const TOL_ENV: &str = "REALSPIN_TOL";
