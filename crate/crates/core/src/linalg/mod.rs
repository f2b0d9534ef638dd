//! Fixed-size dense complex linear algebra for a four-qubit register.

mod density;
mod eigen;
mod kraus;
mod matrix;

pub use density::{
    conjugate, validate_density, DensityMatrix, ValidationReport, CHANNEL_TOL, DIM, PSD_TOL,
};
pub use eigen::{hermitian_eigenvalues, min_eigenvalue};
pub use kraus::{apply_kraus, verify_completeness, KrausSet, PRUNE_WEIGHT};
pub use matrix::{pauli, tensor, tensor_all, ComplexMatrix, ALGEBRAIC_TOL, I, ONE, ZERO};
