use alloc::vec::Vec;

use num_complex::Complex64;

use super::eigen::min_eigenvalue;
use super::matrix::{ComplexMatrix, ALGEBRAIC_TOL, ONE};
use crate::error::{Error, Result};

/// Four-qubit register dimension.
pub const DIM: usize = 16;

/// Lower bound accepted for the smallest eigenvalue of a density matrix.
pub const PSD_TOL: f64 = -1e-10;

/// Tolerance for traces and entries after operator-sum accumulation.
pub const CHANNEL_TOL: f64 = 1e-10;

/// State of the four-qubit register; basis index bit 3 is player 1, bit 0 is player 4.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Wraps a matrix without checking the density invariants; see [`validate_density`].
    pub fn from_matrix(m: ComplexMatrix) -> Self {
        Self(m)
    }

    /// `|index><index|` on the 16-dimensional register.
    pub fn basis_state(index: usize) -> Result<Self> {
        if index >= DIM {
            return Err(Error::InvalidArgument("basis index out of range"));
        }
        Ok(Self(ComplexMatrix::basis_outer(DIM, index, index)))
    }

    /// Projector onto a normalised copy of `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::InvalidArgument("zero state vector"));
        }
        let n = psi.len();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = psi[i] * psi[j].conj() / norm2;
            }
        }
        Ok(Self(m))
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix::identity(DIM).scale_real(1.0 / DIM as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Computational-basis outcome probabilities (real part of the diagonal).
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0[(i, i)].re).collect()
    }
}

/// Result of checking the density-matrix invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub hermiticity_residual: f64,
    pub trace_residual: f64,
    pub min_eigenvalue: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.hermiticity_residual < ALGEBRAIC_TOL
            && self.trace_residual < ALGEBRAIC_TOL
            && self.min_eigenvalue >= PSD_TOL
    }
}

pub fn validate_density(rho: &DensityMatrix) -> ValidationReport {
    let m = rho.matrix();
    ValidationReport {
        hermiticity_residual: m.hermiticity_residual(),
        trace_residual: (m.trace() - ONE).norm(),
        min_eigenvalue: min_eigenvalue(m),
    }
}

/// `U ρ U†` for a unitary `U`.
pub fn conjugate(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    if u.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: u.dim(),
        });
    }
    if !u.is_unitary() {
        return Err(Error::InvalidArgument(
            "conjugating operator is not unitary",
        ));
    }
    let left = u.matmul(rho.matrix())?;
    Ok(DensityMatrix(left.matmul(&u.adjoint())?))
}
