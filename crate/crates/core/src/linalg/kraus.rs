use alloc::vec::Vec;

use num_complex::Complex64;

use super::density::{DensityMatrix, CHANNEL_TOL};
use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Operators whose squared Frobenius weight is below this are dropped.
pub const PRUNE_WEIGHT: f64 = 1e-300;

/// Nonzero pattern of one operator, used when it is sparse enough to beat
/// two dense products.
#[derive(Debug, Clone)]
struct Sparse {
    entries: Vec<(usize, usize, Complex64)>,
}

/// A list of Kraus operators with their weights folded in.
///
/// The completeness residual `max |Σ A†A − I|` is computed once at
/// construction and carried with the set.
#[derive(Debug, Clone)]
pub struct KrausSet {
    dim: usize,
    operators: Vec<ComplexMatrix>,
    sparse: Vec<Option<Sparse>>,
    residual: f64,
}

impl KrausSet {
    /// Builds a set and rejects it if completeness fails by more than `1e-10`.
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let set = Self::new_unchecked(operators)?;
        if set.residual > CHANNEL_TOL {
            return Err(Error::Construction {
                residual: set.residual,
            });
        }
        Ok(set)
    }

    /// Builds a set without enforcing completeness. Operator-sum application
    /// still refuses an incomplete set.
    pub fn new_unchecked(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = operators
            .first()
            .map(ComplexMatrix::dim)
            .ok_or(Error::InvalidArgument("empty kraus set"))?;
        if let Some(bad) = operators.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        let operators: Vec<ComplexMatrix> = operators
            .into_iter()
            .filter(|m| m.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>() >= PRUNE_WEIGHT)
            .collect();
        if operators.is_empty() {
            return Err(Error::InvalidArgument(
                "every kraus operator has zero weight",
            ));
        }
        let residual = completeness_residual(&operators);
        let sparse = operators.iter().map(sparsify).collect();
        Ok(Self {
            dim,
            operators,
            sparse,
            residual,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(alloc::vec![ComplexMatrix::identity(dim)]).expect("identity is complete")
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Max entrywise `|Σ A†A − I|`, as computed at construction.
    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// Max entrywise `|Σ A†A − I|` over the set.
pub fn verify_completeness(ks: &KrausSet) -> f64 {
    completeness_residual(ks.operators())
}

fn completeness_residual(ops: &[ComplexMatrix]) -> f64 {
    let n = ops[0].dim();
    let mut acc = ComplexMatrix::zeros(n);
    for a in ops {
        // (A†A)[i,j] = Σ_k conj(A[k,i]) A[k,j]
        for k in 0..n {
            for i in 0..n {
                let aki = a[(k, i)].conj();
                if aki == ZERO {
                    continue;
                }
                for j in 0..n {
                    acc[(i, j)] += aki * a[(k, j)];
                }
            }
        }
    }
    acc.max_abs_diff(&ComplexMatrix::identity(n))
        .expect("same dimension")
}

fn sparsify(m: &ComplexMatrix) -> Option<Sparse> {
    let n = m.dim();
    let entries: Vec<_> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter_map(|(r, c)| {
            let z = m[(r, c)];
            (z != ZERO).then_some((r, c, z))
        })
        .collect();
    // nnz² multiply-adds against 2n³ for the dense route.
    (entries.len() * entries.len() < 2 * n * n * n).then_some(Sparse { entries })
}

/// `Σ_k A_k ρ A_k†`.
pub fn apply_kraus(rho: &DensityMatrix, ks: &KrausSet) -> Result<DensityMatrix> {
    if ks.residual > CHANNEL_TOL {
        return Err(Error::IncompleteKraus {
            residual: ks.residual,
        });
    }
    let n = rho.dim();
    if ks.dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: ks.dim,
        });
    }
    let src = rho.matrix();
    let mut out = ComplexMatrix::zeros(n);
    for (op, sparse) in ks.operators.iter().zip(&ks.sparse) {
        match sparse {
            Some(sp) => {
                for &(i, k, a) in &sp.entries {
                    for &(j, l, b) in &sp.entries {
                        out[(i, j)] += a * src[(k, l)] * b.conj();
                    }
                }
            }
            None => {
                let term = op.matmul(src)?.matmul(&op.adjoint())?;
                out = out.add(&term)?;
            }
        }
    }
    Ok(DensityMatrix::from_matrix(out))
}
