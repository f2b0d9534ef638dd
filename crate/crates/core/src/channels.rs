//! Four-qubit Kraus sets for the five noise channels, with a memory parameter
//! `mu` that interpolates between independent and fully correlated errors on
//! consecutive qubits.
//!
//! Pauli channels use the Markov-chained weights
//! `w(i1..i4) = α[i4] · Π_{m=1..3} ((1 − μ)·α[i_m] + μ·δ(i_m, i_{m+1}))`
//! on `σ_{i1} ⊗ σ_{i2} ⊗ σ_{i3} ⊗ σ_{i4}`. Amplitude damping mixes the
//! tensor-product channel (weight `1 − μ`) with a collective two-operator
//! channel that only damps the all-ground component (weight `μ`).

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{pauli, tensor_all, ComplexMatrix, KrausSet, DIM, PRUNE_WEIGHT};

pub use crate::linalg::verify_completeness;

const QUBITS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelKind {
    AmplitudeDamping,
    Depolarizing,
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 5] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::Depolarizing,
        ChannelKind::BitPhaseFlip,
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
    ];

    pub const PAULI: [ChannelKind; 4] = [
        ChannelKind::Depolarizing,
        ChannelKind::BitPhaseFlip,
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
    ];

    /// Short lowercase tag used on the command line and in output files.
    pub fn tag(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::Depolarizing => "dep",
            ChannelKind::BitFlip => "bf",
            ChannelKind::PhaseFlip => "pf",
            ChannelKind::BitPhaseFlip => "bpf",
        }
    }

    pub fn is_pauli(self) -> bool {
        self != ChannelKind::AmplitudeDamping
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ad" | "amplitude-damping" => Ok(ChannelKind::AmplitudeDamping),
            "dep" | "depolarizing" => Ok(ChannelKind::Depolarizing),
            "bf" | "bit-flip" => Ok(ChannelKind::BitFlip),
            "pf" | "phase-flip" => Ok(ChannelKind::PhaseFlip),
            "bpf" | "bit-phase-flip" => Ok(ChannelKind::BitPhaseFlip),
            _ => Err(Error::InvalidArgument("unknown channel kind")),
        }
    }
}

/// A channel kind with its decoherence probability `p` and memory `mu`, both in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub p: f64,
    pub mu: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, p: f64, mu: f64) -> Result<Self> {
        check_unit(p, "p must lie in [0, 1]")?;
        check_unit(mu, "mu must lie in [0, 1]")?;
        Ok(Self { kind, p, mu })
    }

    pub fn noiseless(kind: ChannelKind) -> Self {
        Self {
            kind,
            p: 0.0,
            mu: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.kind, self.p, self.mu).map(|_| ())
    }
}

fn check_unit(v: f64, msg: &'static str) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg))
    }
}

/// Single-qubit Pauli error probabilities `(α0, α1, α2, α3)` for `I, σx, σy, σz`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliProbVector(pub [f64; 4]);

impl PauliProbVector {
    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

pub fn pauli_prob_vector(kind: ChannelKind, p: f64) -> Result<PauliProbVector> {
    check_unit(p, "p must lie in [0, 1]")?;
    let alpha = match kind {
        ChannelKind::BitFlip => [1.0 - p, p, 0.0, 0.0],
        ChannelKind::BitPhaseFlip => [1.0 - p, 0.0, p, 0.0],
        ChannelKind::PhaseFlip => [1.0 - p, 0.0, 0.0, p],
        ChannelKind::Depolarizing => [1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p],
        ChannelKind::AmplitudeDamping => {
            return Err(Error::InvalidArgument(
                "amplitude damping is not a Pauli channel",
            ))
        }
    };
    Ok(PauliProbVector(alpha))
}

/// Markov-chain weight of the Pauli string `idx` (qubit 1 first).
pub fn pauli_string_weight(alpha: &PauliProbVector, mu: f64, idx: [usize; QUBITS]) -> f64 {
    let a = &alpha.0;
    let chain: f64 = idx
        .windows(2)
        .map(|w| (1.0 - mu) * a[w[0]] + if w[0] == w[1] { mu } else { 0.0 })
        .product();
    a[idx[QUBITS - 1]] * chain
}

/// Kraus set of a Pauli channel with memory acting on four consecutive qubits.
pub fn pauli_memory_kraus(kind: ChannelKind, p: f64, mu: f64) -> Result<KrausSet> {
    check_unit(mu, "mu must lie in [0, 1]")?;
    let alpha = pauli_prob_vector(kind, p)?;
    let sigma: Vec<ComplexMatrix> = (0..4).map(|k| pauli(k).expect("index in range")).collect();
    let mut ops = Vec::new();
    for code in 0..(1usize << (2 * QUBITS)) {
        let idx = pauli_indices(code);
        let w = pauli_string_weight(&alpha, mu, idx);
        if w < PRUNE_WEIGHT {
            continue;
        }
        let op = tensor_all(idx.iter().map(|&i| &sigma[i]));
        ops.push(op.scale_real(libm::sqrt(w)));
    }
    KrausSet::new(ops)
}

/// Decodes `code` in base 4 with qubit 1 as the most significant digit.
fn pauli_indices(code: usize) -> [usize; QUBITS] {
    let mut idx = [0; QUBITS];
    for (q, slot) in idx.iter_mut().enumerate() {
        *slot = (code >> (2 * (QUBITS - 1 - q))) & 3;
    }
    idx
}

/// Single-qubit amplitude-damping operators `A0 = diag(1, √(1−p))`, `A1 = √p |0⟩⟨1|`.
pub fn ad_single_qubit(p: f64) -> [ComplexMatrix; 2] {
    let z = Complex64::new(0.0, 0.0);
    let r = |v: f64| Complex64::new(v, 0.0);
    [
        ComplexMatrix::from_rows(alloc::vec![r(1.0), z, z, r(libm::sqrt(1.0 - p))]).expect("2x2"),
        ComplexMatrix::from_rows(alloc::vec![z, r(libm::sqrt(p)), z, z]).expect("2x2"),
    ]
}

/// All 16 four-fold tensor products of the single-qubit damping operators,
/// zero operators removed.
pub fn ad_uncorrelated_kraus(p: f64) -> Result<Vec<ComplexMatrix>> {
    check_unit(p, "p must lie in [0, 1]")?;
    let single = ad_single_qubit(p);
    Ok((0..(1usize << QUBITS))
        .map(|code| tensor_all((0..QUBITS).map(|q| &single[(code >> (QUBITS - 1 - q)) & 1])))
        .filter(|m| m.as_slice().iter().any(|z| z.norm_sqr() > 0.0))
        .collect())
}

/// Collective damping pair: the identity with `cos χ` at the all-zeros
/// entry, and `sin χ |1111⟩⟨0000|`, where `sin χ = √p`.
pub fn ad_correlated_kraus(p: f64) -> Result<[ComplexMatrix; 2]> {
    check_unit(p, "p must lie in [0, 1]")?;
    let sin_chi = libm::sqrt(p);
    let cos_chi = libm::sqrt(1.0 - p);
    let mut keep = ComplexMatrix::identity(DIM);
    keep[(0, 0)] = Complex64::new(cos_chi, 0.0);
    let mut jump = ComplexMatrix::zeros(DIM);
    jump[(DIM - 1, 0)] = Complex64::new(sin_chi, 0.0);
    Ok([keep, jump])
}

/// Kraus set realising `spec` on the four-qubit register.
pub fn build_channel(spec: &ChannelSpec) -> Result<KrausSet> {
    spec.validate()?;
    match spec.kind {
        ChannelKind::AmplitudeDamping => {
            let w_u = libm::sqrt(1.0 - spec.mu);
            let w_c = libm::sqrt(spec.mu);
            let mut ops: Vec<ComplexMatrix> = Vec::new();
            if 1.0 - spec.mu >= PRUNE_WEIGHT {
                ops.extend(
                    ad_uncorrelated_kraus(spec.p)?
                        .into_iter()
                        .map(|m| m.scale_real(w_u)),
                );
            }
            if spec.mu >= PRUNE_WEIGHT {
                ops.extend(
                    ad_correlated_kraus(spec.p)?
                        .into_iter()
                        .map(|m| m.scale_real(w_c)),
                );
            }
            KrausSet::new(ops)
        }
        kind => pauli_memory_kraus(kind, spec.p, spec.mu),
    }
}
