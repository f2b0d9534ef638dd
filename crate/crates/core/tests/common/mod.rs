//! Reference routines that avoid the library's tensor/Kraus machinery.
#![allow(dead_code)]

use num_complex::Complex64;
use qmg_core::linalg::{ComplexMatrix, DensityMatrix, DIM};
use rand::Rng;

pub type Dense = Vec<Complex64>;

const Z: Complex64 = Complex64::new(0.0, 0.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Plain 2×2 matrices, row-major.
pub fn single_pauli(k: usize) -> [Complex64; 4] {
    match k {
        0 => [c(1., 0.), Z, Z, c(1., 0.)],
        1 => [Z, c(1., 0.), c(1., 0.), Z],
        2 => [Z, c(0., -1.), c(0., 1.), Z],
        3 => [c(1., 0.), Z, Z, c(-1., 0.)],
        _ => unreachable!(),
    }
}

pub fn scaled(m: [Complex64; 4], s: f64) -> [Complex64; 4] {
    m.map(|z| z * s)
}

/// Embeds a 2×2 operator on `qubit` (1 = most significant) into the 16-dim register.
pub fn embed(op: &[Complex64; 4], qubit: usize) -> Dense {
    let shift = 4 - qubit;
    let mut out = vec![Z; DIM * DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            if (i ^ j) & !(1 << shift) != 0 {
                continue;
            }
            let (bi, bj) = ((i >> shift) & 1, (j >> shift) & 1);
            out[i * DIM + j] = op[bi * 2 + bj];
        }
    }
    out
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![Z; DIM * DIM];
    for i in 0..DIM {
        for k in 0..DIM {
            for j in 0..DIM {
                out[i * DIM + j] += a[i * DIM + k] * b[k * DIM + j];
            }
        }
    }
    out
}

pub fn dagger(a: &Dense) -> Dense {
    let mut out = vec![Z; DIM * DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            out[j * DIM + i] = a[i * DIM + j].conj();
        }
    }
    out
}

pub fn sandwich(a: &Dense, rho: &Dense) -> Dense {
    mul(&mul(a, rho), &dagger(a))
}

pub fn add_into(acc: &mut Dense, x: &Dense, w: f64) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a += b * w;
    }
}

/// Applies a single-qubit channel to each qubit in turn.
pub fn sequential_channel(rho: &Dense, single: &[[Complex64; 4]]) -> Dense {
    let mut cur = rho.clone();
    for q in 1..=4 {
        let mut next = vec![Z; DIM * DIM];
        for op in single {
            add_into(&mut next, &sandwich(&embed(op, q), &cur), 1.0);
        }
        cur = next;
    }
    cur
}

/// Product of embedded single-qubit Paulis for the string `idx`.
pub fn pauli_string(idx: [usize; 4]) -> Dense {
    let mut acc = embed(&single_pauli(0), 1);
    for (q, &k) in idx.iter().enumerate() {
        acc = mul(&acc, &embed(&single_pauli(k), q + 1));
    }
    acc
}

/// Markov-chain Pauli channel summed string by string: the last qubit draws
/// from `alpha`, and each earlier qubit repeats its right neighbour with
/// probability `mu` or redraws from `alpha`.
pub fn markov_pauli_channel(rho: &Dense, alpha: [f64; 4], mu: f64) -> Dense {
    let mut out = vec![Z; DIM * DIM];
    for i4 in 0..4 {
        for i3 in 0..4 {
            for i2 in 0..4 {
                for i1 in 0..4 {
                    let step =
                        |a: usize, b: usize| (1.0 - mu) * alpha[a] + if a == b { mu } else { 0.0 };
                    let w = alpha[i4] * step(i3, i4) * step(i2, i3) * step(i1, i2);
                    if w == 0.0 {
                        continue;
                    }
                    add_into(&mut out, &sandwich(&pauli_string([i1, i2, i3, i4]), rho), w);
                }
            }
        }
    }
    out
}

pub fn to_dense(m: &ComplexMatrix) -> Dense {
    m.as_slice().to_vec()
}

pub fn from_dense(d: Dense) -> DensityMatrix {
    DensityMatrix::from_matrix(ComplexMatrix::from_rows(d).unwrap())
}

pub fn max_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Random full-rank density matrix `G G† / tr(G G†)`.
pub fn random_density<R: Rng>(rng: &mut R) -> Dense {
    let g: Dense = (0..DIM * DIM)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let mut rho = mul(&g, &dagger(&g));
    let tr: f64 = (0..DIM).map(|i| rho[i * DIM + i].re).sum();
    rho.iter_mut().for_each(|z| *z /= tr);
    rho
}

/// Random pure state projector.
pub fn random_pure<R: Rng>(rng: &mut R) -> Dense {
    let psi: Vec<Complex64> = (0..DIM)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let n2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    let mut out = vec![Z; DIM * DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            out[i * DIM + j] = psi[i] * psi[j].conj() / n2;
        }
    }
    out
}
