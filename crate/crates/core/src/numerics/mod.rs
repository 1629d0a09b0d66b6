//! Dense complex linear algebra used by the circuit simulator.

mod eigen;
mod gellmann;
mod matrix;
mod state;

pub use eigen::{
    hermitian_eig, unitary_exp, EigenDecomposition, HERMITIAN_TOLERANCE, MAX_SWEEPS,
    OFF_DIAGONAL_TOLERANCE,
};
pub use gellmann::{gellmann_basis, GeneratorBasis};
pub use matrix::ComplexMatrix;
pub use state::{apply_gate, apply_gate_in_place, register_size, StateVector};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Haar-like random unitary: Gram–Schmidt on a complex Gaussian matrix.
/// Independent of the eigensolver, so it can seed oracle tests for it.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(standard_normal(rng), standard_normal(rng)))
            .collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        for vi in &mut v {
            *vi /= norm;
        }
        cols.push(v);
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = Complex64::new(standard_normal(rng), 0.0);
        for j in (i + 1)..n {
            let v = Complex64::new(standard_normal(rng), standard_normal(rng)) / 2f64.sqrt();
            h[(i, j)] = v;
            h[(j, i)] = v.conj();
        }
    }
    h
}

fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}
