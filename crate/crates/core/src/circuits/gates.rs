use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, GeneratorBasis};

use super::spec::EncodingSpec;

/// S_z spectrum of a spin-(N−1)/2: ((N−1)/2, (N−3)/2, …, −(N−1)/2).
pub fn spin_eigenvalues(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::validation(format!(
            "spin-like encoding needs dimension >= 2, got {n}"
        )));
    }
    let top = (n as f64 - 1.0) / 2.0;
    Ok((0..n).map(|k| top - k as f64).collect())
}

/// diag(e^{i x η λ_1}, …, e^{i x η λ_d})
pub fn encoding_gate(x: f64, enc: &EncodingSpec, eta: f64) -> Result<ComplexMatrix> {
    if !eta.is_finite() || !x.is_finite() {
        return Err(Error::validation("encoding angle and rescaling must be finite"));
    }
    Ok(ComplexMatrix::from_diagonal(&encoding_phases(x * eta, enc.eigenvalues())))
}

pub(crate) fn encoding_phases(angle: f64, eigenvalues: &[f64]) -> Vec<Complex64> {
    eigenvalues
        .iter()
        .map(|&l| Complex64::from_polar(1.0, angle * l))
        .collect()
}

/// exp(i Σ_j θ_j G_j)
pub fn trainable_gate(theta: &[f64], basis: &GeneratorBasis) -> Result<ComplexMatrix> {
    basis.exponentiate(theta)
}

/// Spin operators (S_x, S_y, S_z) of spin (d−1)/2 in the S_z eigenbasis
/// ordered by decreasing m, matching [`spin_eigenvalues`].
pub fn spin_operators(d: usize) -> Result<[ComplexMatrix; 3]> {
    let eig = spin_eigenvalues(d)?;
    let j = (d as f64 - 1.0) / 2.0;
    // S_+ |m⟩ = sqrt(j(j+1) − m(m+1)) |m+1⟩, with |m⟩ at index k = j − m
    let mut raise = ComplexMatrix::zeros(d, d);
    for k in 1..d {
        let m = eig[k];
        raise[(k - 1, k)] = Complex64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let lower = raise.adjoint();
    let sx = raise.add(&lower).scale(Complex64::new(0.5, 0.0));
    let sy = raise.sub(&lower).scale(Complex64::new(0.0, -0.5));
    let sz = ComplexMatrix::from_real_diagonal(&eig);
    Ok([sx, sy, sz])
}
