use num_complex::Complex64;

use super::eigen::unitary_exp;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Generalized Gell-Mann generators of su(N), normalized to Tr(G_i G_j) = 2 δ_ij.
///
/// Ordering is fixed: symmetric pairs (j < k) in lexicographic order, then the
/// antisymmetric pairs in the same order, then the N − 1 diagonal generators by
/// increasing rank. For N = 2 this is (σ_x, σ_y, σ_z).
type Entry = (usize, usize, Complex64);

#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    dim: usize,
    /// Non-zero entries of each generator; at most N per generator.
    entries: Vec<Vec<Entry>>,
}

pub fn gellmann_basis(n: usize) -> Result<GeneratorBasis> {
    if n < 2 {
        return Err(Error::validation(format!(
            "Gell-Mann basis needs dimension >= 2, got {n}"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut entries = Vec::with_capacity(n * n - 1);

    for j in 0..n {
        for k in (j + 1)..n {
            entries.push(vec![(j, k, one), (k, j, one)]);
        }
    }
    for j in 0..n {
        for k in (j + 1)..n {
            entries.push(vec![(j, k, -i), (k, j, i)]);
        }
    }
    for l in 1..n {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut g: Vec<Entry> = (0..l).map(|m| (m, m, Complex64::new(norm, 0.0))).collect();
        g.push((l, l, Complex64::new(-(l as f64) * norm, 0.0)));
        entries.push(g);
    }
    Ok(GeneratorBasis { dim: n, entries })
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dense copy of generator `j`.
    pub fn generator(&self, j: usize) -> ComplexMatrix {
        let mut g = ComplexMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries[j] {
            g[(r, c)] = v;
        }
        g
    }

    /// Dense copies of every generator, in basis order.
    pub fn generators(&self) -> Vec<ComplexMatrix> {
        (0..self.len()).map(|j| self.generator(j)).collect()
    }

    /// Σ_j θ_j G_j
    pub fn combine(&self, theta: &[f64]) -> Result<ComplexMatrix> {
        if theta.len() != self.entries.len() {
            return Err(Error::validation(format!(
                "expected {} generator coefficients, got {}",
                self.entries.len(),
                theta.len()
            )));
        }
        let mut h = ComplexMatrix::zeros(self.dim, self.dim);
        for (g, &t) in self.entries.iter().zip(theta) {
            for &(r, c, v) in g {
                h[(r, c)] += v * t;
            }
        }
        Ok(h)
    }

    /// Expansion coefficients Tr(H G_j) / 2 of a traceless Hermitian `h`.
    pub fn coefficients(&self, h: &ComplexMatrix) -> Vec<f64> {
        self.entries
            .iter()
            .map(|g| 0.5 * g.iter().map(|&(r, c, v)| h[(c, r)] * v).sum::<Complex64>().re)
            .collect()
    }

    /// exp(i Σ_j θ_j G_j)
    pub fn exponentiate(&self, theta: &[f64]) -> Result<ComplexMatrix> {
        let h = self.combine(theta)?;
        unitary_exp(&h, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_invariants(n: usize) {
        let b = gellmann_basis(n).unwrap();
        assert_eq!(b.len(), n * n - 1);
        let gens = b.generators();
        for (a, ga) in gens.iter().enumerate() {
            assert!(ga.is_hermitian(0.0));
            assert!(ga.trace().norm() <= 1e-12);
            for (c, gc) in gens.iter().enumerate() {
                let ip = ga.matmul(gc).trace();
                if a == c {
                    assert!((ip.re - 2.0).abs() < 1e-12);
                } else {
                    assert!(ip.norm() <= 1e-10, "Tr(G{a} G{c}) = {ip}");
                }
            }
        }
    }

    #[test]
    fn qubit_basis_is_pauli() {
        let b = gellmann_basis(2).unwrap();
        let g = b.generators();
        assert_eq!(g.len(), 3);
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(g[0][(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(g[1][(0, 1)], -i);
        assert_eq!(g[1][(1, 0)], i);
        assert_eq!(g[2].real_diagonal(0.0).unwrap(), vec![1.0, -1.0]);
    }

    #[test]
    fn qutrit_count() {
        assert_eq!(gellmann_basis(3).unwrap().len(), 8);
        check_invariants(3);
    }

    #[test]
    fn ququart_invariants() {
        check_invariants(4);
        check_invariants(2);
    }

    #[test]
    fn rejects_dimension_one() {
        assert!(gellmann_basis(1).is_err());
        assert!(gellmann_basis(0).is_err());
    }

    #[test]
    fn combine_length_checked() {
        let b = gellmann_basis(2).unwrap();
        assert!(b.combine(&[0.0; 2]).is_err());
    }
}
