use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Pure state of an `n`-qudit register; qudit 0 is the most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// |0…0⟩
    pub fn zero(dim: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Σ_i w_i |ψ_i|² as a complex sum ⟨ψ|diag(w)|ψ⟩.
    pub fn diagonal_expectation(&self, weights: &[f64]) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(weights)
            .map(|(a, &w)| a.conj() * w * a)
            .sum()
    }
}

/// Number of qudits `n` with `d^n == dim`, if any.
pub fn register_size(dim: usize, d: usize) -> Option<usize> {
    if d < 2 || dim == 0 {
        return None;
    }
    let mut n = 0;
    let mut acc = 1usize;
    while acc < dim {
        acc = acc.checked_mul(d)?;
        n += 1;
    }
    (acc == dim).then_some(n)
}

/// Apply `u` to the ordered `targets` of a register of local dimension `d`.
/// `targets[0]` is the most significant digit of `u`'s index.
pub fn apply_gate(
    state: &StateVector,
    u: &ComplexMatrix,
    targets: &[usize],
    d: usize,
) -> Result<StateVector> {
    let mut out = state.clone();
    apply_gate_in_place(&mut out, u, targets, d)?;
    Ok(out)
}

pub fn apply_gate_in_place(
    state: &mut StateVector,
    u: &ComplexMatrix,
    targets: &[usize],
    d: usize,
) -> Result<()> {
    let dim = state.dim();
    let n = register_size(dim, d).ok_or_else(|| {
        Error::validation(format!("state dimension {dim} is not a power of {d}"))
    })?;
    if targets.is_empty() {
        return Err(Error::validation("gate needs at least one target"));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n {
            return Err(Error::validation(format!(
                "target {t} outside a {n}-qudit register"
            )));
        }
        if targets[..i].contains(&t) {
            return Err(Error::validation(format!("duplicate target {t}")));
        }
    }
    let block = d.pow(targets.len() as u32);
    if !u.is_square() || u.rows() != block {
        return Err(Error::validation(format!(
            "gate is {}x{}, expected {block}x{block} for {} targets",
            u.rows(),
            u.cols(),
            targets.len()
        )));
    }

    // full-register gate in natural order: plain matvec
    if targets.len() == n && targets.iter().enumerate().all(|(i, &t)| i == t) {
        let v = u.matvec(state.amplitudes());
        state.amplitudes_mut().copy_from_slice(&v);
        return Ok(());
    }

    let strides: Vec<usize> = targets.iter().map(|&t| d.pow((n - 1 - t) as u32)).collect();
    let offsets: Vec<usize> = (0..block)
        .map(|mut idx| {
            let mut off = 0;
            for s in strides.iter().rev() {
                off += (idx % d) * s;
                idx /= d;
            }
            off
        })
        .collect();

    let amps = state.amplitudes_mut();
    let mut gathered = vec![Complex64::new(0.0, 0.0); block];
    for base in 0..dim {
        if strides.iter().any(|&s| (base / s) % d != 0) {
            continue;
        }
        for (g, &off) in gathered.iter_mut().zip(&offsets) {
            *g = amps[base + off];
        }
        for (r, &off) in offsets.iter().enumerate() {
            amps[base + off] = u.row(r).iter().zip(&gathered).map(|(a, b)| a * b).sum();
        }
    }
    Ok(())
}
