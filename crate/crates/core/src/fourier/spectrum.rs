//! Frequency spectra, degeneracy counts and coefficient bookkeeping.

use crate::circuits::{AnsatzKind, AnsatzSpec};
use crate::error::{Error, Result};

/// Degree D = (d − 1)·L of the series produced with the spin-like encoding.
pub fn model_degree(spec: &AnsatzSpec) -> Result<usize> {
    if !spec.encoding.is_spin_like() {
        return Err(Error::UnsupportedEncoding(
            "the degree is defined only for the spin-like spectrum".into(),
        ));
    }
    if spec.kind == AnsatzKind::Noncommuting {
        return Err(Error::UnsupportedEncoding(
            "non-commuting encodings do not produce a commuting-model series".into(),
        ));
    }
    Ok((spec.d - 1) * spec.layers)
}

/// One feature's frequency set {η k : |k| ≤ (d − 1)L}, ascending.
pub fn spectrum(spec: &AnsatzSpec, eta: f64) -> Result<Vec<f64>> {
    let degree = model_degree(spec)? as i64;
    if eta == 0.0 {
        return Ok(vec![0.0]);
    }
    let mut out: Vec<f64> = (-degree..=degree).map(|k| eta * k as f64).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Number of multi-index pairs (k, k′) ∈ [N]^L × [N]^L with Λ_k − Λ_k′ = ω for
/// equispaced unit-gap eigenvalues, i.e. the count of 2L draws from {0..N−1}
/// summing to ω + L(N−1). Zero outside |ω| ≤ (N − 1)L.
pub fn degeneracy(omega: i64, layers: usize, n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let reach = ((n - 1) * layers) as i64;
    if omega.abs() > reach {
        return 0;
    }
    let draws = 2 * layers;
    let max_sum = draws * (n - 1);
    let mut ways = vec![0u64; max_sum + 1];
    ways[0] = 1;
    for done in 0..draws {
        let top = done * (n - 1);
        let mut next = vec![0u64; max_sum + 1];
        for (s, &w) in ways.iter().enumerate().take(top + 1) {
            if w == 0 {
                continue;
            }
            for v in 0..n {
                next[s + v] += w;
            }
        }
        ways = next;
    }
    ways[(omega + reach) as usize]
}

/// Product of per-feature degeneracies.
pub fn degeneracy_multi(omegas: &[i64], layers: usize, n: usize) -> u64 {
    omegas.iter().map(|&w| degeneracy(w, layers, n)).product()
}

/// Independent coefficients ((2D+1)^M − 1)/2 + 1 of a real series.
pub fn num_coefficients(degree: u64, dim: u32) -> u64 {
    (dof(degree, dim) - 1) / 2 + 1
}

/// Real degrees of freedom ν = (2D+1)^M.
pub fn dof(degree: u64, dim: u32) -> u64 {
    (2 * degree + 1).saturating_pow(dim)
}
