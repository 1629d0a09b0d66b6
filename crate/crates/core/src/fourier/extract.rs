use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::{embed_gate, AnsatzKind, AnsatzSpec, Circuit, ParameterVector, Step};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

use super::series::{FourierSeries, FrequencyUnit};
use super::spectrum::model_degree;

/// Upper bound on N^{2G} multi-index pairs visited by [`extract_analytic`].
pub const ANALYTIC_TERM_LIMIT: u128 = 100_000_000;

/// Magnitude above which a coefficient counts as present in the
/// non-commuting check.
pub const OUT_OF_MODEL_THRESHOLD: f64 = 1e-6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn require_integer_spectrum(spec: &AnsatzSpec, params: &ParameterVector) -> Result<usize> {
    if spec.kind == AnsatzKind::Noncommuting {
        return Err(Error::UnsupportedEncoding(
            "non-commuting encodings have no per-gate diagonal spectrum".into(),
        ));
    }
    let degree = model_degree(spec)?;
    params.check(spec)?;
    if !params.unit_rescaling() {
        return Err(Error::UnsupportedEncoding(
            "coefficient extraction needs eta = 1 (integer frequency grid)".into(),
        ));
    }
    Ok(degree)
}

fn zero_key(features: usize) -> Vec<i64> {
    vec![0; features]
}

/// Coefficients from the gate matrix elements.
///
/// The circuit is reduced to W_G E_G ⋯ E_1 W_0 with merged full-register
/// unitaries W and merged diagonal encodings E. Each basis index i of an E
/// contributes an integer frequency vector r(i) (eigenvalue offsets from the
/// top level, summed per feature). Every path k = (i_1..i_G) is enumerated with
/// a running product; paths sharing Σ r(i_g) share a frequency, and the
/// expectation is the sum over path pairs (k, k′) of
/// μ_j A_k[j] conj(A_k′[j]) e^{i x·(F_k − F_k′)}. Only pairs with F_k ≤ F_k′
/// are formed; the mirror is the conjugate.
pub fn extract_analytic(spec: &AnsatzSpec, params: &ParameterVector) -> Result<FourierSeries> {
    require_integer_spectrum(spec, params)?;
    let circuit = Circuit::new(spec, params)?;
    let n = circuit.dim();
    let (d, qudits, features) = (circuit.local_dim(), circuit.qudits(), circuit.features());

    let eig = circuit.eigenvalues();
    let offsets: Vec<i64> = eig.iter().map(|&l| (l - eig[0]).round() as i64).collect();

    let mut unitaries: Vec<ComplexMatrix> = vec![ComplexMatrix::identity(n)];
    let mut encodes: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut last_was_encode = false;
    for step in circuit.steps() {
        match step {
            Step::Gate { unitary, targets } => {
                let full = embed_gate(unitary, targets, d, qudits)?;
                let w = unitaries.last_mut().expect("at least one unitary");
                *w = full.matmul(w);
                last_was_encode = false;
            }
            Step::Encode(slots) => {
                if !last_was_encode {
                    encodes.push(vec![zero_key(features); n]);
                    unitaries.push(ComplexMatrix::identity(n));
                }
                let table = encodes.last_mut().expect("just pushed");
                for (i, freq) in table.iter_mut().enumerate() {
                    for s in slots {
                        freq[s.feature] += offsets[circuit.digit(i, s.qudit)];
                    }
                }
                last_was_encode = true;
            }
            Step::Evolve { .. } => unreachable!("rejected above"),
        }
    }

    let g = encodes.len();
    let pairs = (n as u128).checked_pow(2 * g as u32).unwrap_or(u128::MAX);
    if pairs > ANALYTIC_TERM_LIMIT {
        return Err(Error::TooLarge {
            terms: pairs,
            limit: ANALYTIC_TERM_LIMIT,
        });
    }

    // Amplitude vectors grouped by path frequency.
    let mut grouped: BTreeMap<Vec<i64>, Vec<Complex64>> = BTreeMap::new();
    let last = &unitaries[g];
    if g == 0 {
        grouped.insert(zero_key(features), (0..n).map(|j| last[(j, 0)]).collect());
    } else {
        let mut path = vec![0usize; g];
        let mut prefix = vec![ZERO; g];
        let mut freq = vec![zero_key(features); g];
        let mut depth = 0;
        // iterative odometer: entries [0, depth) of `prefix` and `freq` are valid
        loop {
            while depth < g {
                let i = path[depth];
                let (amp, base) = if depth == 0 {
                    (unitaries[0][(i, 0)], zero_key(features))
                } else {
                    (
                        unitaries[depth][(i, path[depth - 1])] * prefix[depth - 1],
                        freq[depth - 1].clone(),
                    )
                };
                prefix[depth] = amp;
                freq[depth] = base
                    .iter()
                    .zip(&encodes[depth][i])
                    .map(|(a, b)| a + b)
                    .collect();
                depth += 1;
            }
            let amp = prefix[g - 1];
            if amp != ZERO {
                let i = path[g - 1];
                let slot = grouped
                    .entry(freq[g - 1].clone())
                    .or_insert_with(|| vec![ZERO; n]);
                for (j, v) in slot.iter_mut().enumerate() {
                    *v += last[(j, i)] * amp;
                }
            }
            // advance the odometer from the innermost position
            let mut pos = g;
            let advanced = loop {
                if pos == 0 {
                    break false;
                }
                pos -= 1;
                path[pos] += 1;
                if path[pos] < n {
                    break true;
                }
                path[pos] = 0;
            };
            if !advanced {
                break;
            }
            depth = pos;
        }
    }

    let mu = circuit.observable();
    let groups: Vec<(&Vec<i64>, &Vec<Complex64>)> = grouped.iter().collect();
    let mut series = FourierSeries::new(features, FrequencyUnit::Integer);
    for (a, (fa, va)) in groups.iter().enumerate() {
        for (fb, vb) in &groups[a..] {
            let c: Complex64 = (0..n).map(|j| va[j] * vb[j].conj() * mu[j]).sum();
            let omega: Vec<i64> = fa.iter().zip(fb.iter()).map(|(x, y)| x - y).collect();
            if omega.iter().all(|&w| w == 0) {
                series.accumulate(omega, c)?;
            } else {
                let neg: Vec<i64> = omega.iter().map(|w| -w).collect();
                series.accumulate(omega, c)?;
                series.accumulate(neg, c.conj())?;
            }
        }
    }
    series.prune();
    Ok(series)
}

/// Separable DFT of a row-major tensor sampled at x_k = period·k/g on each axis:
/// out[ω] = (1/g) Σ_k in[k] e^{−i ω x_k} for ω in `freqs`, axis by axis.
fn dft_axes(values: Vec<Complex64>, dims: usize, g: usize, freqs: &[f64], period: f64) -> Vec<Complex64> {
    let nf = freqs.len();
    let mut data = values;
    let mut shape = vec![g; dims];
    for axis in 0..dims {
        let outer: usize = shape[..axis].iter().product();
        let inner: usize = shape[axis + 1..].iter().product();
        let mut next = vec![ZERO; outer * nf * inner];
        let twiddle: Vec<Vec<Complex64>> = freqs
            .iter()
            .map(|&w| {
                (0..g)
                    .map(|k| Complex64::from_polar(1.0 / g as f64, -w * period * k as f64 / g as f64))
                    .collect()
            })
            .collect();
        for o in 0..outer {
            for (wi, tw) in twiddle.iter().enumerate() {
                for i in 0..inner {
                    let mut acc = ZERO;
                    for (k, t) in tw.iter().enumerate() {
                        acc += data[(o * g + k) * inner + i] * t;
                    }
                    next[(o * nf + wi) * inner + i] = acc;
                }
            }
        }
        shape[axis] = nf;
        data = next;
    }
    data
}

fn grid_points(dims: usize, g: usize, step: f64) -> impl Iterator<Item = Vec<f64>> {
    let total = g.pow(dims as u32);
    (0..total).map(move |mut idx| {
        let mut x = vec![0.0; dims];
        for slot in x.iter_mut().rev() {
            *slot = step * (idx % g) as f64;
            idx /= g;
        }
        x
    })
}

/// Coefficients from samples on the (2D+1)^M uniform grid, exact for a
/// band-limited model of degree D.
pub fn extract_sampling(spec: &AnsatzSpec, params: &ParameterVector) -> Result<FourierSeries> {
    let degree = require_integer_spectrum(spec, params)?;
    let circuit = Circuit::new(spec, params)?;
    let m = spec.features;
    let g = 2 * degree + 1;
    let samples: Vec<Complex64> = grid_points(m, g, TAU / g as f64)
        .map(|x| circuit.expectation(&x).map(|v| Complex64::new(v, 0.0)))
        .collect::<Result<_>>()?;
    let freqs: Vec<f64> = (-(degree as i64)..=degree as i64).map(|w| w as f64).collect();
    let coeffs = dft_axes(samples, m, g, &freqs, TAU);
    let keys = grid_points(m, g, 1.0).map(|k| k.iter().map(|&v| v as i64 - degree as i64).collect());
    FourierSeries::from_terms(m, FrequencyUnit::Integer, keys.zip(coeffs))
}

/// Half-integer spectrum of one non-commuting circuit over a 4π period.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoncommutingSample {
    pub seed: u64,
    /// Any coefficient outside the integer set {−D..D}^M above the threshold.
    pub out_of_model: bool,
    pub max_out_of_model: f64,
    /// Largest |Im f(x)| over the sampling grid.
    pub imaginary_residual: f64,
    pub series: FourierSeries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoncommutingReport {
    pub degree: usize,
    pub samples: Vec<NoncommutingSample>,
}

impl NoncommutingReport {
    pub fn fraction_out_of_model(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        let hits = self.samples.iter().filter(|s| s.out_of_model).count();
        hits as f64 / self.samples.len() as f64
    }
}

/// Sample a non-commuting circuit over x_m ∈ [0, 4π) and resolve its spectrum on
/// the half-integer grid up to twice the commuting-model degree.
pub fn noncommuting_spectrum(
    spec: &AnsatzSpec,
    params: &ParameterVector,
) -> Result<(FourierSeries, f64, f64)> {
    if spec.kind != AnsatzKind::Noncommuting {
        return Err(Error::validation("the spectrum check expects the non-commuting ansatz"));
    }
    let circuit = Circuit::new(spec, params)?;
    let degree = ((spec.d - 1) * spec.layers) as i64;
    let m = spec.features;
    let half_units = 4 * degree;
    let g = (2 * half_units + 1) as usize;
    let period = 4.0 * PI;
    let mut imaginary: f64 = 0.0;
    let samples: Vec<Complex64> = grid_points(m, g, period / g as f64)
        .map(|x| {
            let z = circuit.expectation_complex(&x)?;
            imaginary = imaginary.max(z.im.abs());
            Ok(Complex64::new(z.re, 0.0))
        })
        .collect::<Result<_>>()?;
    let freqs: Vec<f64> = (-half_units..=half_units).map(|k| k as f64 / 2.0).collect();
    let coeffs = dft_axes(samples, m, g, &freqs, period);
    let keys: Vec<Vec<i64>> = grid_points(m, g, 1.0)
        .map(|k| k.iter().map(|&v| v as i64 - half_units).collect())
        .collect();
    let mut worst: f64 = 0.0;
    for (k, c) in keys.iter().zip(&coeffs) {
        let outside = k.iter().any(|&h| h % 2 != 0 || (h / 2).abs() > degree);
        if outside {
            worst = worst.max(c.norm());
        }
    }
    let series = FourierSeries::from_terms(m, FrequencyUnit::Half, keys.into_iter().zip(coeffs))?;
    Ok((series, worst, imaginary))
}

/// Run [`noncommuting_spectrum`] on random parameters for seeds
/// `base_seed..base_seed + n_seeds`.
pub fn noncommuting_spectrum_check(
    spec: &AnsatzSpec,
    n_seeds: u64,
    base_seed: u64,
) -> Result<NoncommutingReport> {
    let mut samples = Vec::with_capacity(n_seeds as usize);
    for seed in base_seed..base_seed + n_seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = ParameterVector::random(spec, &mut rng);
        let (series, worst, imaginary) = noncommuting_spectrum(spec, &params)?;
        samples.push(NoncommutingSample {
            seed,
            out_of_model: worst > OUT_OF_MODEL_THRESHOLD,
            max_out_of_model: worst,
            imaginary_residual: imaginary,
            series,
        });
    }
    Ok(NoncommutingReport {
        degree: (spec.d - 1) * spec.layers,
        samples,
    })
}
