//! Structural experiments with JSON reports.

use std::f64::consts::TAU;
use std::path::Path;

use qudit_fourier::circuits::{AnsatzKind, AnsatzSpec, Circuit, ParameterVector};
use qudit_fourier::fourier::{extract_analytic, extract_sampling, noncommuting_spectrum_check, FourierSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::write_json;
use crate::{CliResult, Demo};

pub const COLLAPSED_TRIPLES: usize = 100;
pub const PRODUCT_SEEDS: u64 = 10;
pub const NONCOMMUTING_SEEDS: u64 = 20;

#[derive(Debug, Serialize)]
pub struct CollapsedReport {
    pub demo: &'static str,
    pub seed: u64,
    pub triples: usize,
    /// max |f(a, b) − f(a + b, 0)|
    pub max_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct ProductReport {
    pub demo: &'static str,
    pub seed: u64,
    pub circuits: u64,
    /// max |c_{ω₁ω₂} − a_{ω₁} b_{ω₂}| against the single-qudit factor series.
    pub max_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct NoncommutingEntry {
    pub seed: u64,
    pub out_of_model: bool,
    pub max_out_of_model: f64,
    pub imaginary_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct NoncommutingDemoReport {
    pub demo: &'static str,
    pub seed: u64,
    pub degree: usize,
    pub fraction_out_of_model: f64,
    pub entries: Vec<NoncommutingEntry>,
}

/// Collapsed line ansatz, d ∈ {2, 3}, L ∈ 1..=4, M = 2: a random circuit and
/// input pair per triple.
pub fn collapsed(seed: u64) -> CliResult<CollapsedReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for i in 0..COLLAPSED_TRIPLES {
        let spec = AnsatzSpec::new(AnsatzKind::CollapsedLine, 2 + i % 2, 2, 1 + i % 4, 1)?;
        let params = ParameterVector::random(&spec, &mut rng);
        let (a, b) = (rng.gen_range(-TAU..TAU), rng.gen_range(-TAU..TAU));
        let c = Circuit::new(&spec, &params)?;
        worst = worst.max((c.expectation(&[a, b])? - c.expectation(&[a + b, 0.0])?).abs());
    }
    Ok(CollapsedReport {
        demo: "collapsed",
        seed,
        triples: COLLAPSED_TRIPLES,
        max_residual: worst,
    })
}

/// Product-gate parallel ansatz, d = 2, M = 2, L = 1, observable σ_z ⊗ σ_z.
pub fn product(seed: u64) -> CliResult<ProductReport> {
    let spec = AnsatzSpec::new(AnsatzKind::ProductParallel, 2, 2, 1, 1)?.with_observable(vec![1.0, -1.0, -1.0, 1.0])?;
    let single = AnsatzSpec::line(2, 1, 1)?;
    let mut worst: f64 = 0.0;
    for s in seed..seed + PRODUCT_SEEDS {
        let params = ParameterVector::random(&spec, &mut ChaCha8Rng::seed_from_u64(s));
        let joint = extract_analytic(&spec, &params)?;
        // qudit q owns generator blocks q (before encoding) and M + q (after)
        let factors = (0..2)
            .map(|q| {
                let mut th = params.thetas[3 * q..3 * q + 3].to_vec();
                th.extend_from_slice(&params.thetas[3 * (2 + q)..3 * (2 + q) + 3]);
                extract_sampling(&single, &ParameterVector::new(th, vec![]))
            })
            .collect::<qudit_fourier::Result<Vec<FourierSeries>>>()?;
        for w1 in -1..=1i64 {
            for w2 in -1..=1i64 {
                let outer = factors[0].coefficient(&[w1]) * factors[1].coefficient(&[w2]);
                worst = worst.max((joint.coefficient(&[w1, w2]) - outer).norm());
            }
        }
    }
    Ok(ProductReport {
        demo: "product",
        seed,
        circuits: PRODUCT_SEEDS,
        max_residual: worst,
    })
}

/// Non-commuting ansatz, d = 2, M = 2, L = 1, seeds `seed..seed + 20`.
pub fn noncommuting(seed: u64) -> CliResult<NoncommutingDemoReport> {
    let spec = AnsatzSpec::new(AnsatzKind::Noncommuting, 2, 2, 1, 1)?;
    let report = noncommuting_spectrum_check(&spec, NONCOMMUTING_SEEDS, seed)?;
    Ok(NoncommutingDemoReport {
        demo: "noncommuting",
        seed,
        degree: report.degree,
        fraction_out_of_model: report.fraction_out_of_model(),
        entries: report
            .samples
            .into_iter()
            .map(|s| NoncommutingEntry {
                seed: s.seed,
                out_of_model: s.out_of_model,
                max_out_of_model: s.max_out_of_model,
                imaginary_residual: s.imaginary_residual,
            })
            .collect(),
    })
}

pub fn run(demo: Demo, seed: u64, output: &Path) -> CliResult<()> {
    match demo {
        Demo::Collapsed => write_json(output, &collapsed(seed)?),
        Demo::Product => write_json(output, &product(seed)?),
        Demo::Noncommuting => write_json(output, &noncommuting(seed)?),
    }
}
