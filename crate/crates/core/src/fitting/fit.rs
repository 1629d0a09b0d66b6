use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::{param_count, AnsatzSpec, Circuit, ParameterVector};
use crate::error::{Error, Result};

use super::dataset::LabeledDataset;
use super::optimizer::{nelder_mead_from, OptimizerConfig, TracePoint};

fn check_dims(spec: &AnsatzSpec, data: &LabeledDataset) -> Result<()> {
    if data.dim != spec.features {
        return Err(Error::validation(format!(
            "dataset has dimension {}, ansatz has {} features",
            data.dim, spec.features
        )));
    }
    if data.points.len() != data.values.len() || data.is_empty() {
        return Err(Error::validation("dataset points and labels must be non-empty and aligned"));
    }
    Ok(())
}

fn circuit_mse(circuit: &Circuit, data: &LabeledDataset) -> Result<f64> {
    let mut total = 0.0;
    for (x, y) in data.points.iter().zip(&data.values) {
        let r = circuit.expectation(x)? - y;
        total += r * r;
    }
    Ok(total / data.len() as f64)
}

/// Mean squared error of the model over the dataset.
pub fn mse_cost(spec: &AnsatzSpec, params: &ParameterVector, data: &LabeledDataset) -> Result<f64> {
    check_dims(spec, data)?;
    circuit_mse(&Circuit::new(spec, params)?, data)
}

/// max(0, 1 − RMSE / (max truth − min truth)); constant truth scores 1 only
/// when matched exactly.
pub fn accuracy(predictions: &[f64], truth: &[f64]) -> Result<f64> {
    if predictions.is_empty() || predictions.len() != truth.len() {
        return Err(Error::validation("accuracy needs equal, non-zero lengths"));
    }
    let mse: f64 = predictions
        .iter()
        .zip(truth)
        .map(|(p, t)| (p - t) * (p - t))
        .sum::<f64>()
        / truth.len() as f64;
    let rmse = mse.sqrt();
    let (lo, hi) = truth
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| (lo.min(t), hi.max(t)));
    let range = hi - lo;
    if range == 0.0 {
        return Ok(if rmse == 0.0 { 1.0 } else { 0.0 });
    }
    Ok((1.0 - rmse / range).max(0.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub best_params: ParameterVector,
    pub train_mse: f64,
    pub test_mse: f64,
    pub accuracy: f64,
    pub iterations_used: usize,
    /// Final training cost of each restart.
    pub restart_costs: Vec<f64>,
    pub trace: Vec<TracePoint>,
}

/// Initial vector of restart `run`: θ uniform in [0, 2π), η = 1.
pub fn initial_parameters(spec: &AnsatzSpec, seed: u64, run: usize) -> ParameterVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (run as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let thetas = (0..param_count(spec)).map(|_| rng.gen_range(0.0..TAU)).collect();
    ParameterVector::new(thetas, vec![1.0; spec.eta_count()])
}

/// Train on `train` with Nelder-Mead over (θ, η), one independent random start
/// per run (1 + `restarts`), and score the best vertex on `test`.
pub fn fit(
    spec: &AnsatzSpec,
    train: &LabeledDataset,
    test: &LabeledDataset,
    cfg: &OptimizerConfig,
) -> Result<FitResult> {
    spec.validate()?;
    check_dims(spec, train)?;
    check_dims(spec, test)?;
    let starts: Vec<Vec<f64>> = (0..=cfg.restarts)
        .map(|r| initial_parameters(spec, cfg.seed, r).flatten())
        .collect();
    let cost = |flat: &[f64]| {
        ParameterVector::unflatten(spec, flat)
            .and_then(|p| mse_cost(spec, &p, train))
            .unwrap_or(f64::INFINITY)
    };
    let opt = nelder_mead_from(cost, &starts, cfg)?;
    let best_params = ParameterVector::unflatten(spec, &opt.x)?;
    let circuit = Circuit::new(spec, &best_params)?;
    let predictions = predict(&circuit, &test.points)?;
    let test_mse = circuit_mse(&circuit, test)?;
    Ok(FitResult {
        accuracy: accuracy(&predictions, &test.values)?,
        train_mse: circuit_mse(&circuit, train)?,
        test_mse,
        iterations_used: opt.iterations,
        restart_costs: opt.run_values,
        trace: opt.trace,
        best_params,
    })
}

pub fn predict(circuit: &Circuit, points: &[Vec<f64>]) -> Result<Vec<f64>> {
    points.iter().map(|x| circuit.expectation(x)).collect()
}
