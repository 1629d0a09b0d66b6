use std::path::Path;

use qudit_fourier::circuits::{AnsatzKind, Circuit};
use qudit_fourier::fitting::{self, make_dataset};
use qudit_fourier::fourier::{self, audit as audit_family, crossover_degree, degeneracy, Crossover};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{DataConfig, RunConfig};
use crate::output::{float, write_csv, write_json, write_text};
use crate::{CliError, CliResult, Method};

/// Points per axis of the prediction grid when M ≤ 2.
pub const GRID_POINTS: usize = 40;
/// Random prediction points when M > 2.
pub const RANDOM_POINTS: usize = 2000;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn audit(kind: AnsatzKind, d: u64, m: u64, p: Option<u64>, lmax: u64, output: &Path) -> CliResult<()> {
    if lmax == 0 {
        return Err(invalid("--lmax must be >= 1"));
    }
    let p = match (kind, p) {
        (AnsatzKind::Mixed, Some(p)) => p,
        (AnsatzKind::Mixed, None) => return Err(invalid("the mixed ansatz needs --p")),
        (_, Some(_)) => return Err(invalid("--p applies to the mixed ansatz only")),
        (_, None) => 1,
    };
    let report = audit_family(kind, d, m, p, lmax)?;
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.layers.to_string(),
                r.degree.to_string(),
                r.params.to_string(),
                r.coefficients.to_string(),
                r.dof.to_string(),
                r.satisfied.to_string(),
            ]
        })
        .collect();
    write_csv(output, &["L", "D", "N_p", "N_c", "nu", "satisfied"], &rows)?;
    match crossover_degree(kind, d, m, p)? {
        Crossover::Degree(deg) => println!("crossover: D = {deg}"),
        Crossover::None => println!("crossover: none"),
        Crossover::Unbounded => println!("crossover: unbounded"),
    }
    Ok(())
}

/// Without `eta` the omega column holds the integer frequencies; with it,
/// η·ω as floats.
pub fn spectrum(d: usize, l: usize, eta: Option<f64>, output: &Path) -> CliResult<()> {
    if d < 2 || l == 0 {
        return Err(invalid("spectrum needs --d >= 2 and --l >= 1"));
    }
    if eta.is_some_and(|e| !e.is_finite()) {
        return Err(invalid("--eta must be finite"));
    }
    // counts are bounded by the d^{2L} total
    (d as u64)
        .checked_pow(2 * l as u32)
        .ok_or_else(|| invalid("degeneracies overflow 64-bit counts for this d and L"))?;
    let reach = ((d - 1) * l) as i64;
    let rows: Vec<Vec<String>> = (-reach..=reach)
        .map(|w| {
            let omega = match eta {
                Some(e) => float(e * w as f64),
                None => w.to_string(),
            };
            vec![omega, degeneracy(w, l, d).to_string()]
        })
        .collect();
    write_csv(output, &["omega", "degeneracy"], &rows)
}

#[derive(Serialize)]
struct Verification {
    analytic_vs_sampling_max_difference: f64,
}

pub fn extract(config: &Path, method: Method, verify: bool, seed: Option<u64>, output: &Path) -> CliResult<()> {
    let mut cfg = RunConfig::load(config)?;
    if let Some(s) = seed {
        cfg.override_seed(s);
    }
    let spec = cfg.ansatz_spec()?;
    let params = cfg.parameters(&spec)?;
    let run = |m: Method| match m {
        Method::Analytic => fourier::extract_analytic(&spec, &params),
        Method::Sampling => fourier::extract_sampling(&spec, &params),
    };
    let series = run(method)?;
    if verify {
        let other = run(match method {
            Method::Analytic => Method::Sampling,
            Method::Sampling => Method::Analytic,
        })?;
        let diff = series.max_coefficient_difference(&other)?;
        let report = Verification {
            analytic_vs_sampling_max_difference: diff,
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    }
    let mut text = series.to_json();
    text.push('\n');
    write_text(output, &text)
}

fn prediction_points(ranges: &[(f64, f64)], data: &DataConfig) -> Vec<Vec<f64>> {
    let m = ranges.len();
    if m <= 2 {
        let axis = |&(lo, hi): &(f64, f64)| -> Vec<f64> {
            (0..GRID_POINTS)
                .map(|i| lo + (hi - lo) * i as f64 / (GRID_POINTS - 1) as f64)
                .collect()
        };
        let axes: Vec<Vec<f64>> = ranges.iter().map(axis).collect();
        let total = GRID_POINTS.pow(m as u32);
        // last feature varies fastest
        (0..total)
            .map(|mut flat| {
                let mut x = vec![0.0; m];
                for j in (0..m).rev() {
                    x[j] = axes[j][flat % GRID_POINTS];
                    flat /= GRID_POINTS;
                }
                x
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(data.seed.wrapping_add(2));
        (0..RANDOM_POINTS)
            .map(|_| ranges.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect())
            .collect()
    }
}

pub fn fit(config: &Path, seed: Option<u64>, output: &Path) -> CliResult<()> {
    let mut cfg = RunConfig::load(config)?;
    if let Some(s) = seed {
        cfg.override_seed(s);
    }
    let spec = cfg.ansatz_spec()?;
    let target = cfg.target()?;
    let data = cfg.data()?;
    cfg.optimizer.validate()?;
    let train = make_dataset(&target.series, &target.ranges, data.n_train, data.seed)?;
    let test = make_dataset(&target.series, &target.ranges, data.n_test, data.seed.wrapping_add(1))?;
    let result = fitting::fit(&spec, &train, &test, &cfg.optimizer)?;

    let circuit = Circuit::new(&spec, &result.best_params)?;
    let points = prediction_points(&target.ranges, data);
    let predicted = fitting::predict(&circuit, &points)?;
    let mut header: Vec<String> = (1..=spec.features).map(|j| format!("x_{j}")).collect();
    header.extend(["f_true".to_string(), "f_pred".to_string()]);
    let rows = points
        .iter()
        .zip(&predicted)
        .map(|(x, &p)| {
            let mut row: Vec<String> = x.iter().map(|&v| float(v)).collect();
            row.push(float(target.series.evaluate(x)?));
            row.push(float(p));
            Ok(row)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let trace: Vec<Vec<String>> = result
        .trace
        .iter()
        .map(|&(it, v)| vec![it.to_string(), float(v)])
        .collect();

    write_json(&output.join("fit_result.json"), &result)?;
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(&output.join("predictions.csv"), &header, &rows)?;
    write_csv(&output.join("trace.csv"), &["iteration", "best_cost"], &trace)?;
    println!(
        "test mse {}, accuracy {}",
        float(result.test_mse),
        float(result.accuracy)
    );
    Ok(())
}
