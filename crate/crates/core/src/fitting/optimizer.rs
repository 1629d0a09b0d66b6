use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nelder-Mead settings. Restarts are additional independent runs; the best
/// final vertex over all runs is returned.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    /// Iteration cap per run.
    pub max_iterations: usize,
    /// A run stops once max f − min f over the simplex falls below this and
    /// the simplex fits within `point_tolerance` of its best vertex.
    pub simplex_tolerance: f64,
    pub point_tolerance: f64,
    /// Runs beyond the first.
    pub restarts: usize,
    pub seed: u64,
    pub initial_step: f64,
    /// Half-width of the uniform perturbation of x0 used by restarts in
    /// [`nelder_mead`].
    pub restart_spread: f64,
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            max_iterations: 20_000,
            simplex_tolerance: 1e-8,
            point_tolerance: 1e-8,
            restarts: 0,
            seed: 0,
            initial_step: 0.25,
            restart_spread: 1.0,
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.reflection > 0.0
            && self.expansion > 1.0
            && self.contraction > 0.0
            && self.contraction < 1.0
            && self.shrink > 0.0
            && self.shrink < 1.0;
        if !ok {
            return Err(Error::validation(
                "Nelder-Mead needs reflection > 0, expansion > 1, 0 < contraction < 1, 0 < shrink < 1",
            ));
        }
        if !(self.initial_step.is_finite() && self.initial_step > 0.0) {
            return Err(Error::validation("initial simplex step must be positive"));
        }
        if !(self.simplex_tolerance.is_finite() && self.simplex_tolerance >= 0.0) {
            return Err(Error::validation("simplex tolerance must be finite and >= 0"));
        }
        if !(self.point_tolerance.is_finite() && self.point_tolerance >= 0.0) {
            return Err(Error::validation("point tolerance must be finite and >= 0"));
        }
        if !(self.restart_spread.is_finite() && self.restart_spread >= 0.0) {
            return Err(Error::validation("restart spread must be finite and >= 0"));
        }
        Ok(())
    }
}

/// (cumulative iteration, best cost so far)
pub type TracePoint = (usize, f64);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizeResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    /// Final cost of each run, in run order.
    pub run_values: Vec<f64>,
    /// Non-increasing; one point at iteration 0 and one per improvement.
    pub trace: Vec<TracePoint>,
}

struct Run {
    x: Vec<f64>,
    value: f64,
    iterations: usize,
    trace: Vec<TracePoint>,
}

fn guarded(cost: &impl Fn(&[f64]) -> f64, x: &[f64]) -> f64 {
    let v = cost(x);
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

fn single_run(cost: &impl Fn(&[f64]) -> f64, x0: &[f64], cfg: &OptimizerConfig) -> Run {
    let k = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(k + 1);
    simplex.push(x0.to_vec());
    for i in 0..k {
        let mut v = x0.to_vec();
        v[i] += cfg.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| guarded(cost, v)).collect();

    let order = |values: &[f64]| {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        idx
    };

    let mut idx = order(&values);
    let mut trace = vec![(0, values[idx[0]])];
    let mut iterations = 0;
    while iterations < cfg.max_iterations {
        let (best, worst, second) = (idx[0], idx[k], idx[k - 1]);
        let spread = values[worst] - values[best];
        if spread.is_finite() && spread < cfg.simplex_tolerance {
            let size = simplex
                .iter()
                .flat_map(|v| v.iter().zip(&simplex[best]).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if size < cfg.point_tolerance {
                break;
            }
        }
        iterations += 1;

        let mut centroid = vec![0.0; k];
        for &i in &idx[..k] {
            for (c, v) in centroid.iter_mut().zip(&simplex[i]) {
                *c += v;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= k as f64);

        let toward = |from: &[f64], coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(from)
                .map(|(c, f)| c + coef * (f - c))
                .collect()
        };

        let xr = toward(&simplex[worst], -cfg.reflection);
        let fr = guarded(cost, &xr);
        if fr < values[best] {
            let xe = toward(&xr, cfg.expansion);
            let fe = guarded(cost, &xe);
            if fe < fr {
                simplex[worst] = xe;
                values[worst] = fe;
            } else {
                simplex[worst] = xr;
                values[worst] = fr;
            }
        } else if fr < values[second] {
            simplex[worst] = xr;
            values[worst] = fr;
        } else {
            let (xc, fc, accept) = if fr < values[worst] {
                let xc = toward(&xr, cfg.contraction);
                let fc = guarded(cost, &xc);
                (xc, fc, fc <= fr)
            } else {
                let xc = toward(&simplex[worst], cfg.contraction);
                let fc = guarded(cost, &xc);
                (xc, fc, fc < values[worst])
            };
            if accept {
                simplex[worst] = xc;
                values[worst] = fc;
            } else {
                let anchor = simplex[best].clone();
                for &i in &idx[1..] {
                    let moved: Vec<f64> = anchor
                        .iter()
                        .zip(&simplex[i])
                        .map(|(a, v)| a + cfg.shrink * (v - a))
                        .collect();
                    values[i] = guarded(cost, &moved);
                    simplex[i] = moved;
                }
            }
        }

        idx = order(&values);
        let current = values[idx[0]];
        if current < trace.last().expect("seeded").1 {
            trace.push((iterations, current));
        }
    }
    Run {
        x: simplex[idx[0]].clone(),
        value: values[idx[0]],
        iterations,
        trace,
    }
}

/// Minimize from each start in turn and keep the best result. The combined
/// trace offsets iterations cumulatively and carries the running minimum.
pub fn nelder_mead_from(
    cost: impl Fn(&[f64]) -> f64,
    starts: &[Vec<f64>],
    cfg: &OptimizerConfig,
) -> Result<OptimizeResult> {
    cfg.validate()?;
    let Some(first) = starts.first() else {
        return Err(Error::validation("at least one starting point is required"));
    };
    let k = first.len();
    if k == 0 || starts.iter().any(|s| s.len() != k) {
        return Err(Error::validation("starting points must share a non-zero dimension"));
    }
    if !guarded(&cost, first).is_finite() {
        return Err(Error::validation("cost is not finite at the starting point"));
    }

    let mut best: Option<Run> = None;
    let mut trace: Vec<TracePoint> = Vec::new();
    let mut offset = 0;
    let mut run_values = Vec::with_capacity(starts.len());
    for start in starts {
        let run = single_run(&cost, start, cfg);
        for &(it, v) in &run.trace {
            if trace.last().is_none_or(|&(_, b)| v < b) {
                trace.push((offset + it, v));
            }
        }
        offset += run.iterations;
        run_values.push(run.value);
        if best.as_ref().is_none_or(|b| run.value < b.value) {
            best = Some(run);
        }
    }
    let best = best.expect("non-empty starts");
    Ok(OptimizeResult {
        x: best.x,
        value: best.value,
        iterations: offset,
        run_values,
        trace,
    })
}

/// Nelder-Mead from x0; each restart begins at x0 plus a seeded uniform
/// perturbation of half-width `restart_spread`.
pub fn nelder_mead(
    cost: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    cfg: &OptimizerConfig,
) -> Result<OptimizeResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let spread = cfg.restart_spread;
    let mut starts = vec![x0.to_vec()];
    for _ in 0..cfg.restarts {
        starts.push(
            x0.iter()
                .map(|&v| if spread > 0.0 { v + rng.gen_range(-spread..=spread) } else { v })
                .collect(),
        );
    }
    nelder_mead_from(cost, &starts, cfg)
}
