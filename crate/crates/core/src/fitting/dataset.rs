use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::FourierSeries;

/// Labelled sample of a target series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub values: Vec<f64>,
    pub ranges: Vec<(f64, f64)>,
    pub seed: u64,
}

impl LabeledDataset {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub(crate) fn check_ranges(ranges: &[(f64, f64)]) -> Result<()> {
    if ranges.is_empty() {
        return Err(Error::validation("at least one input range is required"));
    }
    for &(lo, hi) in ranges {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::validation(format!("invalid range [{lo}, {hi}]")));
        }
    }
    Ok(())
}

/// `n` points drawn uniformly from the box `ranges` with a seeded ChaCha8
/// stream, labelled by the real part of the target series.
pub fn make_dataset(
    target: &FourierSeries,
    ranges: &[(f64, f64)],
    n: usize,
    seed: u64,
) -> Result<LabeledDataset> {
    check_ranges(ranges)?;
    if n == 0 {
        return Err(Error::validation("dataset size must be >= 1"));
    }
    if ranges.len() != target.dim() {
        return Err(Error::validation(format!(
            "{} ranges for a {}-dimensional target",
            ranges.len(),
            target.dim()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<f64>> = (0..n)
        .map(|_| ranges.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect())
        .collect();
    let values = points
        .iter()
        .map(|x| target.evaluate(x))
        .collect::<Result<_>>()?;
    Ok(LabeledDataset {
        dim: target.dim(),
        points,
        values,
        ranges: ranges.to_vec(),
        seed,
    })
}
