use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients below this magnitude are dropped.
pub const COEFFICIENT_FLOOR: f64 = 1e-14;

/// Grid on which frequency keys live: ω = key / denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrequencyUnit {
    Integer,
    Half,
}

impl FrequencyUnit {
    pub fn denominator(self) -> i64 {
        match self {
            FrequencyUnit::Integer => 1,
            FrequencyUnit::Half => 2,
        }
    }

    /// Smallest supported grid containing every frequency, if any.
    pub fn fitting(freqs: impl IntoIterator<Item = f64>) -> Option<Self> {
        let mut unit = FrequencyUnit::Integer;
        for f in freqs {
            if !f.is_finite() {
                return None;
            }
            if (f - f.round()).abs() <= 1e-12 {
                continue;
            }
            if (2.0 * f - (2.0 * f).round()).abs() <= 1e-12 {
                unit = FrequencyUnit::Half;
            } else {
                return None;
            }
        }
        Some(unit)
    }
}

/// Truncated multi-dimensional Fourier series Σ c_ω e^{i ω·x}, stored sparsely.
///
/// Both ω and −ω are kept in memory; Hermitian symmetry c_{−ω} = conj(c_ω)
/// holds for every series produced by this crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "SeriesDocument", try_from = "SeriesDocument")]
pub struct FourierSeries {
    dim: usize,
    unit: FrequencyUnit,
    terms: BTreeMap<Vec<i64>, Complex64>,
}

impl FourierSeries {
    pub fn new(dim: usize, unit: FrequencyUnit) -> Self {
        Self {
            dim,
            unit,
            terms: BTreeMap::new(),
        }
    }

    /// Accumulate keyed terms, then drop entries under [`COEFFICIENT_FLOOR`].
    pub fn from_terms(
        dim: usize,
        unit: FrequencyUnit,
        terms: impl IntoIterator<Item = (Vec<i64>, Complex64)>,
    ) -> Result<Self> {
        let mut s = Self::new(dim, unit);
        for (k, c) in terms {
            s.accumulate(k, c)?;
        }
        s.prune();
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> FrequencyUnit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Complex64)> {
        self.terms.iter()
    }

    pub fn accumulate(&mut self, key: Vec<i64>, c: Complex64) -> Result<()> {
        if key.len() != self.dim {
            return Err(Error::validation(format!(
                "frequency vector of length {} in a {}-dimensional series",
                key.len(),
                self.dim
            )));
        }
        *self.terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
        Ok(())
    }

    pub fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= COEFFICIENT_FLOOR);
    }

    /// Coefficient at the grid key (zero when absent).
    pub fn coefficient(&self, key: &[i64]) -> Complex64 {
        self.terms.get(key).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Coefficient at a real frequency vector.
    pub fn coefficient_at(&self, freq: &[f64]) -> Complex64 {
        let den = self.unit.denominator() as f64;
        let key: Option<Vec<i64>> = freq
            .iter()
            .map(|&f| {
                let k = (f * den).round();
                ((f * den - k).abs() <= 1e-9).then_some(k as i64)
            })
            .collect();
        key.map(|k| self.coefficient(&k)).unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn frequency(&self, key: &[i64]) -> Vec<f64> {
        let den = self.unit.denominator() as f64;
        key.iter().map(|&k| k as f64 / den).collect()
    }

    /// Re-key onto a finer grid.
    pub fn to_unit(&self, unit: FrequencyUnit) -> Result<Self> {
        let (from, to) = (self.unit.denominator(), unit.denominator());
        if to % from != 0 {
            let coarse_ok = self.terms.keys().all(|k| k.iter().all(|v| v % (from / to) == 0));
            if !coarse_ok {
                return Err(Error::validation("series has frequencies off the target grid"));
            }
            let terms = self
                .terms
                .iter()
                .map(|(k, &c)| (k.iter().map(|v| v / (from / to)).collect(), c));
            return Self::from_terms(self.dim, unit, terms);
        }
        let f = to / from;
        let terms = self
            .terms
            .iter()
            .map(|(k, &c)| (k.iter().map(|v| v * f).collect(), c));
        Self::from_terms(self.dim, unit, terms)
    }

    /// Largest |ω_m| over stored terms, in frequency units.
    pub fn max_abs_frequency(&self) -> f64 {
        let den = self.unit.denominator() as f64;
        self.terms
            .keys()
            .flat_map(|k| k.iter())
            .map(|&v| v.unsigned_abs() as f64 / den)
            .fold(0.0, f64::max)
    }

    /// max over stored ω of |c_{−ω} − conj(c_ω)|
    pub fn hermitian_residual(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| {
                let neg: Vec<i64> = k.iter().map(|v| -v).collect();
                (self.coefficient(&neg) - c.conj()).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Σ c_ω e^{i ω·x} as a complex number.
    pub fn evaluate_complex(&self, x: &[f64]) -> Result<Complex64> {
        if x.len() != self.dim {
            return Err(Error::validation(format!(
                "point has {} coordinates, series has dimension {}",
                x.len(),
                self.dim
            )));
        }
        let den = self.unit.denominator() as f64;
        Ok(self
            .terms
            .iter()
            .map(|(k, c)| {
                let phase: f64 = k.iter().zip(x).map(|(&w, &xi)| w as f64 / den * xi).sum();
                c * Complex64::from_polar(1.0, phase)
            })
            .sum())
    }

    /// Real part of [`Self::evaluate_complex`].
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        Ok(self.evaluate_complex(x)?.re)
    }

    /// max over ω of |a_ω − b_ω| on a common grid.
    pub fn max_coefficient_difference(&self, other: &FourierSeries) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::validation("series dimensions differ"));
        }
        let unit = if self.unit == FrequencyUnit::Half || other.unit == FrequencyUnit::Half {
            FrequencyUnit::Half
        } else {
            FrequencyUnit::Integer
        };
        let a = self.to_unit(unit)?;
        let b = other.to_unit(unit)?;
        let worst = a
            .terms
            .keys()
            .chain(b.terms.keys())
            .map(|k| (a.coefficient(k) - b.coefficient(k)).norm())
            .fold(0.0, f64::max);
        Ok(worst)
    }

    /// Canonical half: c_0 plus every ω whose first non-zero component is positive.
    pub fn canonical_terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Complex64)> {
        self.terms.iter().filter(|(k, _)| is_canonical(k))
    }

    pub fn to_document(&self) -> SeriesDocument {
        SeriesDocument {
            dim: self.dim,
            unit: self.unit,
            terms: self
                .canonical_terms()
                .map(|(k, c)| TermDocument {
                    freq: self.frequency(k),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    /// Rebuild from canonical terms, restoring the conjugate partners.
    pub fn from_document(doc: &SeriesDocument) -> Result<Self> {
        let den = doc.unit.denominator() as f64;
        let mut s = Self::new(doc.dim, doc.unit);
        for t in &doc.terms {
            let key: Vec<i64> = t
                .freq
                .iter()
                .map(|&f| {
                    let k = (f * den).round();
                    if (f * den - k).abs() > 1e-9 || !f.is_finite() {
                        Err(Error::validation(format!(
                            "frequency {f} is not on the {:?} grid",
                            doc.unit
                        )))
                    } else {
                        Ok(k as i64)
                    }
                })
                .collect::<Result<_>>()?;
            if !is_canonical(&key) {
                return Err(Error::validation(format!(
                    "term {:?} is not a canonical representative",
                    t.freq
                )));
            }
            let c = Complex64::new(t.re, t.im);
            if key.iter().all(|&v| v == 0) {
                s.accumulate(key, c)?;
            } else {
                let neg = key.iter().map(|v| -v).collect();
                s.accumulate(key, c)?;
                s.accumulate(neg, c.conj())?;
            }
        }
        s.prune();
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("series document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SeriesDocument = serde_json::from_str(text)
            .map_err(|e| Error::validation(format!("invalid series JSON: {e}")))?;
        Self::from_document(&doc)
    }
}

impl From<FourierSeries> for SeriesDocument {
    fn from(s: FourierSeries) -> Self {
        s.to_document()
    }
}

impl TryFrom<SeriesDocument> for FourierSeries {
    type Error = Error;

    fn try_from(doc: SeriesDocument) -> Result<Self> {
        Self::from_document(&doc)
    }
}

fn is_canonical(key: &[i64]) -> bool {
    match key.iter().find(|&&v| v != 0) {
        None => true,
        Some(&v) => v > 0,
    }
}

/// JSON form: canonical representatives only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDocument {
    #[serde(rename = "M")]
    pub dim: usize,
    pub unit: FrequencyUnit,
    pub terms: Vec<TermDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    pub freq: Vec<f64>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    Const,
    Cos,
    Sin,
}

/// One real term `amplitude · kind(ω·x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigTerm {
    pub kind: TrigKind,
    pub amplitude: f64,
    /// Ignored for `Const`; may be empty there.
    #[serde(default)]
    pub freq: Vec<f64>,
}

impl TrigTerm {
    pub fn constant(amplitude: f64) -> Self {
        Self {
            kind: TrigKind::Const,
            amplitude,
            freq: Vec::new(),
        }
    }

    pub fn cos(amplitude: f64, freq: Vec<f64>) -> Self {
        Self {
            kind: TrigKind::Cos,
            amplitude,
            freq,
        }
    }

    pub fn sin(amplitude: f64, freq: Vec<f64>) -> Self {
        Self {
            kind: TrigKind::Sin,
            amplitude,
            freq,
        }
    }
}

/// Exponential form of a sum of sines and cosines over `dim` variables.
pub fn trig_to_exp(dim: usize, terms: &[TrigTerm]) -> Result<FourierSeries> {
    if dim == 0 {
        return Err(Error::validation("series dimension must be >= 1"));
    }
    for t in terms {
        if t.kind != TrigKind::Const && t.freq.len() != dim {
            return Err(Error::validation(format!(
                "term frequency {:?} does not have {dim} components",
                t.freq
            )));
        }
        if !t.amplitude.is_finite() {
            return Err(Error::validation("term amplitude must be finite"));
        }
    }
    let unit = FrequencyUnit::fitting(
        terms
            .iter()
            .filter(|t| t.kind != TrigKind::Const)
            .flat_map(|t| t.freq.iter().copied()),
    )
    .ok_or_else(|| Error::validation("frequencies must lie on the integer or half-integer grid"))?;
    let den = unit.denominator() as f64;

    let mut s = FourierSeries::new(dim, unit);
    for t in terms {
        let key: Vec<i64> = match t.kind {
            TrigKind::Const => vec![0; dim],
            _ => t.freq.iter().map(|f| (f * den).round() as i64).collect(),
        };
        let neg: Vec<i64> = key.iter().map(|v| -v).collect();
        let a = t.amplitude;
        match t.kind {
            TrigKind::Const => s.accumulate(key, Complex64::new(a, 0.0))?,
            TrigKind::Cos => {
                s.accumulate(key, Complex64::new(a / 2.0, 0.0))?;
                s.accumulate(neg, Complex64::new(a / 2.0, 0.0))?;
            }
            TrigKind::Sin => {
                s.accumulate(key, Complex64::new(0.0, -a / 2.0))?;
                s.accumulate(neg, Complex64::new(0.0, a / 2.0))?;
            }
        }
    }
    s.prune();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_conversions() {
        let s = trig_to_exp(2, &[TrigTerm::cos(0.04, vec![2.0, 1.0])]).unwrap();
        assert_eq!(s.coefficient(&[2, 1]), Complex64::new(0.02, 0.0));
        assert_eq!(s.coefficient(&[-2, -1]), s.coefficient(&[2, 1]).conj());

        let s = trig_to_exp(2, &[TrigTerm::sin(0.25, vec![1.0, 0.0])]).unwrap();
        assert_eq!(s.coefficient(&[1, 0]), Complex64::new(0.0, -0.125));
        assert_eq!(s.coefficient(&[-1, 0]), Complex64::new(0.0, 0.125));

        let s = trig_to_exp(2, &[TrigTerm::constant(-0.02)]).unwrap();
        assert_eq!(s.coefficient(&[0, 0]), Complex64::new(-0.02, 0.0));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn sin_at_zero_frequency_vanishes() {
        let s = trig_to_exp(1, &[TrigTerm::sin(1.0, vec![0.0])]).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn evaluation_matches_trig_form() {
        let terms = [
            TrigTerm::constant(0.3),
            TrigTerm::cos(0.5, vec![1.0, -2.0]),
            TrigTerm::sin(-0.7, vec![0.5, 1.0]),
        ];
        let s = trig_to_exp(2, &terms).unwrap();
        assert_eq!(s.unit(), FrequencyUnit::Half);
        for x in [[0.0f64, 0.0], [0.3, -1.1], [2.5, 4.0]] {
            let direct = 0.3 + 0.5 * (x[0] - 2.0 * x[1]).cos() - 0.7 * (0.5 * x[0] + x[1]).sin();
            let z = s.evaluate_complex(&x).unwrap();
            assert!((z.re - direct).abs() < 1e-14);
            assert!(z.im.abs() < 1e-14);
        }
        assert!(s.hermitian_residual() < 1e-16);
    }

    #[test]
    fn empty_series_is_zero() {
        let s = FourierSeries::new(3, FrequencyUnit::Integer);
        assert_eq!(s.evaluate(&[1.0, 2.0, 3.0]).unwrap(), 0.0);
        assert!(s.evaluate(&[1.0]).is_err());
    }

    #[test]
    fn off_grid_frequencies_rejected() {
        assert!(trig_to_exp(1, &[TrigTerm::cos(1.0, vec![0.3])]).is_err());
        assert!(trig_to_exp(2, &[TrigTerm::cos(1.0, vec![1.0])]).is_err());
    }

    #[test]
    fn json_keeps_canonical_half() {
        let s = trig_to_exp(
            2,
            &[
                TrigTerm::constant(-0.02),
                TrigTerm::cos(0.04, vec![2.0, 1.0]),
                TrigTerm::sin(-0.1, vec![1.0, -1.0]),
                TrigTerm::cos(-0.3, vec![0.0, 2.0]),
            ],
        )
        .unwrap();
        let doc = s.to_document();
        assert_eq!(doc.terms.len(), 4);
        assert!(doc.terms.iter().all(|t| is_canonical(
            &t.freq.iter().map(|&f| f as i64).collect::<Vec<_>>()
        )));
        let text = s.to_json();
        assert!(text.contains("\"M\": 2"));
        assert!(text.contains("\"unit\": \"integer\""));
        let back = FourierSeries::from_json(&text).unwrap();
        assert_eq!(back.max_coefficient_difference(&s).unwrap(), 0.0);
    }

    #[test]
    fn json_rejects_non_canonical_and_unknown_keys() {
        let bad = r#"{"M":1,"unit":"integer","terms":[{"freq":[-1],"re":1,"im":0}]}"#;
        assert!(FourierSeries::from_json(bad).is_err());
        let extra = r#"{"M":1,"unit":"integer","terms":[],"x":1}"#;
        assert!(FourierSeries::from_json(extra).is_err());
    }

    #[test]
    fn unit_conversion() {
        let s = trig_to_exp(1, &[TrigTerm::cos(1.0, vec![2.0])]).unwrap();
        let h = s.to_unit(FrequencyUnit::Half).unwrap();
        assert_eq!(h.coefficient(&[4]), Complex64::new(0.5, 0.0));
        assert_eq!(h.coefficient_at(&[2.0]), Complex64::new(0.5, 0.0));
        assert_eq!(h.to_unit(FrequencyUnit::Integer).unwrap(), s);
    }
}
