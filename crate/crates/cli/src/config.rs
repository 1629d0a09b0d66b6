//! Run configuration. Every object rejects unknown keys; sections a command
//! needs but the document lacks are reported before any work starts.

use std::f64::consts::PI;
use std::path::Path;

use qudit_fourier::circuits::{
    extend_observable, AnsatzKind, AnsatzSpec, EncodingSpec, ParameterVector, RescalingMode,
};
use qudit_fourier::fitting::{builtin_target, OptimizerConfig};
use qudit_fourier::fourier::{trig_to_exp, FourierSeries, FrequencyUnit, SeriesDocument, TrigTerm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub ansatz: AnsatzConfig,
    #[serde(default)]
    pub encoding: EncodingConfig,
    #[serde(default)]
    pub observable: ObservableConfig,
    pub target: Option<TargetConfig>,
    pub data: Option<DataConfig>,
    #[serde(default)]
    pub optimizer: OptimizerConfig,
    #[serde(default)]
    pub parameters: ParametersConfig,
    /// Seed of randomly drawn circuit parameters.
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnsatzConfig {
    pub kind: AnsatzKind,
    pub d: usize,
    #[serde(rename = "M", alias = "m")]
    pub features: usize,
    #[serde(rename = "L", alias = "l")]
    pub layers: usize,
    pub p: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodingPreset {
    Spin,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncodingConfig {
    pub preset: Option<EncodingPreset>,
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(default)]
    pub rescaling_mode: RescalingMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableName {
    Default,
}

/// `"default"`, or eigenvalues for one qudit (extended by identities) or for
/// the whole register.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ObservableConfig {
    Named(ObservableName),
    Eigenvalues(Vec<f64>),
}

impl Default for ObservableConfig {
    fn default() -> Self {
        ObservableConfig::Named(ObservableName::Default)
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetConfig {
    Builtin(String),
    Trig(Vec<TrigTerm>),
    Coefficients(SeriesDocument),
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataConfig {
    pub n_train: usize,
    pub n_test: usize,
    pub ranges: Option<Vec<(f64, f64)>>,
    /// Training seed; the test set uses seed + 1.
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParameterPreset {
    Zero,
    Random,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ParametersConfig {
    Preset(ParameterPreset),
    Explicit {
        thetas: Vec<f64>,
        #[serde(default)]
        etas: Vec<f64>,
    },
}

impl Default for ParametersConfig {
    fn default() -> Self {
        ParametersConfig::Preset(ParameterPreset::Random)
    }
}

/// Target series with its sampling box.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedTarget {
    pub series: FourierSeries,
    pub ranges: Vec<(f64, f64)>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| invalid(e.to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// `--seed` replaces every seed in the document.
    pub fn override_seed(&mut self, seed: u64) {
        self.seed = seed;
        self.optimizer.seed = seed;
        if let Some(data) = self.data.as_mut() {
            data.seed = seed;
        }
    }

    pub fn ansatz_spec(&self) -> CliResult<AnsatzSpec> {
        let a = &self.ansatz;
        let block = match (a.kind, a.p) {
            (AnsatzKind::Mixed, Some(p)) => p,
            (AnsatzKind::Mixed, None) => return Err(invalid("mixed ansatz needs \"p\"")),
            (_, Some(_)) => return Err(invalid(format!("\"p\" applies to the mixed ansatz only, not {}", a.kind))),
            (_, None) => 1,
        };
        let spec = AnsatzSpec::new(a.kind, a.d, a.features, a.layers, block)?;
        let e = &self.encoding;
        let encoding = match (&e.preset, &e.eigenvalues) {
            (Some(_), Some(_)) => return Err(invalid("encoding takes either \"preset\" or \"eigenvalues\"")),
            (_, Some(ev)) => EncodingSpec::new(ev.clone(), e.rescaling_mode)?,
            _ => EncodingSpec::spin(a.d, e.rescaling_mode)?,
        };
        let spec = spec.with_encoding(encoding)?;
        match &self.observable {
            ObservableConfig::Named(ObservableName::Default) => Ok(spec),
            ObservableConfig::Eigenvalues(v) => {
                let full = if v.len() == spec.d && spec.qudits() > 1 {
                    extend_observable(v, spec.qudits())
                } else {
                    v.clone()
                };
                Ok(spec.with_observable(full)?)
            }
        }
    }

    pub fn parameters(&self, spec: &AnsatzSpec) -> CliResult<ParameterVector> {
        let p = match &self.parameters {
            ParametersConfig::Preset(ParameterPreset::Zero) => ParameterVector::zeros(spec),
            ParametersConfig::Preset(ParameterPreset::Random) => {
                ParameterVector::random(spec, &mut ChaCha8Rng::seed_from_u64(self.seed))
            }
            ParametersConfig::Explicit { thetas, etas } => ParameterVector::new(thetas.clone(), etas.clone()),
        };
        p.check(spec)?;
        Ok(p)
    }

    pub fn data(&self) -> CliResult<&DataConfig> {
        self.data.as_ref().ok_or_else(|| invalid("missing \"data\" section"))
    }

    /// Builtins bring their own box; otherwise one period, 4π for half-integer
    /// spectra.
    pub fn target(&self) -> CliResult<ResolvedTarget> {
        let t = self.target.as_ref().ok_or_else(|| invalid("missing \"target\" section"))?;
        let m = self.ansatz.features;
        let (series, builtin_ranges) = match t {
            TargetConfig::Builtin(name) => {
                let b = builtin_target(name)?;
                (b.series()?, Some(b.ranges))
            }
            TargetConfig::Trig(terms) => (trig_to_exp(m, terms)?, None),
            TargetConfig::Coefficients(doc) => (FourierSeries::from_document(doc)?, None),
        };
        if series.dim() != m {
            return Err(invalid(format!(
                "target has {} inputs, ansatz has M = {m}",
                series.dim()
            )));
        }
        let half = match series.unit() {
            FrequencyUnit::Integer => PI,
            FrequencyUnit::Half => 2.0 * PI,
        };
        let ranges = self
            .data
            .as_ref()
            .and_then(|d| d.ranges.clone())
            .or(builtin_ranges)
            .unwrap_or_else(|| vec![(-half, half); m]);
        if ranges.len() != m {
            return Err(invalid(format!("{} ranges for M = {m}", ranges.len())));
        }
        Ok(ResolvedTarget { series, ranges })
    }
}
