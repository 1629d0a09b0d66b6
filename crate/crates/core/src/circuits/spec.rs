use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::gates::spin_eigenvalues;

/// Circuit family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnsatzKind {
    /// One qudit; every feature encoded in sequence with a trainable gate after each.
    Line,
    /// One qudit per feature; one full-register trainable gate per layer.
    Parallel,
    /// `p` qudits; features batched `p` at a time, a full-register gate after each batch.
    Mixed,
    /// One qudit; all features encoded back to back, one trainable gate per layer.
    CollapsedLine,
    /// Parallel layout with unentangled (tensor-product) trainable gates.
    ProductParallel,
    /// One qudit; features encoded with alternating S_y / S_z generators.
    Noncommuting,
}

impl AnsatzKind {
    pub const ALL: [AnsatzKind; 6] = [
        AnsatzKind::Line,
        AnsatzKind::Parallel,
        AnsatzKind::Mixed,
        AnsatzKind::CollapsedLine,
        AnsatzKind::ProductParallel,
        AnsatzKind::Noncommuting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AnsatzKind::Line => "line",
            AnsatzKind::Parallel => "parallel",
            AnsatzKind::Mixed => "mixed",
            AnsatzKind::CollapsedLine => "collapsed_line",
            AnsatzKind::ProductParallel => "product_parallel",
            AnsatzKind::Noncommuting => "noncommuting",
        }
    }
}

impl fmt::Display for AnsatzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AnsatzKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AnsatzKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::validation(format!("unknown ansatz kind '{s}'")))
    }
}

/// How rescaling factors η enter the encoding gates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RescalingMode {
    #[default]
    None,
    /// One η shared by every encoding gate.
    Global,
    /// One η per encoding gate.
    PerGate,
    /// One η per feature, shared by all of that feature's gates.
    PerFeature,
}

impl FromStr for RescalingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(RescalingMode::None),
            "global" => Ok(RescalingMode::Global),
            "per_gate" => Ok(RescalingMode::PerGate),
            "per_feature" => Ok(RescalingMode::PerFeature),
            _ => Err(Error::validation(format!("unknown rescaling mode '{s}'"))),
        }
    }
}

/// Spectrum of the single-qudit encoding Hamiltonian plus the rescaling mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EncodingSpec {
    eigenvalues: Vec<f64>,
    rescaling: RescalingMode,
}

impl EncodingSpec {
    pub fn new(eigenvalues: Vec<f64>, rescaling: RescalingMode) -> Result<Self> {
        if eigenvalues.len() < 2 {
            return Err(Error::validation("encoding needs at least two eigenvalues"));
        }
        if eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("encoding eigenvalues must be finite"));
        }
        Ok(Self {
            eigenvalues,
            rescaling,
        })
    }

    /// Spin-like preset for local dimension `d`.
    pub fn spin(d: usize, rescaling: RescalingMode) -> Result<Self> {
        Self::new(spin_eigenvalues(d)?, rescaling)
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn rescaling(&self) -> RescalingMode {
        self.rescaling
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_spin_like(&self) -> bool {
        spin_eigenvalues(self.dim())
            .map(|s| s.iter().zip(&self.eigenvalues).all(|(a, b)| (a - b).abs() <= 1e-12))
            .unwrap_or(false)
    }
}

/// Full description of a circuit family instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub kind: AnsatzKind,
    /// Local qudit dimension.
    pub d: usize,
    /// Data dimension.
    pub features: usize,
    pub layers: usize,
    /// Qudit count of the mixed ansatz; ignored by the other kinds.
    pub block: usize,
    pub encoding: EncodingSpec,
    /// Diagonal of the observable over the whole register.
    pub observable: Vec<f64>,
}

/// μ_j = 1 − 2j/(d−1) on one qudit (σ_z for qubits).
pub fn default_single_observable(d: usize) -> Vec<f64> {
    (0..d).map(|j| 1.0 - 2.0 * j as f64 / (d as f64 - 1.0)).collect()
}

/// Tensor-extend a single-qudit diagonal observable on qudit 0 with identities.
pub fn extend_observable(single: &[f64], qudits: usize) -> Vec<f64> {
    let d = single.len();
    let rest = d.pow(qudits.saturating_sub(1) as u32);
    (0..d * rest).map(|i| single[i / rest]).collect()
}

impl AnsatzSpec {
    /// Spin-like encoding, no rescaling, default observable. `block` is used only
    /// by the mixed kind (pass anything for the others).
    pub fn new(kind: AnsatzKind, d: usize, features: usize, layers: usize, block: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::validation(format!("qudit dimension must be >= 2, got {d}")));
        }
        let block = if kind == AnsatzKind::Mixed { block } else { 1 };
        let mut spec = Self {
            kind,
            d,
            features,
            layers,
            block,
            encoding: EncodingSpec::spin(d, RescalingMode::None)?,
            observable: Vec::new(),
        };
        spec.observable = extend_observable(&default_single_observable(d), spec.qudits());
        spec.validate()?;
        Ok(spec)
    }

    pub fn line(d: usize, features: usize, layers: usize) -> Result<Self> {
        Self::new(AnsatzKind::Line, d, features, layers, 1)
    }

    pub fn parallel(d: usize, features: usize, layers: usize) -> Result<Self> {
        Self::new(AnsatzKind::Parallel, d, features, layers, 1)
    }

    pub fn mixed(d: usize, features: usize, layers: usize, block: usize) -> Result<Self> {
        Self::new(AnsatzKind::Mixed, d, features, layers, block)
    }

    pub fn with_rescaling(mut self, mode: RescalingMode) -> Self {
        self.encoding.rescaling = mode;
        self
    }

    pub fn with_encoding(mut self, encoding: EncodingSpec) -> Result<Self> {
        self.encoding = encoding;
        self.validate()?;
        Ok(self)
    }

    pub fn with_observable(mut self, observable: Vec<f64>) -> Result<Self> {
        self.observable = observable;
        self.validate()?;
        Ok(self)
    }

    /// Register size in qudits.
    pub fn qudits(&self) -> usize {
        match self.kind {
            AnsatzKind::Line | AnsatzKind::CollapsedLine | AnsatzKind::Noncommuting => 1,
            AnsatzKind::Parallel | AnsatzKind::ProductParallel => self.features,
            AnsatzKind::Mixed => self.block,
        }
    }

    /// Register dimension d^n.
    pub fn dim(&self) -> usize {
        self.d.pow(self.qudits() as u32)
    }

    /// Number of single-qudit encoding gates in the circuit.
    pub fn encoding_gate_count(&self) -> usize {
        self.features * self.layers
    }

    pub fn blocks_per_layer(&self) -> usize {
        self.features.div_ceil(self.block)
    }

    pub fn eta_count(&self) -> usize {
        match self.encoding.rescaling {
            RescalingMode::None => 0,
            RescalingMode::Global => 1,
            RescalingMode::PerGate => self.encoding_gate_count(),
            RescalingMode::PerFeature => self.features,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::validation("qudit dimension must be >= 2"));
        }
        if self.features == 0 {
            return Err(Error::validation("feature count must be >= 1"));
        }
        if self.layers == 0 {
            return Err(Error::validation("layer count must be >= 1"));
        }
        if self.kind == AnsatzKind::Mixed && (self.block == 0 || self.block > self.features) {
            return Err(Error::validation(format!(
                "mixed ansatz needs 1 <= p <= M, got p = {} with M = {}",
                self.block, self.features
            )));
        }
        if self.encoding.dim() != self.d {
            return Err(Error::validation(format!(
                "encoding has {} eigenvalues for qudit dimension {}",
                self.encoding.dim(),
                self.d
            )));
        }
        if self.kind == AnsatzKind::Noncommuting && !self.encoding.is_spin_like() {
            return Err(Error::validation(
                "non-commuting encoding is defined for the spin-like spectrum only",
            ));
        }
        let qudits = self.qudits() as u32;
        let dim = self
            .d
            .checked_pow(qudits)
            .filter(|&n| n <= 1 << 12)
            .ok_or_else(|| Error::validation("register dimension too large to simulate"))?;
        if self.observable.len() != dim {
            return Err(Error::validation(format!(
                "observable has {} eigenvalues, register dimension is {dim}",
                self.observable.len()
            )));
        }
        if self.observable.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("observable eigenvalues must be finite"));
        }
        Ok(())
    }
}

/// Trainable parameters of one circuit instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterVector {
    /// Generator coefficients, gate by gate in circuit order.
    pub thetas: Vec<f64>,
    /// Rescaling factors (empty without rescaling).
    pub etas: Vec<f64>,
}

impl ParameterVector {
    pub fn new(thetas: Vec<f64>, etas: Vec<f64>) -> Self {
        Self { thetas, etas }
    }

    /// θ = 0, η = 1.
    pub fn zeros(spec: &AnsatzSpec) -> Self {
        Self {
            thetas: vec![0.0; super::param_count(spec)],
            etas: vec![1.0; spec.eta_count()],
        }
    }

    /// θ uniform in [0, 2π), η = 1.
    pub fn random<R: Rng + ?Sized>(spec: &AnsatzSpec, rng: &mut R) -> Self {
        let thetas = (0..super::param_count(spec))
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        Self {
            thetas,
            etas: vec![1.0; spec.eta_count()],
        }
    }

    /// Concatenated optimization vector (θ then η).
    pub fn flatten(&self) -> Vec<f64> {
        self.thetas.iter().chain(&self.etas).copied().collect()
    }

    pub fn unflatten(spec: &AnsatzSpec, flat: &[f64]) -> Result<Self> {
        let n = super::param_count(spec);
        if flat.len() != n + spec.eta_count() {
            return Err(Error::validation(format!(
                "expected {} optimization variables, got {}",
                n + spec.eta_count(),
                flat.len()
            )));
        }
        Ok(Self {
            thetas: flat[..n].to_vec(),
            etas: flat[n..].to_vec(),
        })
    }

    pub fn check(&self, spec: &AnsatzSpec) -> Result<()> {
        let n = super::param_count(spec);
        if self.thetas.len() != n {
            return Err(Error::validation(format!(
                "{} ansatz needs {n} generator parameters, got {}",
                spec.kind,
                self.thetas.len()
            )));
        }
        if self.etas.len() != spec.eta_count() {
            return Err(Error::validation(format!(
                "rescaling mode {:?} needs {} factors, got {}",
                spec.encoding.rescaling(),
                spec.eta_count(),
                self.etas.len()
            )));
        }
        if self.thetas.iter().chain(&self.etas).any(|v| !v.is_finite()) {
            return Err(Error::validation("parameters must be finite"));
        }
        Ok(())
    }

    /// True when every rescaling factor is exactly 1.
    pub fn unit_rescaling(&self) -> bool {
        self.etas.iter().all(|&e| e == 1.0)
    }
}
