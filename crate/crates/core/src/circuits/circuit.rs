use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{
    apply_gate_in_place, gellmann_basis, hermitian_eig, ComplexMatrix, EigenDecomposition,
    GeneratorBasis, StateVector,
};

use super::gates::{encoding_phases, spin_operators, trainable_gate};
use super::spec::{AnsatzKind, AnsatzSpec, ParameterVector, RescalingMode};

/// One diagonal encoding S(η x_m) on one qudit.
#[derive(Clone, Debug)]
pub(crate) struct EncodeSlot {
    pub qudit: usize,
    pub feature: usize,
    pub eta: f64,
}

#[derive(Clone, Debug)]
pub(crate) enum Step {
    /// Trainable unitary on the listed qudits (all of them for a full-register gate).
    Gate {
        unitary: ComplexMatrix,
        targets: Vec<usize>,
    },
    /// Simultaneous diagonal encodings on distinct qudits.
    Encode(Vec<EncodeSlot>),
    /// exp(i η x_m H) for a non-diagonal H acting on the single qudit.
    Evolve {
        generator: EigenDecomposition,
        feature: usize,
        eta: f64,
    },
}

/// Number of trainable generator parameters of the built circuit.
///
/// Line, parallel and mixed follow the closed forms (ML+1)(d²−1),
/// (d^{2M}−1)(L+1) and (d^{2p}−1)(⌈M/p⌉L+1).
pub fn param_count(spec: &AnsatzSpec) -> usize {
    let (d, m, l) = (spec.d, spec.features, spec.layers);
    let single = d * d - 1;
    match spec.kind {
        AnsatzKind::Line => (m * l + 1) * single,
        AnsatzKind::Parallel => (d.pow(2 * m as u32) - 1) * (l + 1),
        AnsatzKind::Mixed => (d.pow(2 * spec.block as u32) - 1) * (spec.blocks_per_layer() * l + 1),
        AnsatzKind::CollapsedLine | AnsatzKind::Noncommuting => (l + 1) * single,
        AnsatzKind::ProductParallel => (l + 1) * m * single,
    }
}

/// A circuit with every trainable gate materialized; cheap to evaluate at many inputs.
#[derive(Clone, Debug)]
pub struct Circuit {
    d: usize,
    qudits: usize,
    features: usize,
    eigenvalues: Vec<f64>,
    observable: Vec<f64>,
    steps: Vec<Step>,
}

struct Builder<'a> {
    spec: &'a AnsatzSpec,
    params: &'a ParameterVector,
    cursor: usize,
    encoding_index: usize,
    local_basis: Option<GeneratorBasis>,
    register_basis: Option<GeneratorBasis>,
    steps: Vec<Step>,
}

impl<'a> Builder<'a> {
    fn take(&mut self, n: usize) -> &'a [f64] {
        let out = &self.params.thetas[self.cursor..self.cursor + n];
        self.cursor += n;
        out
    }

    fn register_gate(&mut self) -> Result<()> {
        let dim = self.spec.dim();
        if self.register_basis.is_none() {
            self.register_basis = Some(gellmann_basis(dim)?);
        }
        let theta = self.take(dim * dim - 1);
        let unitary = trainable_gate(theta, self.register_basis.as_ref().unwrap())?;
        self.steps.push(Step::Gate {
            unitary,
            targets: (0..self.spec.qudits()).collect(),
        });
        Ok(())
    }

    fn local_gate(&mut self, qudit: usize) -> Result<()> {
        let d = self.spec.d;
        if self.local_basis.is_none() {
            self.local_basis = Some(gellmann_basis(d)?);
        }
        let theta = self.take(d * d - 1);
        let unitary = trainable_gate(theta, self.local_basis.as_ref().unwrap())?;
        self.steps.push(Step::Gate {
            unitary,
            targets: vec![qudit],
        });
        Ok(())
    }

    fn next_eta(&mut self, feature: usize) -> f64 {
        let g = self.encoding_index;
        self.encoding_index += 1;
        match self.spec.encoding.rescaling() {
            RescalingMode::None => 1.0,
            RescalingMode::Global => self.params.etas[0],
            RescalingMode::PerGate => self.params.etas[g],
            RescalingMode::PerFeature => self.params.etas[feature],
        }
    }

    fn encode(&mut self, assignments: impl IntoIterator<Item = (usize, usize)>) {
        let slots = assignments
            .into_iter()
            .map(|(qudit, feature)| EncodeSlot {
                qudit,
                feature,
                eta: self.next_eta(feature),
            })
            .collect();
        self.steps.push(Step::Encode(slots));
    }
}

impl Circuit {
    pub fn new(spec: &AnsatzSpec, params: &ParameterVector) -> Result<Self> {
        spec.validate()?;
        params.check(spec)?;
        let mut b = Builder {
            spec,
            params,
            cursor: 0,
            encoding_index: 0,
            local_basis: None,
            register_basis: None,
            steps: Vec::new(),
        };
        let (m, layers) = (spec.features, spec.layers);
        match spec.kind {
            AnsatzKind::Line => {
                b.register_gate()?;
                for _ in 0..layers {
                    for f in 0..m {
                        b.encode([(0, f)]);
                        b.register_gate()?;
                    }
                }
            }
            AnsatzKind::Parallel => {
                b.register_gate()?;
                for _ in 0..layers {
                    b.encode((0..m).map(|f| (f, f)));
                    b.register_gate()?;
                }
            }
            AnsatzKind::Mixed => {
                let p = spec.block;
                b.register_gate()?;
                for _ in 0..layers {
                    for block in 0..spec.blocks_per_layer() {
                        let lo = block * p;
                        let hi = (lo + p).min(m);
                        b.encode((lo..hi).map(|f| (f - lo, f)));
                        b.register_gate()?;
                    }
                }
            }
            AnsatzKind::CollapsedLine => {
                b.register_gate()?;
                for _ in 0..layers {
                    for f in 0..m {
                        b.encode([(0, f)]);
                    }
                    b.register_gate()?;
                }
            }
            AnsatzKind::ProductParallel => {
                for q in 0..m {
                    b.local_gate(q)?;
                }
                for _ in 0..layers {
                    b.encode((0..m).map(|f| (f, f)));
                    for q in 0..m {
                        b.local_gate(q)?;
                    }
                }
            }
            AnsatzKind::Noncommuting => {
                let [_, sy, sz] = spin_operators(spec.d)?;
                let gens = [hermitian_eig(&sy)?, hermitian_eig(&sz)?];
                b.register_gate()?;
                for _ in 0..layers {
                    for f in 0..m {
                        let eta = b.next_eta(f);
                        b.steps.push(Step::Evolve {
                            generator: gens[f % 2].clone(),
                            feature: f,
                            eta,
                        });
                    }
                    b.register_gate()?;
                }
            }
        }
        debug_assert_eq!(b.cursor, params.thetas.len());
        Ok(Self {
            d: spec.d,
            qudits: spec.qudits(),
            features: spec.features,
            eigenvalues: spec.encoding.eigenvalues().to_vec(),
            observable: spec.observable.clone(),
            steps: b.steps,
        })
    }

    pub fn dim(&self) -> usize {
        self.observable.len()
    }

    pub fn qudits(&self) -> usize {
        self.qudits
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn features(&self) -> usize {
        self.features
    }

    pub fn observable(&self) -> &[f64] {
        &self.observable
    }

    pub(crate) fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub(crate) fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Digit of qudit `q` in basis index `i` (qudit 0 most significant).
    pub(crate) fn digit(&self, i: usize, q: usize) -> usize {
        (i / self.d.pow((self.qudits - 1 - q) as u32)) % self.d
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.features {
            return Err(Error::validation(format!(
                "input has {} features, circuit expects {}",
                x.len(),
                self.features
            )));
        }
        Ok(())
    }

    pub fn state(&self, x: &[f64]) -> Result<StateVector> {
        self.check_input(x)?;
        let mut psi = StateVector::zero(self.dim());
        for step in &self.steps {
            match step {
                Step::Gate { unitary, targets } => {
                    apply_gate_in_place(&mut psi, unitary, targets, self.d)?;
                }
                Step::Encode(slots) => {
                    let tables: Vec<(usize, Vec<Complex64>)> = slots
                        .iter()
                        .map(|s| (s.qudit, encoding_phases(x[s.feature] * s.eta, &self.eigenvalues)))
                        .collect();
                    for (i, amp) in psi.amplitudes_mut().iter_mut().enumerate() {
                        for (q, table) in &tables {
                            *amp *= table[(i / self.d.pow((self.qudits - 1 - q) as u32)) % self.d];
                        }
                    }
                }
                Step::Evolve { generator, feature, eta } => {
                    let angle = x[*feature] * eta;
                    let u = generator.map_spectrum(|l| Complex64::from_polar(1.0, angle * l));
                    let targets: Vec<usize> = (0..self.qudits).collect();
                    apply_gate_in_place(&mut psi, &u, &targets, self.d)?;
                }
            }
        }
        Ok(psi)
    }

    /// ⟨ψ|𝓜|ψ⟩ before discarding the (vanishing) imaginary part.
    pub fn expectation_complex(&self, x: &[f64]) -> Result<Complex64> {
        Ok(self.state(x)?.diagonal_expectation(&self.observable))
    }

    pub fn expectation(&self, x: &[f64]) -> Result<f64> {
        Ok(self.expectation_complex(x)?.re)
    }
}

/// State prepared by the circuit on input `x`.
pub fn build_state(spec: &AnsatzSpec, params: &ParameterVector, x: &[f64]) -> Result<StateVector> {
    Circuit::new(spec, params)?.state(x)
}

/// Model output ⟨𝓜(x)⟩.
pub fn expectation(spec: &AnsatzSpec, params: &ParameterVector, x: &[f64]) -> Result<f64> {
    Circuit::new(spec, params)?.expectation(x)
}

/// Embed a gate on `targets` into the full register as a dense matrix.
pub(crate) fn embed_gate(
    unitary: &ComplexMatrix,
    targets: &[usize],
    d: usize,
    qudits: usize,
) -> Result<ComplexMatrix> {
    let dim = d.pow(qudits as u32);
    if targets.len() == qudits && targets.iter().enumerate().all(|(i, &t)| i == t) {
        return Ok(unitary.clone());
    }
    let mut cols = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[j] = Complex64::new(1.0, 0.0);
        let mut e = StateVector::from_amplitudes(amps);
        apply_gate_in_place(&mut e, unitary, targets, d)?;
        cols.push(e.into_amplitudes());
    }
    Ok(ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i]))
}
