//! Encoding and trainable gates, the data re-uploading ansatzes, and model
//! expectation values.

mod circuit;
mod gates;
mod spec;

pub(crate) use circuit::{embed_gate, Step};
pub use circuit::{build_state, expectation, param_count, Circuit};
pub use gates::{encoding_gate, spin_eigenvalues, spin_operators, trainable_gate};
pub use spec::{
    default_single_observable, extend_observable, AnsatzKind, AnsatzSpec, EncodingSpec,
    ParameterVector, RescalingMode,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{gellmann_basis, ComplexMatrix};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{PI, TAU};

    fn spec_of(kind: AnsatzKind, d: usize, m: usize, l: usize, p: usize) -> AnsatzSpec {
        AnsatzSpec::new(kind, d, m, l, p).unwrap()
    }

    /// Dense full-register unitary built from the textual layer definitions.
    fn dense_unitary(spec: &AnsatzSpec, params: &ParameterVector, x: &[f64]) -> ComplexMatrix {
        let d = spec.d;
        let n = spec.qudits();
        let dim = spec.dim();
        let reg = gellmann_basis(dim).unwrap();
        let loc = gellmann_basis(d).unwrap();
        let mut cursor = 0;
        let mut next_gate = |basis: &crate::numerics::GeneratorBasis| {
            let k = basis.len();
            let g = trainable_gate(&params.thetas[cursor..cursor + k], basis).unwrap();
            cursor += k;
            g
        };
        let s = |xm: f64| encoding_gate(xm, &spec.encoding, 1.0).unwrap();
        let tensor = |parts: Vec<ComplexMatrix>| {
            parts
                .into_iter()
                .reduce(|a, b| a.kron(&b))
                .unwrap()
        };
        let mut u = ComplexMatrix::identity(dim);
        let push = |u: &mut ComplexMatrix, g: ComplexMatrix| *u = g.matmul(u);
        match spec.kind {
            AnsatzKind::Line => {
                push(&mut u, next_gate(&reg));
                for _ in 0..spec.layers {
                    for &xm in x {
                        push(&mut u, s(xm));
                        push(&mut u, next_gate(&reg));
                    }
                }
            }
            AnsatzKind::Parallel => {
                push(&mut u, next_gate(&reg));
                for _ in 0..spec.layers {
                    push(&mut u, tensor(x.iter().map(|&xm| s(xm)).collect()));
                    push(&mut u, next_gate(&reg));
                }
            }
            AnsatzKind::Mixed => {
                let p = spec.block;
                push(&mut u, next_gate(&reg));
                for _ in 0..spec.layers {
                    for chunk in x.chunks(p) {
                        let mut parts: Vec<ComplexMatrix> = chunk.iter().map(|&xm| s(xm)).collect();
                        while parts.len() < n {
                            parts.push(ComplexMatrix::identity(d));
                        }
                        push(&mut u, tensor(parts));
                        push(&mut u, next_gate(&reg));
                    }
                }
            }
            AnsatzKind::ProductParallel => {
                let layer = |next: &mut dyn FnMut(&crate::numerics::GeneratorBasis) -> ComplexMatrix| {
                    tensor((0..n).map(|_| next(&loc)).collect())
                };
                push(&mut u, layer(&mut next_gate));
                for _ in 0..spec.layers {
                    push(&mut u, tensor(x.iter().map(|&xm| s(xm)).collect()));
                    push(&mut u, layer(&mut next_gate));
                }
            }
            _ => unreachable!(),
        }
        u
    }

    #[test]
    fn param_count_formulas() {
        assert_eq!(param_count(&spec_of(AnsatzKind::Line, 2, 2, 2, 1)), 15);
        assert_eq!(param_count(&spec_of(AnsatzKind::Parallel, 2, 2, 2, 1)), 45);
        assert_eq!(param_count(&spec_of(AnsatzKind::Mixed, 2, 4, 1, 2)), 45);
        for d in 2..=4 {
            for l in 1..=5 {
                let line = param_count(&spec_of(AnsatzKind::Line, d, 1, l, 1));
                let par = param_count(&spec_of(AnsatzKind::Parallel, d, 1, l, 1));
                assert_eq!(line, par);
                assert_eq!(line, (l + 1) * (d * d - 1));
            }
        }
    }

    #[test]
    fn identity_processing_line() {
        let spec = spec_of(AnsatzKind::Line, 2, 1, 1, 1);
        let params = ParameterVector::zeros(&spec);
        for x in [0.0, 0.4, 2.0, -5.0] {
            let psi = build_state(&spec, &params, &[x]).unwrap();
            assert!((psi.amplitudes()[0].norm() - 1.0).abs() < 1e-15);
            assert!((psi.amplitudes()[0] - Complex64::from_polar(1.0, 0.5 * x)).norm() < 1e-15);
        }
        for l in 1..=4 {
            let spec = spec_of(AnsatzKind::Line, 2, 1, l, 1);
            let params = ParameterVector::zeros(&spec);
            for x in [0.1, 1.7, 3.3] {
                assert!((expectation(&spec, &params, &[x]).unwrap() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn identity_processing_parallel_product_state() {
        let spec = spec_of(AnsatzKind::Parallel, 2, 2, 1, 1);
        let params = ParameterVector::zeros(&spec);
        let (a, b) = (0.7, -1.3);
        let psi = build_state(&spec, &params, &[a, b]).unwrap();
        let expected = Complex64::from_polar(1.0, 0.5 * a + 0.5 * b);
        assert!((psi.amplitudes()[0] - expected).norm() < 1e-15);
        assert!((psi.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn norm_preserved_every_kind() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for kind in AnsatzKind::ALL {
            let spec = spec_of(kind, 2, 3, 2, 2);
            let params = ParameterVector::random(&spec, &mut rng);
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-PI..PI)).collect();
            let psi = build_state(&spec, &params, &x).unwrap();
            assert!((psi.norm() - 1.0).abs() <= 1e-10, "{kind}");
        }
    }

    #[test]
    fn matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let cases = [
            spec_of(AnsatzKind::Line, 2, 2, 2, 1),
            spec_of(AnsatzKind::Line, 3, 1, 2, 1),
            spec_of(AnsatzKind::Parallel, 2, 2, 1, 1),
            spec_of(AnsatzKind::Mixed, 2, 3, 1, 2),
            spec_of(AnsatzKind::ProductParallel, 2, 2, 2, 1),
        ];
        for spec in cases {
            let params = ParameterVector::random(&spec, &mut rng);
            let x: Vec<f64> = (0..spec.features).map(|_| rng.gen_range(-PI..PI)).collect();
            let u = dense_unitary(&spec, &params, &x);
            let psi0: Vec<Complex64> = (0..spec.dim()).map(|i| u[(i, 0)]).collect();
            let oracle: f64 = psi0.iter().zip(&spec.observable).map(|(a, m)| m * a.norm_sqr()).sum();
            let got = expectation(&spec, &params, &x).unwrap();
            assert!((got - oracle).abs() <= 1e-12, "{}: {got} vs {oracle}", spec.kind);
        }
    }

    #[test]
    fn observable_shift_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let spec = spec_of(AnsatzKind::Parallel, 2, 2, 1, 1);
        let params = ParameterVector::random(&spec, &mut rng);
        let shifted_obs: Vec<f64> = spec.observable.iter().map(|v| v + 0.75).collect();
        let shifted = spec.clone().with_observable(shifted_obs).unwrap();
        let x = [0.2, 1.1];
        let a = expectation(&spec, &params, &x).unwrap();
        let b = expectation(&shifted, &params, &x).unwrap();
        assert!((b - a - 0.75).abs() <= 1e-14);
    }

    #[test]
    fn expectation_bounded_by_observable() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let spec = spec_of(AnsatzKind::Line, 3, 2, 2, 1);
        for _ in 0..20 {
            let params = ParameterVector::random(&spec, &mut rng);
            let x = [rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)];
            let v = expectation(&spec, &params, &x).unwrap();
            assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&v));
        }
    }

    #[test]
    fn periodicity_in_each_feature() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for (kind, mode) in [
            (AnsatzKind::Line, RescalingMode::None),
            (AnsatzKind::Parallel, RescalingMode::Global),
            (AnsatzKind::Mixed, RescalingMode::PerFeature),
        ] {
            let spec = spec_of(kind, 2, 2, 2, 1).with_rescaling(mode);
            let mut params = ParameterVector::random(&spec, &mut rng);
            let eta = if mode == RescalingMode::None { 1.0 } else { 0.8 };
            for e in params.etas.iter_mut() {
                *e = eta;
            }
            let x = [0.3, -1.2];
            let f0 = expectation(&spec, &params, &x).unwrap();
            for m in 0..2 {
                let mut y = x;
                y[m] += TAU / eta;
                let f1 = expectation(&spec, &params, &y).unwrap();
                assert!((f0 - f1).abs() <= 1e-12, "{kind} feature {m}");
            }
        }
    }

    #[test]
    fn collapsed_line_depends_on_sum_only() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let spec = spec_of(AnsatzKind::CollapsedLine, 2, 2, 3, 1);
        for _ in 0..20 {
            let params = ParameterVector::random(&spec, &mut rng);
            let (a, b) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let c = Circuit::new(&spec, &params).unwrap();
            let fab = c.expectation(&[a, b]).unwrap();
            assert!((fab - c.expectation(&[b, a]).unwrap()).abs() <= 1e-12);
            assert!((fab - c.expectation(&[a + b, 0.0]).unwrap()).abs() <= 1e-12);
        }
    }

    #[test]
    fn rescaling_modes_route_etas() {
        // per-gate factors equal to a per-feature pattern reproduce the per-feature model
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let base = spec_of(AnsatzKind::Line, 2, 2, 2, 1);
        let per_feature = base.clone().with_rescaling(RescalingMode::PerFeature);
        let per_gate = base.clone().with_rescaling(RescalingMode::PerGate);
        let mut pf = ParameterVector::random(&per_feature, &mut rng);
        pf.etas = vec![0.5, 1.5];
        let pg = ParameterVector::new(pf.thetas.clone(), vec![0.5, 1.5, 0.5, 1.5]);
        let x = [0.9, -0.4];
        let a = expectation(&per_feature, &pf, &x).unwrap();
        let b = expectation(&per_gate, &pg, &x).unwrap();
        assert!((a - b).abs() <= 1e-14);
        // global η = ½ equals halving the inputs
        let global = base.clone().with_rescaling(RescalingMode::Global);
        let g = ParameterVector::new(pf.thetas.clone(), vec![0.5]);
        let plain = ParameterVector::new(pf.thetas.clone(), vec![]);
        let c = expectation(&global, &g, &x).unwrap();
        let d = expectation(&base, &plain, &[0.45, -0.2]).unwrap();
        assert!((c - d).abs() <= 1e-14);
    }

    #[test]
    fn mismatched_inputs_rejected() {
        let spec = spec_of(AnsatzKind::Line, 2, 2, 1, 1);
        let params = ParameterVector::zeros(&spec);
        assert!(expectation(&spec, &params, &[0.0]).is_err());
        let short = ParameterVector::new(vec![0.0; 3], vec![]);
        assert!(expectation(&spec, &short, &[0.0, 0.0]).is_err());
        let with_eta = ParameterVector::new(params.thetas.clone(), vec![1.0]);
        assert!(expectation(&spec, &with_eta, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn noncommuting_generators_do_not_commute() {
        let [_, sy, sz] = spin_operators(2).unwrap();
        let comm = sy.matmul(&sz).sub(&sz.matmul(&sy));
        assert!(comm.max_abs() > 0.1);
        let spec = spec_of(AnsatzKind::Noncommuting, 2, 2, 1, 1);
        assert_eq!(param_count(&spec), 6);
        let params = ParameterVector::zeros(&spec);
        // θ = 0: S_y rotation then S_z phase; ⟨σ_z⟩ = cos(x₁)
        let v = expectation(&spec, &params, &[0.6, 1.9]).unwrap();
        assert!((v - 0.6f64.cos()).abs() < 1e-14);
    }
}
