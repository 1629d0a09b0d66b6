use std::f64::consts::TAU;

use proptest::prelude::*;
use qudit_fourier::circuits::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kind_strategy() -> impl Strategy<Value = AnsatzKind> {
    prop::sample::select(AnsatzKind::ALL.to_vec())
}

fn small_spec(kind: AnsatzKind, d: usize, m: usize, l: usize) -> AnsatzSpec {
    let p = if kind == AnsatzKind::Mixed { m.min(2) } else { 1 };
    AnsatzSpec::new(kind, d, m, l, p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn states_stay_normalized_and_outputs_bounded(
        kind in kind_strategy(),
        d in 2usize..=3,
        m in 1usize..=3,
        l in 1usize..=2,
        seed in any::<u64>(),
        x in prop::collection::vec(-10.0f64..10.0, 3),
    ) {
        let spec = small_spec(kind, d, m, l);
        let params = ParameterVector::random(&spec, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(params.thetas.len(), param_count(&spec));
        let c = Circuit::new(&spec, &params).unwrap();
        let psi = c.state(&x[..m]).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() <= 1e-10);
        let z = c.expectation_complex(&x[..m]).unwrap();
        prop_assert!(z.im.abs() <= 1e-12);
        let (lo, hi) = spec.observable.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        prop_assert!(z.re >= lo - 1e-12 && z.re <= hi + 1e-12);
    }

    #[test]
    fn outputs_are_two_pi_periodic(
        kind in prop::sample::select(vec![AnsatzKind::Line, AnsatzKind::Parallel, AnsatzKind::Mixed, AnsatzKind::ProductParallel]),
        m in 1usize..=3,
        seed in any::<u64>(),
        x in prop::collection::vec(-5.0f64..5.0, 3),
        axis in 0usize..3,
    ) {
        // integer spectrum at η = 1
        let spec = small_spec(kind, 2, m, 1);
        let params = ParameterVector::random(&spec, &mut ChaCha8Rng::seed_from_u64(seed));
        let c = Circuit::new(&spec, &params).unwrap();
        let mut shifted = x[..m].to_vec();
        shifted[axis % m] += TAU;
        prop_assert!((c.expectation(&x[..m]).unwrap() - c.expectation(&shifted).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn collapsed_line_sees_only_the_sum(
        d in 2usize..=3,
        l in 1usize..=3,
        seed in any::<u64>(),
        a in -6.0f64..6.0,
        b in -6.0f64..6.0,
    ) {
        let spec = small_spec(AnsatzKind::CollapsedLine, d, 2, l);
        let params = ParameterVector::random(&spec, &mut ChaCha8Rng::seed_from_u64(seed));
        let c = Circuit::new(&spec, &params).unwrap();
        let f = c.expectation(&[a, b]).unwrap();
        prop_assert!((f - c.expectation(&[b, a]).unwrap()).abs() <= 1e-12);
        prop_assert!((f - c.expectation(&[a + b, 0.0]).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn flatten_round_trip(
        kind in kind_strategy(),
        m in 1usize..=3,
        mode in prop::sample::select(vec![RescalingMode::None, RescalingMode::Global, RescalingMode::PerGate, RescalingMode::PerFeature]),
        seed in any::<u64>(),
    ) {
        let spec = small_spec(kind, 2, m, 2).with_rescaling(mode);
        let params = ParameterVector::random(&spec, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(params.etas.len(), spec.eta_count());
        let back = ParameterVector::unflatten(&spec, &params.flatten()).unwrap();
        prop_assert_eq!(back, params);
    }
}
