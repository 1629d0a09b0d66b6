use num_complex::Complex64;
use proptest::prelude::*;
use qudit_fourier::numerics::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// H = V diag(λ) V† with V from Gram-Schmidt, independent of the eigensolver.
fn known_hermitian(n: usize, seed: u64) -> (ComplexMatrix, Vec<f64>) {
    let mut r = rng(seed);
    let v = random_unitary(n, &mut r);
    let mut lambda: Vec<f64> = (0..n).map(|_| r.gen_range(-3.0..3.0)).collect();
    let d = ComplexMatrix::from_real_diagonal(&lambda);
    lambda.sort_by(f64::total_cmp);
    (v.matmul(&d).matmul(&v.adjoint()), lambda)
}

fn traceless_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let h = random_hermitian(n, &mut rng(seed));
    let shift = h.trace() / n as f64;
    h.sub(&ComplexMatrix::identity(n).scale(shift))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigendecomposition_reconstructs(n in 1usize..=32, seed in any::<u64>()) {
        let (h, lambda) = known_hermitian(n, seed);
        let e = hermitian_eig(&h).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&h) <= 1e-9);
        prop_assert!(e.vectors.unitarity_residual() <= 1e-10);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        for (a, b) in e.values.iter().zip(&lambda) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn exponential_round_trip(n in 1usize..=16, seed in any::<u64>(), t in -4.0f64..4.0) {
        let h = random_hermitian(n, &mut rng(seed));
        let u = unitary_exp(&h, t).unwrap();
        let v = unitary_exp(&h, -t).unwrap();
        prop_assert!(u.unitarity_residual() <= 1e-10);
        prop_assert!(u.matmul(&v).max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
    }

    #[test]
    fn basis_spans_traceless_hermitian(n in 2usize..=9, seed in any::<u64>()) {
        let b = gellmann_basis(n).unwrap();
        let h = traceless_hermitian(n, seed);
        let coeffs = b.coefficients(&h);
        prop_assert!(b.combine(&coeffs).unwrap().max_abs_diff(&h) <= 1e-9);
    }

    #[test]
    fn trainable_exponentials_are_unitary(n in 2usize..=9, seed in any::<u64>()) {
        let b = gellmann_basis(n).unwrap();
        let mut r = rng(seed);
        let theta: Vec<f64> = (0..b.len()).map(|_| r.gen_range(0.0..std::f64::consts::TAU)).collect();
        prop_assert!(b.exponentiate(&theta).unwrap().unitarity_residual() <= 1e-10);
    }

    #[test]
    fn gate_chains_preserve_norm(
        d in 2usize..=3,
        qudits in 1usize..=3,
        seed in any::<u64>(),
        gates in 1usize..=8,
    ) {
        let mut r = rng(seed);
        let dim = d.pow(qudits as u32);
        let mut psi = StateVector::zero(dim);
        for _ in 0..gates {
            let k = r.gen_range(1..=qudits);
            let mut targets: Vec<usize> = (0..qudits).collect();
            for i in (1..targets.len()).rev() {
                targets.swap(i, r.gen_range(0..=i));
            }
            targets.truncate(k);
            let u = random_unitary(d.pow(k as u32), &mut r);
            apply_gate_in_place(&mut psi, &u, &targets, d).unwrap();
        }
        prop_assert!((psi.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn local_gate_equals_kron(seed in any::<u64>(), d in 2usize..=3) {
        let mut r = rng(seed);
        let u = random_unitary(d, &mut r);
        let amps: Vec<Complex64> = (0..d * d)
            .map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
            .collect();
        let psi = StateVector::from_amplitudes(amps);
        let a = apply_gate(&psi, &u, &[1], d).unwrap();
        let b = ComplexMatrix::identity(d).kron(&u).matvec(psi.amplitudes());
        for (x, y) in a.amplitudes().iter().zip(&b) {
            prop_assert!((x - y).norm() <= 1e-12);
        }
    }
}

#[test]
fn largest_register_dimension() {
    for (n, seed) in [(81usize, 1u64), (64, 2), (27, 3)] {
        let (h, _) = known_hermitian(n, seed);
        let e = hermitian_eig(&h).unwrap();
        assert!(e.reconstruct().max_abs_diff(&h) <= 1e-9, "n = {n}");
        assert!(e.vectors.unitarity_residual() <= 1e-10);
        let u = unitary_exp(&h, 0.7).unwrap();
        assert!(u.unitarity_residual() <= 1e-10);
    }
    let b = gellmann_basis(81).unwrap();
    assert_eq!(b.len(), 81 * 81 - 1);
    let h = traceless_hermitian(81, 4);
    assert!(b.combine(&b.coefficients(&h)).unwrap().max_abs_diff(&h) <= 1e-9);
}
