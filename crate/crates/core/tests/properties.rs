use proptest::prelude::*;

use qubit_bath::algebra::{max_abs, max_abs_diff, partial_trace_matrix, trace_of_product, DensityMatrix};
use qubit_bath::asymptotic::{
    reduced_protocol_state, rho_alpha, three_qubit_protocol_asymptote, two_qubit_alpha_asymptote, two_qubit_map,
};
use qubit_bath::dynamics::{evolve, vectorize};
use qubit_bath::entanglement::{concurrence_oracle, reduced_state_concurrence, thresholds, Radicand};
use qubit_bath::generator::{build_generator, EnvironmentParams};
use qubit_bath::protocol::{params_for_r, run_protocol_point, Method, Regime};
use qubit_bath::random::{random_density_matrix, seeded_rng};

fn env() -> impl Strategy<Value = EnvironmentParams> {
    (0.1..2.0f64, -0.95..0.95f64, 0.05..2.0f64, -3.0..3.0f64)
        .prop_map(|(a, r, c, omega)| EnvironmentParams::new(a, r * a, c, omega).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evolution_preserves_states(params in env(), seed in any::<u64>(), t in 0.0..5.0f64, n in 1usize..=3) {
        let rho = random_density_matrix(n, &mut seeded_rng(seed));
        let out = evolve(&vectorize(&build_generator(&params, n).unwrap()), &rho, t).unwrap();
        let m = out.matrix();
        prop_assert!((m.trace().re - 1.0).abs() < 1e-10);
        prop_assert!(qubit_bath::algebra::min_eigenvalue(m) > -1e-9);
    }

    #[test]
    fn generator_is_trace_annihilating(params in env(), seed in any::<u64>(), n in 1usize..=3) {
        let rho = random_density_matrix(n, &mut seeded_rng(seed));
        let out = build_generator(&params, n).unwrap().apply(rho.matrix());
        prop_assert!(out.trace().norm() < 1e-12);
    }

    #[test]
    fn asymptotic_maps_are_idempotent(params in env(), seed in any::<u64>()) {
        let rho = random_density_matrix(2, &mut seeded_rng(seed)).into_matrix();
        let once = two_qubit_map(&rho, &params);
        prop_assert!(max_abs_diff(&two_qubit_map(&once, &params), &once) < 1e-12);
        let gen = build_generator(&params, 2).unwrap();
        prop_assert!(max_abs(&gen.apply(&once)) < 1e-11);
    }

    #[test]
    fn protocol_asymptote_traces_to_reduced_state(alpha in 0.0..=1.0 / 3.0, params in env()) {
        let three = three_qubit_protocol_asymptote(alpha, &params).unwrap();
        let traced = partial_trace_matrix(three.matrix(), &[1, 2]).unwrap();
        let red = reduced_protocol_state(alpha, &params).unwrap();
        prop_assert!(max_abs_diff(&traced, red.state.matrix()) < 1e-12);
    }

    #[test]
    fn reduced_concurrence_closed_form(alpha in 0.0..=1.0 / 3.0, r in -0.999..0.999f64) {
        let red = reduced_protocol_state(alpha, &EnvironmentParams::from_r(r).unwrap()).unwrap();
        let oracle = concurrence_oracle(&red.state).unwrap().value;
        prop_assert!((oracle - reduced_state_concurrence(alpha, r, Radicand::Delta)).abs() < 1e-10);
    }

    #[test]
    fn concurrence_is_bounded_and_local_unitary_invariant(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let rho = random_density_matrix(2, &mut rng);
        let c = concurrence_oracle(&rho).unwrap().value;
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        let u = qubit_bath::algebra::kron(
            &qubit_bath::random::random_unitary(2, &mut rng),
            &qubit_bath::random::random_unitary(2, &mut rng),
        );
        let rotated = DensityMatrix::from_numeric(&u * rho.matrix() * u.adjoint()).unwrap();
        prop_assert!((concurrence_oracle(&rotated).unwrap().value - c).abs() < 1e-9);
    }

    #[test]
    fn asymptote_keeps_singlet_weight(alpha in 0.0..=1.0 / 3.0, params in env()) {
        let singlet = qubit_bath::algebra::singlet_projector();
        let before = trace_of_product(rho_alpha(alpha).unwrap().matrix(), &singlet).re;
        let after = trace_of_product(two_qubit_alpha_asymptote(alpha, &params).unwrap().matrix(), &singlet).re;
        prop_assert!((before - after).abs() < 1e-12);
    }

    #[test]
    fn thresholds_are_ordered(r in 0.0..=1.0f64) {
        let t = thresholds(r).unwrap();
        prop_assert!(t.alpha_plus <= t.alpha_minus + 1e-12);
        prop_assert!(t.alpha_gain <= t.alpha_sep + 1e-12);
    }
}

#[test]
fn regimes_are_exclusive_and_exhaustive() {
    for r in [0.0, 0.3, 0.6, 0.9, 0.97, 0.99] {
        let params = params_for_r(r).unwrap();
        let mut seen = Vec::new();
        for k in 0..=200 {
            let alpha = k as f64 / 600.0;
            let rec = run_protocol_point(alpha, &params, Method::Analytic).unwrap();
            let matches = Regime::ALL.iter().filter(|&&g| g == rec.regime).count();
            assert_eq!(matches, 1);
            seen.push(rec.regime);
        }
        assert!(seen.contains(&Regime::SingletPreserved));
    }
}

#[test]
fn reduced_concurrence_has_one_zero_window() {
    for r in [0.0, 0.5, 0.9, 0.99] {
        let t = thresholds(r).unwrap();
        let values: Vec<f64> = (0..=400)
            .map(|k| {
                let alpha = k as f64 / 1200.0;
                let red = reduced_protocol_state(alpha, &EnvironmentParams::from_r(r).unwrap()).unwrap();
                concurrence_oracle(&red.state).unwrap().value
            })
            .collect();
        let zero: Vec<usize> = (0..values.len()).filter(|&k| values[k] == 0.0).collect();
        if let (Some(&lo), Some(&hi)) = (zero.first(), zero.last()) {
            assert!(zero.iter().zip(lo..=hi).all(|(a, b)| *a == b), "zero set is not an interval at r = {r}");
            let alpha_lo = lo as f64 / 1200.0;
            assert!((alpha_lo - t.alpha_plus).abs() < 1.0 / 1200.0 + 1e-9);
        }
        for k in 1..values.len() {
            if k <= zero.first().copied().unwrap_or(values.len()) {
                assert!(values[k] <= values[k - 1] + 1e-12);
            } else if k > *zero.last().unwrap() {
                assert!(values[k] >= values[k - 1] - 1e-12);
            }
        }
    }
}
