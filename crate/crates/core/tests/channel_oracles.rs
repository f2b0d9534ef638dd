mod common;

use common::*;
use qmg_core::channels::{
    ad_correlated_kraus, build_channel, pauli_memory_kraus, pauli_prob_vector, verify_completeness,
    ChannelKind, ChannelSpec,
};
use qmg_core::linalg::{apply_kraus, validate_density, DensityMatrix, KrausSet, DIM};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn run(spec: ChannelSpec, rho: &Dense) -> Dense {
    let ks = build_channel(&spec).unwrap();
    to_dense(apply_kraus(&from_dense(rho.clone()), &ks).unwrap().matrix())
}

fn spec(kind: ChannelKind, p: f64, mu: f64) -> ChannelSpec {
    ChannelSpec::new(kind, p, mu).unwrap()
}

fn ad_single(p: f64) -> [[num_complex::Complex64; 4]; 2] {
    [
        [c(1., 0.), c(0., 0.), c(0., 0.), c((1.0 - p).sqrt(), 0.)],
        [c(0., 0.), c(p.sqrt(), 0.), c(0., 0.), c(0., 0.)],
    ]
}

fn single_pauli_ops(kind: ChannelKind, p: f64) -> Vec<[num_complex::Complex64; 4]> {
    let alpha = pauli_prob_vector(kind, p).unwrap().0;
    (0..4)
        .map(|k| scaled(single_pauli(k), alpha[k].sqrt()))
        .collect()
}

#[test]
fn full_depolarization_gives_maximally_mixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mixed = to_dense(DensityMatrix::maximally_mixed().matrix());
    for _ in 0..3 {
        let rho = random_density(&mut rng);
        let oracle = sequential_channel(&rho, &single_pauli_ops(ChannelKind::Depolarizing, 1.0));
        assert!(max_diff(&oracle, &mixed) < 1e-14);
        assert!(
            max_diff(
                &run(spec(ChannelKind::Depolarizing, 1.0, 0.0), &rho),
                &mixed
            ) < 1e-12
        );
    }
}

#[test]
fn certain_bit_flip_maps_ground_to_all_ones() {
    let rho = to_dense(DensityMatrix::basis_state(0).unwrap().matrix());
    let out = run(spec(ChannelKind::BitFlip, 1.0, 0.0), &rho);
    assert!(
        max_diff(
            &out,
            &to_dense(DensityMatrix::basis_state(15).unwrap().matrix())
        ) < 1e-15
    );
}

#[test]
fn full_damping_resets_register() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ground = to_dense(DensityMatrix::basis_state(0).unwrap().matrix());
    for _ in 0..3 {
        let rho = random_density(&mut rng);
        assert!(max_diff(&sequential_channel(&rho, &ad_single(1.0)), &ground) < 1e-14);
        assert!(
            max_diff(
                &run(spec(ChannelKind::AmplitudeDamping, 1.0, 0.0), &rho),
                &ground
            ) < 1e-12
        );
    }
}

#[test]
fn memoryless_pauli_matches_qubit_by_qubit_channel() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for kind in ChannelKind::PAULI {
        for p in [0.2, 0.65] {
            let rho = random_density(&mut rng);
            let oracle = sequential_channel(&rho, &single_pauli_ops(kind, p));
            assert!(
                max_diff(&run(spec(kind, p, 0.0), &rho), &oracle) < 1e-12,
                "{kind} p={p}"
            );
        }
    }
}

#[test]
fn fully_correlated_pauli_matches_global_error_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for kind in ChannelKind::PAULI {
        let p = 0.45;
        let alpha = pauli_prob_vector(kind, p).unwrap().0;
        let expected_ops = alpha.iter().filter(|&&a| a > 0.0).count();
        assert_eq!(
            pauli_memory_kraus(kind, p, 1.0).unwrap().len(),
            expected_ops
        );
        let rho = random_density(&mut rng);
        let mut oracle = vec![c(0., 0.); DIM * DIM];
        for (k, a) in alpha.iter().enumerate() {
            add_into(&mut oracle, &sandwich(&pauli_string([k; 4]), &rho), *a);
        }
        assert!(
            max_diff(&run(spec(kind, p, 1.0), &rho), &oracle) < 1e-12,
            "{kind}"
        );
    }
}

#[test]
fn partial_memory_matches_markov_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for kind in ChannelKind::PAULI {
        for (p, mu) in [(0.3, 0.3), (0.7, 0.6), (0.5, 0.9)] {
            let rho = random_density(&mut rng);
            let alpha = pauli_prob_vector(kind, p).unwrap().0;
            let oracle = markov_pauli_channel(&rho, alpha, mu);
            assert!(
                max_diff(&run(spec(kind, p, mu), &rho), &oracle) < 1e-12,
                "{kind} p={p} mu={mu}"
            );
        }
    }
}

#[test]
fn damping_is_memory_weighted_mixture() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (p, mu) in [(0.3, 0.0), (0.3, 0.4), (0.8, 0.75), (0.5, 1.0)] {
        let rho = random_density(&mut rng);
        let uncorrelated = sequential_channel(&rho, &ad_single(p));
        let mut keep = vec![c(0., 0.); DIM * DIM];
        for i in 0..DIM {
            keep[i * DIM + i] = c(1., 0.);
        }
        keep[0] = c((1.0 - p).sqrt(), 0.);
        let mut jump = vec![c(0., 0.); DIM * DIM];
        jump[15 * DIM] = c(p.sqrt(), 0.);
        let mut oracle = vec![c(0., 0.); DIM * DIM];
        add_into(&mut oracle, &uncorrelated, 1.0 - mu);
        add_into(&mut oracle, &sandwich(&keep, &rho), mu);
        add_into(&mut oracle, &sandwich(&jump, &rho), mu);
        let out = run(spec(ChannelKind::AmplitudeDamping, p, mu), &rho);
        assert!(max_diff(&out, &oracle) < 1e-12, "p={p} mu={mu}");
    }
}

#[test]
fn correlated_damping_leaves_states_without_ground_population() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ks = KrausSet::new(ad_correlated_kraus(0.6).unwrap().to_vec()).unwrap();
    for _ in 0..5 {
        let mut rho = random_density(&mut rng);
        for k in 0..DIM {
            rho[k] = c(0., 0.);
            rho[k * DIM] = c(0., 0.);
        }
        let tr: f64 = (0..DIM).map(|i| rho[i * DIM + i].re).sum();
        rho.iter_mut().for_each(|z| *z /= tr);
        let out = to_dense(apply_kraus(&from_dense(rho.clone()), &ks).unwrap().matrix());
        assert!(max_diff(&out, &rho) < 1e-15);
    }
}

/// Σ A†A built with the reference dense routines.
fn reference_completeness(ks: &KrausSet) -> f64 {
    let mut acc = vec![c(0., 0.); DIM * DIM];
    for op in ks.operators() {
        let a = to_dense(op);
        add_into(&mut acc, &mul(&dagger(&a), &a), 1.0);
    }
    let mut id = vec![c(0., 0.); DIM * DIM];
    for i in 0..DIM {
        id[i * DIM + i] = c(1., 0.);
    }
    max_diff(&acc, &id)
}

#[test]
fn completeness_on_coarse_grid() {
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    for kind in ChannelKind::ALL {
        for &p in &grid {
            for &mu in &grid {
                let ks = build_channel(&spec(kind, p, mu)).unwrap();
                let reference = reference_completeness(&ks);
                assert!(reference < 1e-10, "{kind} p={p} mu={mu}: {reference}");
                assert!((verify_completeness(&ks) - reference).abs() < 1e-13);
            }
        }
    }
    let dep = build_channel(&spec(ChannelKind::Depolarizing, 0.5, 0.5)).unwrap();
    assert!(reference_completeness(&dep) < 1e-12);
    let bpf = build_channel(&spec(ChannelKind::BitPhaseFlip, 0.4, 0.6)).unwrap();
    assert!(reference_completeness(&bpf) < 1e-12);
}

#[test]
fn cptp_on_fine_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let rho = from_dense(random_pure(&mut rng));
    for kind in ChannelKind::ALL {
        for i in 0..=10 {
            for j in 0..=10 {
                let (p, mu) = (i as f64 / 10.0, j as f64 / 10.0);
                let ks = build_channel(&spec(kind, p, mu)).unwrap();
                let out = apply_kraus(&rho, &ks).unwrap();
                let report = validate_density(&out);
                assert!(report.trace_residual < 1e-10, "{kind} p={p} mu={mu}");
                assert!(report.hermiticity_residual < 1e-12, "{kind} p={p} mu={mu}");
                assert!(
                    report.min_eigenvalue >= -1e-10,
                    "{kind} p={p} mu={mu}: {}",
                    report.min_eigenvalue
                );
            }
        }
    }
}

#[test]
fn pauli_channels_are_unital_and_damping_is_not() {
    let mixed = DensityMatrix::maximally_mixed();
    for p in [0.1, 0.5, 1.0] {
        for mu in [0.0, 0.3, 1.0] {
            for kind in ChannelKind::PAULI {
                let out = apply_kraus(&mixed, &build_channel(&spec(kind, p, mu)).unwrap()).unwrap();
                assert!(out.matrix().max_abs_diff(mixed.matrix()).unwrap() < 1e-12);
            }
            let ad = apply_kraus(
                &mixed,
                &build_channel(&spec(ChannelKind::AmplitudeDamping, p, mu)).unwrap(),
            )
            .unwrap();
            assert!(
                ad.matrix().max_abs_diff(mixed.matrix()).unwrap() > 1e-3,
                "p={p} mu={mu}"
            );
        }
    }
}
