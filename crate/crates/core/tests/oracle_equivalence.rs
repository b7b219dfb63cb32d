use orbits_core::oracle::{
    evolve_state, partial_trace, random_density, random_pure_density, random_state,
    random_unit_vector, unitary_for,
};
use orbits_core::pauli::unitarity_defect;
use orbits_core::state::coherence_vector;
use orbits_core::{evolve, Axis, InteractionSpec, Subsystem, TwoQubitState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_spec(rng: &mut ChaCha8Rng, kind: usize) -> InteractionSpec {
    let angle = rng.random_range(-10.0..10.0);
    match kind {
        0 => InteractionSpec::Local {
            target: if rng.random_bool(0.5) {
                Subsystem::One
            } else {
                Subsystem::Two
            },
            axis: random_unit_vector(rng).into(),
            angle,
        },
        1 => InteractionSpec::OneDim {
            i: Axis::ALL[rng.random_range(0..3)],
            j: Axis::ALL[rng.random_range(0..3)],
            phi: angle,
        },
        2 => InteractionSpec::Heisenberg {
            c: rng.random_range(-3.0..3.0),
            phi: angle,
        },
        _ => InteractionSpec::Cartan {
            c: [
                angle,
                rng.random_range(-10.0..10.0),
                rng.random_range(-10.0..10.0),
            ],
        },
    }
}

#[test]
fn adjoint_updates_match_explicit_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for case in 0..200 {
        let s = random_state(&mut rng);
        let spec = random_spec(&mut rng, case % 4);
        let u = unitary_for(&spec).unwrap();
        assert!(unitarity_defect(&u) < 1e-12);
        let fast = evolve(&s, &spec).unwrap();
        let slow = evolve_state(&s, &spec).unwrap();
        worst = worst.max(fast.max_abs_diff(&slow));
    }
    assert!(worst < 1e-10, "worst componentwise deviation {worst:e}");
}

#[test]
fn pure_states_also_match() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..80 {
        let s = TwoQubitState::from_density(&random_pure_density(&mut rng));
        let spec = random_spec(&mut rng, case % 4);
        let fast = evolve(&s, &spec).unwrap();
        let slow = evolve_state(&s, &spec).unwrap();
        assert!(fast.max_abs_diff(&slow) < 1e-10);
        assert!((fast.global_purity() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn partial_traces_match_coherence_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let rho = random_density(&mut rng);
        let s = TwoQubitState::from_density(&rho);
        for sub in [Subsystem::One, Subsystem::Two] {
            let r = coherence_vector(&partial_trace(&rho, sub));
            assert!((r - s.coherence(sub)).amax() < 1e-12);
        }
    }
}

#[test]
fn composed_evolutions_match_product_of_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let s = random_state(&mut rng);
        let specs: Vec<_> = (0..4).map(|k| random_spec(&mut rng, k)).collect();
        let fast = specs
            .iter()
            .fold(s, |acc, spec| evolve(&acc, spec).unwrap());
        let u = specs
            .iter()
            .fold(orbits_core::Matrix4c::identity(), |acc, spec| {
                unitary_for(spec).unwrap() * acc
            });
        let rho = s.to_density().unwrap();
        let slow =
            TwoQubitState::from_density(&orbits_core::oracle::evolve_matrix(&rho, &u).unwrap());
        assert!(fast.max_abs_diff(&slow) < 1e-10);
    }
}
