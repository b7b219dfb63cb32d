use std::f64::consts::{FRAC_PI_2, PI, TAU};

use orbits_core::ellipse::{chi_closed_form, fit_one_dim, heisenberg_ellipse, semi_minor_product};
use orbits_core::evolution::heisenberg_orbit_vectors;
use orbits_core::oracle::{
    random_classically_correlated, random_density, random_product, random_pure_product,
    random_state,
};
use orbits_core::{
    apply_cartan, apply_heisenberg, apply_one_dim, Axis, Degeneracy, Subsystem, TwoQubitState,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn axis() -> impl Strategy<Value = Axis> {
    prop::sample::select(Axis::ALL.to_vec())
}

fn subsystem() -> impl Strategy<Value = Subsystem> {
    prop::sample::select(vec![Subsystem::One, Subsystem::Two])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn density_round_trip(seed in any::<u64>()) {
        let rho = random_density(&mut rng(seed));
        let s = TwoQubitState::from_density(&rho);
        let back = s.to_density().unwrap();
        prop_assert!((back.matrix() - rho.matrix()).camax() < 1e-14);
        prop_assert!(TwoQubitState::from_density(&back).max_abs_diff(&s) < 1e-14);
    }

    #[test]
    fn purities_are_bounded(seed in any::<u64>()) {
        let s = random_state(&mut rng(seed));
        for sub in [Subsystem::One, Subsystem::Two] {
            let p = s.subsystem_purity(sub);
            prop_assert!((0.5 - 1e-10..=1.0 + 1e-10).contains(&p));
            let e = s.linear_entropy(sub);
            prop_assert!((-1e-10..=0.5 + 1e-10).contains(&e));
        }
        let g = s.global_purity();
        prop_assert!((0.25 - 1e-10..=1.0 + 1e-10).contains(&g));
    }

    #[test]
    fn one_dim_conserves_rotating_blocks(seed in any::<u64>(), i in axis(), j in axis(), phi in -20.0f64..20.0) {
        let s = random_state(&mut rng(seed));
        let e = apply_one_dim(&s, i, j, phi);
        let (k, l) = (i.prev(), i.next());
        let (m, n) = (j.prev(), j.next());
        let block1 = |s: &TwoQubitState| {
            (s.r1[k.index()].powi(2) + s.r1[l.index()].powi(2)
                + s.t[(k.index(), j.index())].powi(2) + s.t[(l.index(), j.index())].powi(2)).sqrt()
        };
        let block2 = |s: &TwoQubitState| {
            (s.r2[m.index()].powi(2) + s.r2[n.index()].powi(2)
                + s.t[(i.index(), m.index())].powi(2) + s.t[(i.index(), n.index())].powi(2)).sqrt()
        };
        prop_assert!((block1(&e) - block1(&s)).abs() < 1e-12);
        prop_assert!((block2(&e) - block2(&s)).abs() < 1e-12);
        prop_assert!((e.r1[i.index()] - s.r1[i.index()]).abs() < 1e-15);
        prop_assert!((e.r2[j.index()] - s.r2[j.index()]).abs() < 1e-15);
        prop_assert!((e.global_purity() - s.global_purity()).abs() < 1e-12);
    }

    #[test]
    fn heisenberg_conserves_symmetric_parts(seed in any::<u64>(), c in -3.0f64..3.0, phi in -10.0f64..10.0) {
        let s = random_state(&mut rng(seed));
        let e = apply_heisenberg(&s, c, phi);
        for a in 0..3 {
            prop_assert!((e.r1[a] + e.r2[a] - s.r1[a] - s.r2[a]).abs() < 1e-12);
            prop_assert!((e.t[(a, a)] - s.t[(a, a)]).abs() < 1e-12);
            for b in 0..3 {
                let sym = |s: &TwoQubitState| s.t[(a, b)] + s.t[(b, a)];
                prop_assert!((sym(&e) - sym(&s)).abs() < 1e-12);
            }
        }
        prop_assert!((e.global_purity() - s.global_purity()).abs() < 1e-12);
        let (r, sw, v) = heisenberg_orbit_vectors(&s);
        let normal = sw.cross(&v);
        if normal.norm() > 1e-6 {
            let off1 = (e.r1 - r).dot(&normal.normalize()).abs();
            let off2 = (e.r2 - r).dot(&normal.normalize()).abs();
            prop_assert!(off1 < 1e-10 && off2 < 1e-10);
        }
    }

    #[test]
    fn cartan_with_rational_rates_is_periodic(seed in any::<u64>(), scale in 0.2f64..3.0) {
        let s = random_state(&mut rng(seed));
        let rates = [1.0 * scale, 0.5 * scale, scale / 3.0];
        let period = 12.0 * PI / scale;
        let e = apply_cartan(&s, rates[0] * period, rates[1] * period, rates[2] * period);
        prop_assert!(e.max_abs_diff(&s) < 1e-9);
    }

    #[test]
    fn one_dim_ellipse_reconstructs_orbit(seed in any::<u64>(), i in axis(), j in axis(), sub in subsystem()) {
        let s = random_state(&mut rng(seed));
        let e = fit_one_dim(&s, sub, i, j);
        prop_assert!(e.a >= e.b && e.b >= 0.0);
        prop_assert!(e.chi > -FRAC_PI_2 - 1e-15 && e.chi <= FRAC_PI_2 + 1e-15);
        for k in 0..64 {
            let phi = TAU * k as f64 / 64.0;
            let actual = apply_one_dim(&s, i, j, phi).coherence(sub);
            prop_assert!((e.position(phi) - actual).amax() < 1e-9);
        }
    }

    #[test]
    fn heisenberg_ellipse_reconstructs_orbit(seed in any::<u64>(), c in -3.0f64..3.0, sub in subsystem()) {
        let s = random_state(&mut rng(seed));
        let e = heisenberg_ellipse(&s, sub, c).unwrap();
        prop_assert!(e.a >= e.b);
        for k in 0..64 {
            let phi = 2.0 * TAU * k as f64 / 64.0;
            let actual = apply_heisenberg(&s, c, phi).coherence(sub);
            prop_assert!((e.position(phi) - actual).amax() < 1e-9);
        }
    }

    #[test]
    fn product_states_start_on_major_axis(seed in any::<u64>(), i in axis(), j in axis(), sub in subsystem()) {
        let s = random_product(&mut rng(seed));
        let e = fit_one_dim(&s, sub, i, j);
        prop_assert!(e.chi.abs() < 1e-9);
        let b = semi_minor_product(&s, sub, i, j).unwrap();
        prop_assert!((b - e.b).abs() < 1e-10);
        let p0 = s.subsystem_purity(sub);
        for k in 0..=256 {
            let phi = TAU * k as f64 / 256.0;
            prop_assert!(apply_one_dim(&s, i, j, phi).subsystem_purity(sub) <= p0 + 1e-10);
        }
    }

    #[test]
    fn closed_form_phase_agrees_with_fit(seed in any::<u64>(), i in axis(), j in axis(), sub in subsystem()) {
        let s = random_state(&mut rng(seed));
        let e = fit_one_dim(&s, sub, i, j);
        if e.degeneracy == Degeneracy::None && e.a - e.b > 1e-6 {
            let chi = chi_closed_form(&s, sub, i, j).unwrap();
            prop_assert!((chi - e.chi).abs() < 1e-9, "closed {} fit {}", chi, e.chi);
        }
    }
}

#[test]
fn pure_product_entropy_peaks_at_quarter_periods() {
    let mut r = rng(31);
    let grid = 2048;
    for _ in 0..20 {
        let s = random_pure_product(&mut r);
        let (i, j) = (Axis::ALL[0], Axis::ALL[2]);
        let entropy: Vec<f64> = (0..grid)
            .map(|k| {
                apply_one_dim(&s, i, j, TAU * k as f64 / grid as f64).linear_entropy(Subsystem::One)
            })
            .collect();
        let peak = entropy.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for (k, &e) in entropy.iter().enumerate() {
            if e > peak - 1e-12 {
                let phi = TAU * k as f64 / grid as f64;
                let near = (phi - FRAC_PI_2).abs().min((phi - 3.0 * FRAC_PI_2).abs());
                assert!(near <= PI / 512.0, "entropy peak at {phi}");
            }
        }
    }
}

#[test]
fn correlated_states_can_gain_or_lose_purity() {
    let mut r = rng(32);
    let (mut up, mut down) = (0, 0);
    for _ in 0..200 {
        let s = random_state(&mut r);
        let p0 = s.subsystem_purity(Subsystem::One);
        let p = apply_one_dim(&s, Axis::Y, Axis::X, 0.3).subsystem_purity(Subsystem::One);
        if p > p0 + 1e-9 {
            up += 1;
        } else if p < p0 - 1e-9 {
            down += 1;
        }
    }
    assert!(up > 0 && down > 0);
}

#[test]
fn classically_correlated_conditioned_qubit_has_phase() {
    let mut r = rng(33);
    let nonzero = (0..50)
        .map(|_| random_classically_correlated(&mut r))
        .filter(|s| fit_one_dim(s, Subsystem::Two, Axis::Z, Axis::X).chi.abs() > 1e-3)
        .count();
    assert!(nonzero > 25);
}

#[test]
fn irrational_cartan_rates_do_not_recur() {
    let mut r = rng(34);
    let s = random_state(&mut r);
    let rates = [1.0, 2f64.sqrt(), 3f64.sqrt()];
    let steps = 20 * 400;
    let closest = (1..=steps)
        .map(|k| {
            let t = 20.0 * TAU * k as f64 / steps as f64;
            apply_cartan(&s, rates[0] * t, rates[1] * t, rates[2] * t).max_abs_diff(&s)
        })
        .fold(f64::INFINITY, f64::min);
    assert!(closest > 1e-3, "closest approach {closest:e}");
}
