//! Indirect control of qubit 1 (the system `S`) through qubit 2 (the
//! controller `Q`), and the entangling power of the exchange interaction.
//!
//! With full local control of `Q` and a single interaction `σ_i⊗σ_j`, the
//! coherence vector of `S` keeps its `i` component and is confined to an
//! elliptical disk in the `(k, l)` plane: semi-major axis `a = |r_S^⊥|` along the
//! initial in-plane projection, semi-minor axis `b = 2 |r_Q| a`.

use nalgebra::{Vector2, Vector3};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ellipse::POINT_TOL;
use crate::error::{Error, Result};
use crate::evolution::{apply_heisenberg, apply_local, apply_one_dim};
use crate::oracle::random_unit_vector;
use crate::pauli::Axis;
use crate::state::{Subsystem, TwoQubitState};

/// Marginal norm below which a qubit counts as maximally mixed.
pub const MIXED_TOL: f64 = 1e-8;
/// Distance from 1 within which the global state counts as pure.
pub const PURE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReachableDisk {
    /// Interaction axis on `S`; its coherence component is conserved.
    pub fixed_axis: Axis,
    pub fixed_component: f64,
    /// In-plane axes `(k, l)`, with `(i, l, k)` cyclic.
    pub axes: [Axis; 2],
    pub a: f64,
    pub b: f64,
    /// Unit direction of the `a` axis in `(k, l)` coordinates.
    pub orientation: [f64; 2],
}

impl ReachableDisk {
    fn in_plane(&self, r: &Vector3<f64>) -> Vector2<f64> {
        Vector2::new(r[self.axes[0].index()], r[self.axes[1].index()])
    }

    /// Coordinates of `r` along the `a` and `b` axes.
    pub fn principal_coordinates(&self, r: &Vector3<f64>) -> (f64, f64) {
        let p = self.in_plane(r);
        let [ox, oy] = self.orientation;
        (p.x * ox + p.y * oy, -p.x * oy + p.y * ox)
    }

    /// `(x/a)² + (y/b)²` for the in-plane part of `r`. Degenerate axes admit only
    /// points within `POINT_TOL` of them; anything else is `+∞`.
    pub fn ellipse_value(&self, r: &Vector3<f64>) -> f64 {
        let (x, y) = self.principal_coordinates(r);
        let term = |v: f64, len: f64| {
            if len >= POINT_TOL {
                (v / len).powi(2)
            } else if v.abs() <= POINT_TOL {
                0.0
            } else {
                f64::INFINITY
            }
        };
        term(x, self.a) + term(y, self.b)
    }

    /// Largest extent of the disk along the in-plane direction `theta`, measured
    /// from the `k` axis.
    pub fn support(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let [ox, oy] = self.orientation;
        let along = c * ox + s * oy;
        let across = -c * oy + s * ox;
        ((self.a * along).powi(2) + (self.b * across).powi(2)).sqrt()
    }

    /// Point on the boundary at parameter `t`.
    pub fn boundary_point(&self, t: f64) -> Vector3<f64> {
        let (s, c) = t.sin_cos();
        let [ox, oy] = self.orientation;
        let x = self.a * c;
        let y = self.b * s;
        let mut r = Vector3::zeros();
        r[self.fixed_axis.index()] = self.fixed_component;
        r[self.axes[0].index()] = x * ox - y * oy;
        r[self.axes[1].index()] = x * oy + y * ox;
        r
    }
}

fn require_product(s: &TwoQubitState) -> Result<()> {
    if s.is_product() {
        Ok(())
    } else {
        Err(Error::NotProduct(s.product_residual()))
    }
}

/// Reachable set of qubit 1 under full control of qubit 2 and `σ_i⊗σ_j`.
/// Since qubit 2 can be rotated freely, the disk does not depend on `j`.
pub fn reachable_disk(s: &TwoQubitState, i: Axis, _j: Axis) -> Result<ReachableDisk> {
    require_product(s)?;
    let axes = [i.prev(), i.next()];
    let p = Vector2::new(s.r1[axes[0].index()], s.r1[axes[1].index()]);
    let a = p.norm();
    let orientation = if a >= POINT_TOL {
        [p.x / a, p.y / a]
    } else {
        [1.0, 0.0]
    };
    let b = (2.0 * s.r2.norm() * a).min(a);
    Ok(ReachableDisk {
        fixed_axis: i,
        fixed_component: s.r1[i.index()],
        axes,
        a: if a >= POINT_TOL { a } else { 0.0 },
        b: if a >= POINT_TOL { b } else { 0.0 },
        orientation,
    })
}

fn random_local_on_controller<R: Rng + ?Sized>(s: &TwoQubitState, rng: &mut R) -> TwoQubitState {
    let axis = random_unit_vector(rng);
    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    apply_local(s, Subsystem::Two, axis, angle).expect("sampled axis is a unit vector")
}

/// States of qubit 1 after a random rotation of qubit 2 followed by `σ_i⊗σ_j`
/// for a random duration. Both the rotation angle and the duration are uniform
/// on `[0, 2π)`; the rotation axis is uniform on the sphere.
pub fn sample_reachable<R: Rng + ?Sized>(
    s: &TwoQubitState,
    i: Axis,
    j: Axis,
    n: usize,
    rng: &mut R,
) -> Result<Vec<Vector3<f64>>> {
    require_product(s)?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    Ok((0..n)
        .map(|_| {
            let rotated = random_local_on_controller(s, rng);
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            apply_one_dim(&rotated, i, j, phi).r1
        })
        .collect())
}

/// Like [`sample_reachable`] but with `steps` alternating pairs of a random
/// rotation of qubit 2 and a random-duration `σ_i⊗σ_a` step, `a` drawn from the
/// three axes. Every element of the algebra generated by `1⊗σ_a` and `σ_i⊗σ_a`
/// can be reached this way.
pub fn sample_sequences<R: Rng + ?Sized>(
    s: &TwoQubitState,
    i: Axis,
    steps: usize,
    n: usize,
    rng: &mut R,
) -> Result<Vec<Vector3<f64>>> {
    require_product(s)?;
    if n == 0 || steps == 0 {
        return Err(Error::InvalidArgument(
            "sample count and sequence length must be at least 1".into(),
        ));
    }
    Ok((0..n)
        .map(|_| {
            let mut state = *s;
            for _ in 0..steps {
                state = random_local_on_controller(&state, rng);
                let a = Axis::ALL[rng.random_range(0..3)];
                let phi = rng.random_range(0.0..std::f64::consts::TAU);
                state = apply_one_dim(&state, i, a, phi);
            }
            state.r1
        })
        .collect())
}

/// Largest shortfall between the disk's support function and that of `points`
/// over `directions` equally spaced in-plane directions.
pub fn coverage_gap(disk: &ReachableDisk, points: &[Vector3<f64>], directions: usize) -> f64 {
    (0..directions)
        .map(|d| {
            let theta = std::f64::consts::TAU * d as f64 / directions as f64;
            let (s, c) = theta.sin_cos();
            let reached = points
                .iter()
                .map(|r| c * r[disk.axes[0].index()] + s * r[disk.axes[1].index()])
                .fold(f64::NEG_INFINITY, f64::max);
            disk.support(theta) - reached
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub c: f64,
    pub phi_grid: Vec<f64>,
    /// Linear entropies `1 − Tr ρ_k²` of each qubit, in `[0, 1/2]`.
    pub entropy1: Vec<f64>,
    pub entropy2: Vec<f64>,
    /// Largest mean of the two marginal entropies along the grid.
    pub max_entropy: f64,
    /// First grid point reaching a maximally entangled state if there is one,
    /// otherwise the first point of largest mean entropy.
    pub phi_star: f64,
    pub maximal: bool,
}

/// Scans one period `π/|c|` of the exchange evolution on `n` equally spaced
/// points starting at `φ = 0`.
pub fn heisenberg_entanglement_scan(
    s: &TwoQubitState,
    c: f64,
    n: usize,
) -> Result<EntanglementReport> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!(
            "scan needs at least 16 points, got {n}"
        )));
    }
    if !c.is_finite() || c == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "coupling must be finite and nonzero, got {c}"
        )));
    }
    if !s.validate().valid {
        return Err(Error::InvalidArgument(
            "initial state is not a valid density matrix".into(),
        ));
    }
    let period = std::f64::consts::PI / c.abs();
    let phi_grid: Vec<f64> = (0..n).map(|k| period * k as f64 / n as f64).collect();
    let mut entropy1 = Vec::with_capacity(n);
    let mut entropy2 = Vec::with_capacity(n);
    let mut best = (f64::NEG_INFINITY, 0.0);
    let mut maximal_at = None;
    for &phi in &phi_grid {
        let state = apply_heisenberg(s, c, phi);
        let (e1, e2) = (
            state.linear_entropy(Subsystem::One),
            state.linear_entropy(Subsystem::Two),
        );
        entropy1.push(e1);
        entropy2.push(e2);
        let mean = 0.5 * (e1 + e2);
        if mean > best.0 {
            best = (mean, phi);
        }
        let maximal = state.r1.norm() < MIXED_TOL
            && state.r2.norm() < MIXED_TOL
            && state.global_purity() > 1.0 - PURE_TOL;
        if maximal && maximal_at.is_none() {
            maximal_at = Some(phi);
        }
    }
    Ok(EntanglementReport {
        c,
        phi_grid,
        entropy1,
        entropy2,
        max_entropy: best.0,
        phi_star: maximal_at.unwrap_or(best.1),
        maximal: maximal_at.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{random_product, random_pure_product, random_state};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn pure(v: [f64; 3]) -> Vector3<f64> {
        Vector3::from(v).normalize() * 0.5
    }

    #[test]
    fn mixed_controller_gives_flat_disk() {
        let s = TwoQubitState::product(Vector3::new(0.3, 0.1, 0.2), Vector3::zeros()).unwrap();
        let d = reachable_disk(&s, Axis::Z, Axis::X).unwrap();
        assert_eq!(d.b, 0.0);
        assert!((d.a - (0.1f64.powi(2) + 0.3f64.powi(2)).sqrt()).abs() < 1e-15);
        assert_eq!(d.axes, [Axis::Y, Axis::X]);
        assert_eq!(d.fixed_component, 0.2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for r in sample_reachable(&s, Axis::Z, Axis::X, 200, &mut rng).unwrap() {
            // qubit 1 only shrinks along its own in-plane direction
            assert!(d.ellipse_value(&r) <= 1.0 + 1e-9);
            assert!(d.principal_coordinates(&r).1.abs() < 1e-12);
        }
    }

    #[test]
    fn equatorial_pure_states_give_full_disk() {
        let s = TwoQubitState::product(pure([1.0, 1.0, 0.0]), pure([0.2, -0.4, 0.7])).unwrap();
        let d = reachable_disk(&s, Axis::Z, Axis::Y).unwrap();
        assert!((d.a - 0.5).abs() < 1e-15 && (d.b - 0.5).abs() < 1e-15);
        // the centre of the disk is a maximally mixed qubit 1
        let centre = Vector3::zeros();
        assert_eq!(d.ellipse_value(&centre), 0.0);
    }

    #[test]
    fn non_product_input_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = random_state(&mut rng);
        assert!(matches!(
            reachable_disk(&s, Axis::X, Axis::X),
            Err(Error::NotProduct(_))
        ));
        assert!(sample_reachable(&s, Axis::X, Axis::X, 1, &mut rng).is_err());
    }

    #[test]
    fn samples_stay_inside_and_keep_fixed_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let s = random_product(&mut rng);
            let i = Axis::ALL[rng.random_range(0..3)];
            let j = Axis::ALL[rng.random_range(0..3)];
            let d = reachable_disk(&s, i, j).unwrap();
            assert!(d.a >= d.b);
            let r0 = s.r1.norm();
            let mut points = sample_reachable(&s, i, j, 100, &mut rng).unwrap();
            points.extend(sample_sequences(&s, i, 4, 50, &mut rng).unwrap());
            for r in points {
                assert!(d.ellipse_value(&r) <= 1.0 + 1e-9);
                assert!((r[i.index()] - s.r1[i.index()]).abs() < 1e-12);
                assert!(r.norm() <= r0 + 1e-10);
            }
        }
    }

    #[test]
    fn boundary_points_have_unit_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = random_product(&mut rng);
        let d = reachable_disk(&s, Axis::Y, Axis::Z).unwrap();
        for k in 0..16 {
            let p = d.boundary_point(k as f64 * 0.4);
            assert!((d.ellipse_value(&p) - 1.0).abs() < 1e-12);
        }
        let dense: Vec<_> = (0..4096)
            .map(|k| d.boundary_point(k as f64 * 1.534e-3))
            .collect();
        assert!(coverage_gap(&d, &dense, 32) < 1e-5);
        assert!(coverage_gap(&d, &dense[..1], 32) > 0.1 * d.b);
    }

    #[test]
    fn pure_controller_samples_reach_boundary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_pure_product(&mut rng);
        let d = reachable_disk(&s, Axis::X, Axis::Z).unwrap();
        let points = sample_reachable(&s, Axis::X, Axis::Z, 50_000, &mut rng).unwrap();
        assert!(coverage_gap(&d, &points, 32) < 1e-2);
    }

    #[test]
    fn antipodal_pair_becomes_maximally_entangled() {
        let s = TwoQubitState::product(Vector3::new(0.0, 0.0, 0.5), Vector3::new(0.0, 0.0, -0.5))
            .unwrap();
        let rep = heisenberg_entanglement_scan(&s, 1.0, 64).unwrap();
        assert!(rep.maximal);
        assert!((rep.phi_star - FRAC_PI_4).abs() < 1e-12);
        assert!((rep.max_entropy - 0.5).abs() < 1e-12);
        for (e1, e2) in rep.entropy1.iter().zip(&rep.entropy2) {
            assert!((e1 - e2).abs() < 1e-12);
            assert!((-1e-15..=0.5 + 1e-15).contains(e1));
        }
    }

    #[test]
    fn aligned_pair_stays_unentangled() {
        let s = TwoQubitState::product(Vector3::new(0.0, 0.0, 0.5), Vector3::new(0.0, 0.0, 0.5))
            .unwrap();
        let rep = heisenberg_entanglement_scan(&s, 0.7, 32).unwrap();
        assert!(!rep.maximal);
        assert!(rep.max_entropy.abs() < 1e-12);
        assert!(rep
            .entropy1
            .iter()
            .chain(&rep.entropy2)
            .all(|e| e.abs() < 1e-12));
    }

    #[test]
    fn maximally_mixed_input_is_a_fixed_point() {
        let rep = heisenberg_entanglement_scan(&TwoQubitState::maximally_mixed(), 1.0, 16).unwrap();
        assert!(!rep.maximal);
        assert!(rep.entropy1.iter().all(|e| (e - 0.5).abs() < 1e-15));
        assert_eq!(rep.max_entropy, 0.5);
    }

    #[test]
    fn scan_covers_one_period() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = random_state(&mut rng);
        let c = -1.3;
        let rep = heisenberg_entanglement_scan(&s, c, 20).unwrap();
        assert_eq!(rep.phi_grid.len(), 20);
        let period = PI / c.abs();
        for &phi in &rep.phi_grid {
            let a = apply_heisenberg(&s, c, phi);
            let b = apply_heisenberg(&s, c, phi + period);
            assert!(a.max_abs_diff(&b) < 1e-12);
        }
        assert!(heisenberg_entanglement_scan(&s, 0.0, 20).is_err());
        assert!(heisenberg_entanglement_scan(&s, 1.0, 15).is_err());
    }
}
