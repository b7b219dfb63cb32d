//! Evolution of coherence triples directly in the adjoint representation.
//!
//! Sign conventions, fixed against explicit conjugation of the density matrix:
//!
//! * `OneDim { i, j, phi }` is conjugation by `exp[+i(φ/2) σ_i⊗σ_j]`.
//! * `Cartan { c }` is conjugation by `exp[(i/2)(c1 σx⊗σx + c2 σy⊗σy + c3 σz⊗σz)]`,
//!   i.e. the three one-dimensional factors at `φ = c1, c2, c3`.
//! * `Heisenberg { c, phi }` is conjugation by `exp[-i(cφ/2)(σx⊗σx + σy⊗σy + σz⊗σz)]`,
//!   which equals `Cartan` with `c1 = c2 = c3 = -cφ`.
//! * `Local { target, axis, angle }` is conjugation by `exp[-i(θ/2) n̂·σ]` on the
//!   target qubit: a right-handed rotation of its coherence vector by `θ`.

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::Axis;
use crate::state::{Subsystem, TwoQubitState};

pub const AXIS_NORM_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InteractionSpec {
    /// Rotation of one qubit by `angle` about the unit vector `axis`.
    Local {
        target: Subsystem,
        axis: [f64; 3],
        angle: f64,
    },
    /// `σ_i⊗σ_j` acting for duration `phi`.
    OneDim {
        i: Axis,
        j: Axis,
        #[serde(default)]
        phi: f64,
    },
    /// Isotropic exchange with coupling `c` acting for duration `phi`.
    Heisenberg {
        c: f64,
        #[serde(default)]
        phi: f64,
    },
    /// Nonlocal Cartan-class operation with parameters `(c1, c2, c3)`.
    Cartan { c: [f64; 3] },
}

impl InteractionSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        match *self {
            InteractionSpec::Local { axis, angle, .. } => {
                if !finite(&axis) || !angle.is_finite() {
                    return Err(Error::NonFinite("local rotation"));
                }
                check_unit_axis(&Vector3::from(axis)).map(|_| ())
            }
            InteractionSpec::OneDim { phi, .. } => {
                if phi.is_finite() {
                    Ok(())
                } else {
                    Err(Error::NonFinite("interaction duration"))
                }
            }
            InteractionSpec::Heisenberg { c, phi } => {
                if c.is_finite() && phi.is_finite() {
                    Ok(())
                } else {
                    Err(Error::NonFinite("Heisenberg parameters"))
                }
            }
            InteractionSpec::Cartan { c } => {
                if finite(&c) {
                    Ok(())
                } else {
                    Err(Error::NonFinite("Cartan parameters"))
                }
            }
        }
    }

    /// The same generator run for duration `phi`.
    ///
    /// Local angles and one-dimensional / Heisenberg durations are replaced by
    /// `phi`; the Cartan triple is treated as a set of rates and scaled by `phi`.
    pub fn at_duration(&self, phi: f64) -> InteractionSpec {
        match *self {
            InteractionSpec::Local { target, axis, .. } => InteractionSpec::Local {
                target,
                axis,
                angle: phi,
            },
            InteractionSpec::OneDim { i, j, .. } => InteractionSpec::OneDim { i, j, phi },
            InteractionSpec::Heisenberg { c, .. } => InteractionSpec::Heisenberg { c, phi },
            InteractionSpec::Cartan { c } => InteractionSpec::Cartan {
                c: [c[0] * phi, c[1] * phi, c[2] * phi],
            },
        }
    }

    pub fn apply(&self, s: &TwoQubitState) -> Result<TwoQubitState> {
        self.validate()?;
        Ok(match *self {
            InteractionSpec::Local {
                target,
                axis,
                angle,
            } => apply_local(s, target, Vector3::from(axis), angle)?,
            InteractionSpec::OneDim { i, j, phi } => apply_one_dim(s, i, j, phi),
            InteractionSpec::Heisenberg { c, phi } => apply_heisenberg(s, c, phi),
            InteractionSpec::Cartan { c } => apply_cartan(s, c[0], c[1], c[2]),
        })
    }
}

fn check_unit_axis(axis: &Vector3<f64>) -> Result<Unit<Vector3<f64>>> {
    let norm = axis.norm();
    if (norm - 1.0).abs() > AXIS_NORM_TOL {
        return Err(Error::BadAxis(norm));
    }
    Ok(Unit::new_unchecked(*axis))
}

/// SO(3) rotation about `axis` by `angle` (right-handed).
pub fn rotation_matrix(axis: &Vector3<f64>, angle: f64) -> Result<Matrix3<f64>> {
    let axis = check_unit_axis(axis)?;
    Ok(Rotation3::from_axis_angle(&axis, angle).into_inner())
}

/// Local rotation of one qubit: its coherence vector rotates and `T` rotates on
/// the matching index only.
pub fn apply_local(
    s: &TwoQubitState,
    target: Subsystem,
    axis: Vector3<f64>,
    angle: f64,
) -> Result<TwoQubitState> {
    let rot = rotation_matrix(&axis, angle)?;
    Ok(match target {
        Subsystem::One => TwoQubitState::new(rot * s.r1, s.r2, rot * s.t),
        Subsystem::Two => TwoQubitState::new(s.r1, rot * s.r2, s.t * rot.transpose()),
    })
}

/// One-dimensional interaction `σ_i⊗σ_j` for duration `phi`.
///
/// With `(i, l, k)` and `(j, n, m)` cyclic, `r1^i`, `r2^j` and the five tensor
/// entries outside row `i` and column `j` (plus `T[i][j]`) are untouched, while
/// `(r1^k, r1^l, T[k][j], T[l][j])` and `(r2^m, r2^n, T[i][m], T[i][n])` rotate
/// by `phi`.
pub fn apply_one_dim(s: &TwoQubitState, i: Axis, j: Axis, phi: f64) -> TwoQubitState {
    let (sn, cs) = phi.sin_cos();
    let (ii, jj) = (i.index(), j.index());
    let (k, l) = (i.prev().index(), i.next().index());
    let (m, n) = (j.prev().index(), j.next().index());
    let (r1, r2, t) = (&s.r1, &s.r2, &s.t);

    let mut out = *s;
    out.r1[k] = r1[k] * cs - t[(l, jj)] * sn;
    out.r1[l] = t[(k, jj)] * sn + r1[l] * cs;
    out.r2[m] = r2[m] * cs - t[(ii, n)] * sn;
    out.r2[n] = t[(ii, m)] * sn + r2[n] * cs;

    out.t[(k, jj)] = t[(k, jj)] * cs - r1[l] * sn;
    out.t[(l, jj)] = r1[k] * sn + t[(l, jj)] * cs;
    out.t[(ii, m)] = t[(ii, m)] * cs - r2[n] * sn;
    out.t[(ii, n)] = r2[m] * sn + t[(ii, n)] * cs;
    out
}

/// Center, in-phase and quadrature vectors of the Heisenberg orbit of `r1`:
/// `r1(φ) = R + S cos(2cφ) + V sin(2cφ)` and `r2(φ) = R − S cos(2cφ) − V sin(2cφ)`.
pub fn heisenberg_orbit_vectors(s: &TwoQubitState) -> (Vector3<f64>, Vector3<f64>, Vector3<f64>) {
    let center = 0.5 * (s.r1 + s.r2);
    let swing = 0.5 * (s.r1 - s.r2);
    let t = &s.t;
    let quadrature = 0.5
        * Vector3::new(
            t[(2, 1)] - t[(1, 2)],
            t[(0, 2)] - t[(2, 0)],
            t[(1, 0)] - t[(0, 1)],
        );
    (center, swing, quadrature)
}

/// Isotropic exchange with coupling `c` for duration `phi`.
///
/// `r1 + r2`, the symmetric part of `T` and its diagonal are conserved; the
/// differences rotate at angular rate `2c`.
pub fn apply_heisenberg(s: &TwoQubitState, c: f64, phi: f64) -> TwoQubitState {
    let (sn, cs) = (2.0 * c * phi).sin_cos();
    let (center, swing, quad) = heisenberg_orbit_vectors(s);
    let moving = swing * cs + quad * sn;

    let mut t = s.t;
    for a in Axis::ALL {
        let b = a.next();
        let k = a.prev().index();
        let (a, b) = (a.index(), b.index());
        let diff = s.r1[k] - s.r2[k];
        let sym = 0.5 * (s.t[(a, b)] + s.t[(b, a)]);
        let anti = 0.5 * (s.t[(a, b)] - s.t[(b, a)]);
        // (a, b, k) cyclic: the antisymmetric part picks up +diff, its transpose -diff
        t[(a, b)] = sym + anti * cs + 0.5 * diff * sn;
        t[(b, a)] = sym - anti * cs - 0.5 * diff * sn;
    }
    TwoQubitState::new(center + moving, center - moving, t)
}

/// Cartan-class operation as the product of its three commuting one-dimensional
/// factors.
pub fn apply_cartan(s: &TwoQubitState, c1: f64, c2: f64, c3: f64) -> TwoQubitState {
    let s = apply_one_dim(s, Axis::X, Axis::X, c1);
    let s = apply_one_dim(&s, Axis::Y, Axis::Y, c2);
    apply_one_dim(&s, Axis::Z, Axis::Z, c3)
}

pub fn evolve(s: &TwoQubitState, spec: &InteractionSpec) -> Result<TwoQubitState> {
    spec.apply(s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSample {
    pub phi: f64,
    pub state: TwoQubitState,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitTrace {
    pub spec: InteractionSpec,
    pub initial: TwoQubitState,
    pub samples: Vec<OrbitSample>,
}

impl OrbitTrace {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// The uniform grid `φ_k = φ_max · k / (n − 1)`, `k = 0..n`.
pub fn phi_grid(phi_max: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n).map(|k| phi_max * k as f64 / last).collect()
}

/// Samples the orbit of `s` under `spec` on a uniform grid over `[0, phi_max]`.
///
/// Every sample is computed from the initial state for its full duration.
pub fn trace_orbit(
    s: &TwoQubitState,
    spec: &InteractionSpec,
    phi_max: f64,
    n: usize,
) -> Result<OrbitTrace> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "orbit needs at least 2 samples, got {n}"
        )));
    }
    if !phi_max.is_finite() || phi_max < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "phi_max must be finite and non-negative, got {phi_max}"
        )));
    }
    spec.validate()?;
    let report = s.validate();
    if !report.valid {
        return Err(Error::InvalidArgument(
            "initial state is not a valid density matrix".into(),
        ));
    }
    let samples = phi_grid(phi_max, n)
        .into_iter()
        .map(|phi| {
            spec.at_duration(phi)
                .apply(s)
                .map(|state| OrbitSample { phi, state })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitTrace {
        spec: *spec,
        initial: *s,
        samples,
    })
}
