//! Brute-force reference path: explicit 4×4 unitaries, conjugation of the
//! density matrix and partial traces.
//!
//! Nothing here calls the adjoint update formulas in [`crate::evolution`];
//! the only shared code is [`crate::pauli`].

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal, UnitSphere};

use crate::error::{Error, Result};
use crate::evolution::InteractionSpec;
use crate::pauli::{
    exp_heisenberg, exp_one_dim, kron, pauli, unitarity_defect, Axis, Matrix2c, Matrix4c,
};
use crate::state::{DensityMatrix4, Subsystem, TwoQubitState};

pub const UNITARITY_TOL: f64 = 1e-10;

/// `U ρ U†`.
pub fn evolve_matrix(rho: &DensityMatrix4, u: &Matrix4c) -> Result<DensityMatrix4> {
    let defect = unitarity_defect(u);
    if defect.is_nan() || defect > UNITARITY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    Ok(DensityMatrix4::new_unchecked(
        u * rho.matrix() * u.adjoint(),
    ))
}

/// Reduced density matrix of the kept qubit.
pub fn partial_trace(rho: &DensityMatrix4, keep: Subsystem) -> Matrix2c {
    let m = rho.matrix();
    Matrix2c::from_fn(|a, b| match keep {
        // index = 2 * q1 + q2
        Subsystem::One => (0..2).map(|e| m[(2 * a + e, 2 * b + e)]).sum(),
        Subsystem::Two => (0..2).map(|e| m[(2 * e + a, 2 * e + b)]).sum(),
    })
}

/// `exp[-i(θ/2) n̂·σ]`.
pub fn single_qubit_rotation(axis: &Vector3<f64>, angle: f64) -> Matrix2c {
    let (s, c) = (angle / 2.0).sin_cos();
    let mut m = Matrix2c::identity() * Complex64::new(c, 0.0);
    for a in Axis::ALL {
        m -= pauli(a) * Complex64::new(0.0, s * axis[a.index()]);
    }
    m
}

/// The 4×4 unitary whose conjugation realizes `spec`.
pub fn unitary_for(spec: &InteractionSpec) -> Result<Matrix4c> {
    spec.validate()?;
    Ok(match *spec {
        InteractionSpec::Local {
            target,
            axis,
            angle,
        } => {
            let r = single_qubit_rotation(&Vector3::from(axis), angle);
            match target {
                Subsystem::One => kron(&r, &Matrix2c::identity()),
                Subsystem::Two => kron(&Matrix2c::identity(), &r),
            }
        }
        InteractionSpec::OneDim { i, j, phi } => exp_one_dim(i, j, -phi),
        InteractionSpec::Heisenberg { c, phi } => exp_heisenberg(c, phi),
        InteractionSpec::Cartan { c } => {
            exp_one_dim(Axis::X, Axis::X, -c[0])
                * exp_one_dim(Axis::Y, Axis::Y, -c[1])
                * exp_one_dim(Axis::Z, Axis::Z, -c[2])
        }
    })
}

/// Evolves a coherence triple through the density matrix.
pub fn evolve_state(s: &TwoQubitState, spec: &InteractionSpec) -> Result<TwoQubitState> {
    let u = unitary_for(spec)?;
    let rho = DensityMatrix4::new_unchecked(s.to_matrix());
    Ok(TwoQubitState::from_density(&evolve_matrix(&rho, &u)?))
}

/// `exp(-i H t)` for Hermitian `H`.
pub fn propagator(h: &Matrix4c, t: f64) -> Matrix4c {
    (h * Complex64::new(0.0, -t)).exp()
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    let v: [f64; 3] = UnitSphere.sample(rng);
    Vector3::from(v)
}

/// Random coherence vector, uniform in direction, norm uniform in `[0, 1/2]`.
pub fn random_coherence_vector<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    random_unit_vector(rng) * (0.5 * rng.random::<f64>())
}

fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Full-rank mixed state `G G† / Tr(G G†)` with Gaussian `G`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix4 {
    let g = Matrix4c::from_fn(|_, _| random_complex(rng));
    let m = g * g.adjoint();
    let tr = m.trace().re;
    let m = m * Complex64::new(1.0 / tr, 0.0);
    // Hermitize to remove rounding asymmetry.
    DensityMatrix4::new_unchecked((m + m.adjoint()) * Complex64::new(0.5, 0.0))
}

/// Pure state from a normalized Gaussian 4-vector.
pub fn random_pure_density<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix4 {
    let psi = [
        random_complex(rng),
        random_complex(rng),
        random_complex(rng),
        random_complex(rng),
    ];
    DensityMatrix4::from_pure(&psi).expect("Gaussian vector is nonzero")
}

pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    TwoQubitState::from_density(&random_density(rng))
}

/// Product of two pure qubits with uniformly random directions.
pub fn random_pure_product<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let a = random_unit_vector(rng) * 0.5;
    let b = random_unit_vector(rng) * 0.5;
    TwoQubitState::product(a, b).expect("norms are 1/2")
}

/// Product of two mixed qubits.
pub fn random_product<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let a = random_coherence_vector(rng);
    let b = random_coherence_vector(rng);
    TwoQubitState::product(a, b).expect("norms are at most 1/2")
}

/// Classically correlated state `p |0⟩⟨0|⊗ρ_a + (1−p) |1⟩⟨1|⊗ρ_b` in a random
/// local basis for qubit 1.
pub fn random_classically_correlated<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let p: f64 = rng.random_range(0.2..0.8);
    let n = random_unit_vector(rng) * 0.5;
    let a = random_coherence_vector(rng);
    let b = random_coherence_vector(rng);
    let up = TwoQubitState::product(n, a).expect("valid");
    let down = TwoQubitState::product(-n, b).expect("valid");
    let mix = |x: f64, y: f64| p * x + (1.0 - p) * y;
    let cu = up.components();
    let cd = down.components();
    let mut c = [0.0; 15];
    for k in 0..15 {
        c[k] = mix(cu[k], cd[k]);
    }
    TwoQubitState::from_components(&c)
}
