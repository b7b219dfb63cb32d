//! Two-qubit states as density matrices and as coherence triples `(r1, r2, T)`.
//!
//! Coherence normalization is used throughout: `r_a = Tr(ρ σ_a⊗1)/2`, so a
//! pure single-qubit marginal has `‖r‖ = 1/2`, and `T[a][b] = Tr(ρ σ_a⊗σ_b)/2`
//! with the row index belonging to subsystem 1 (the left tensor factor).

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{basis, trace_product, Matrix2c, Matrix4c};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-10;
pub const PRODUCT_TOL: f64 = 1e-10;

/// Which qubit: 1 is the left tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Subsystem {
    One,
    Two,
}

impl Subsystem {
    pub fn other(self) -> Subsystem {
        match self {
            Subsystem::One => Subsystem::Two,
            Subsystem::Two => Subsystem::One,
        }
    }

    pub fn number(self) -> u8 {
        u8::from(self)
    }
}

impl From<Subsystem> for u8 {
    fn from(s: Subsystem) -> u8 {
        match s {
            Subsystem::One => 1,
            Subsystem::Two => 2,
        }
    }
}

impl TryFrom<u8> for Subsystem {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Subsystem::One),
            2 => Ok(Subsystem::Two),
            _ => Err(format!("subsystem must be 1 or 2, got {v}")),
        }
    }
}

/// A 4×4 density matrix that passed Hermiticity, trace and positivity checks.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix4(Matrix4c);

impl DensityMatrix4 {
    pub fn new(matrix: Matrix4c) -> Result<Self> {
        if matrix
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("density matrix"));
        }
        let herm = hermiticity_defect(&matrix);
        if herm > HERMITIAN_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::BadTrace(tr.re));
        }
        let min = min_eigenvalue(&matrix);
        if min < -POSITIVITY_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(DensityMatrix4(matrix))
    }

    /// Wraps a matrix known to be a density matrix (e.g. the conjugate of one).
    pub(crate) fn new_unchecked(matrix: Matrix4c) -> Self {
        DensityMatrix4(matrix)
    }

    /// Pure state `|ψ⟩⟨ψ|`; the vector is normalized first.
    pub fn from_pure(psi: &[Complex64; 4]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidArgument(
                "pure state vector has zero norm".into(),
            ));
        }
        let m = Matrix4c::from_fn(|r, c| psi[r] * psi[c].conj() / (norm * norm));
        DensityMatrix4::new(m)
    }

    pub fn matrix(&self) -> &Matrix4c {
        &self.0
    }

    pub fn into_inner(self) -> Matrix4c {
        self.0
    }

    pub fn purity(&self) -> f64 {
        trace_product(&self.0, &self.0).re
    }
}

pub fn hermiticity_defect(m: &Matrix4c) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_eigenvalue(m: &Matrix4c) -> f64 {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    SymmetricEigen::new(h).eigenvalues.min()
}

/// Coherence vector of a single-qubit density matrix `ρ = I/2 + v·σ`.
pub fn coherence_vector(rho: &Matrix2c) -> Vector3<f64> {
    Vector3::new(
        rho[(0, 1)].re,
        -rho[(0, 1)].im,
        0.5 * (rho[(0, 0)].re - rho[(1, 1)].re),
    )
}

/// The coherence triple `(r1, r2, T)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitState {
    pub r1: Vector3<f64>,
    pub r2: Vector3<f64>,
    pub t: Matrix3<f64>,
}

impl Default for TwoQubitState {
    fn default() -> Self {
        Self::maximally_mixed()
    }
}

impl TwoQubitState {
    pub fn new(r1: Vector3<f64>, r2: Vector3<f64>, t: Matrix3<f64>) -> Self {
        TwoQubitState { r1, r2, t }
    }

    pub fn maximally_mixed() -> Self {
        TwoQubitState {
            r1: Vector3::zeros(),
            r2: Vector3::zeros(),
            t: Matrix3::zeros(),
        }
    }

    /// `ρ1 ⊗ ρ2` for single-qubit coherence vectors `v1`, `v2`.
    pub fn product(v1: Vector3<f64>, v2: Vector3<f64>) -> Result<Self> {
        for (sub, v) in [(1u8, &v1), (2, &v2)] {
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite("coherence vector"));
            }
            let norm = v.norm();
            if norm > 0.5 + NORM_TOL {
                return Err(Error::OutsideBall {
                    subsystem: sub,
                    norm,
                });
            }
        }
        Ok(TwoQubitState {
            r1: v1,
            r2: v2,
            t: 2.0 * v1 * v2.transpose(),
        })
    }

    /// The 15 expansion coefficients `ρ_1..ρ_15` in basis order.
    pub fn components(&self) -> [f64; 15] {
        let mut out = [0.0; 15];
        out[..3].copy_from_slice(self.r1.as_slice());
        out[3..6].copy_from_slice(self.r2.as_slice());
        for a in 0..3 {
            for b in 0..3 {
                out[6 + 3 * a + b] = self.t[(a, b)];
            }
        }
        out
    }

    pub fn from_components(c: &[f64; 15]) -> Self {
        TwoQubitState {
            r1: Vector3::new(c[0], c[1], c[2]),
            r2: Vector3::new(c[3], c[4], c[5]),
            t: Matrix3::from_fn(|a, b| c[6 + 3 * a + b]),
        }
    }

    pub fn coherence(&self, which: Subsystem) -> Vector3<f64> {
        match which {
            Subsystem::One => self.r1,
            Subsystem::Two => self.r2,
        }
    }

    /// Decomposes `ρ` on the orthonormal basis: `ρ_j = Tr(ρ X_j)`.
    pub fn from_density(rho: &DensityMatrix4) -> Self {
        Self::from_matrix(rho.matrix())
    }

    /// Same as [`from_density`](Self::from_density) but without validation of `m`.
    pub fn from_matrix(m: &Matrix4c) -> Self {
        let b = basis();
        let mut c = [0.0; 15];
        for (j, slot) in c.iter_mut().enumerate() {
            *slot = trace_product(m, &b[j + 1].matrix).re;
        }
        Self::from_components(&c)
    }

    /// `ρ = I/4 + Σ_j ρ_j X_j`. Hermitian with unit trace by construction.
    pub fn to_matrix(&self) -> Matrix4c {
        let b = basis();
        let c = self.components();
        let mut m = b[0].matrix * Complex64::new(0.5, 0.0);
        for (j, &cj) in c.iter().enumerate() {
            m += b[j + 1].matrix * Complex64::new(cj, 0.0);
        }
        m
    }

    /// Reconstructs `ρ`, failing if it is not positive semidefinite.
    pub fn to_density(&self) -> Result<DensityMatrix4> {
        DensityMatrix4::new(self.to_matrix())
    }

    /// `Tr(ρ_sub²) = 1/2 + 2‖r‖²`.
    pub fn subsystem_purity(&self, which: Subsystem) -> f64 {
        0.5 + 2.0 * self.coherence(which).norm_squared()
    }

    /// `1 − Tr(ρ_sub²)`, in `[0, 1/2]` for a valid state.
    pub fn linear_entropy(&self, which: Subsystem) -> f64 {
        1.0 - self.subsystem_purity(which)
    }

    /// `Tr(ρ²) = 1/4 + ‖r1‖² + ‖r2‖² + ‖T‖²_F`.
    pub fn global_purity(&self) -> f64 {
        0.25 + self.r1.norm_squared() + self.r2.norm_squared() + self.t.norm_squared()
    }

    /// `max |T − 2 r1 r2ᵀ|`; zero exactly for product states.
    pub fn product_residual(&self) -> f64 {
        (self.t - 2.0 * self.r1 * self.r2.transpose()).amax()
    }

    pub fn is_product(&self) -> bool {
        self.product_residual() <= PRODUCT_TOL
    }

    /// Largest componentwise difference over all 15 coordinates.
    pub fn max_abs_diff(&self, other: &TwoQubitState) -> f64 {
        self.components()
            .iter()
            .zip(other.components().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|x| x.is_finite())
    }

    /// Copy with `r` and `T` multiplied by `factor` (e.g. 2 for Bloch normalization).
    pub fn scaled(&self, factor: f64) -> TwoQubitState {
        TwoQubitState {
            r1: self.r1 * factor,
            r2: self.r2 * factor,
            t: self.t * factor,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport::of(self)
    }
}

/// Diagnostics for a coherence triple; never an error by itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub finite: bool,
    pub hermiticity_defect: f64,
    pub trace: f64,
    pub min_eigenvalue: f64,
    pub positive: bool,
    pub r1_norm: f64,
    pub r2_norm: f64,
    pub norms_ok: bool,
    pub purity1: f64,
    pub purity2: f64,
    pub global_purity: f64,
    pub product_residual: f64,
    pub product: bool,
    pub valid: bool,
}

impl ValidationReport {
    fn of(s: &TwoQubitState) -> Self {
        let finite = s.is_finite();
        let m = s.to_matrix();
        let hermiticity_defect = hermiticity_defect(&m);
        let trace = m.trace().re;
        let min_eigenvalue = if finite { min_eigenvalue(&m) } else { f64::NAN };
        let positive = min_eigenvalue >= -POSITIVITY_TOL;
        let r1_norm = s.r1.norm();
        let r2_norm = s.r2.norm();
        let norms_ok = r1_norm <= 0.5 + NORM_TOL && r2_norm <= 0.5 + NORM_TOL;
        let product_residual = s.product_residual();
        let valid = finite
            && hermiticity_defect <= HERMITIAN_TOL
            && (trace - 1.0).abs() <= TRACE_TOL
            && positive
            && norms_ok;
        ValidationReport {
            finite,
            hermiticity_defect,
            trace,
            min_eigenvalue,
            positive,
            r1_norm,
            r2_norm,
            norms_ok,
            purity1: s.subsystem_purity(Subsystem::One),
            purity2: s.subsystem_purity(Subsystem::Two),
            global_purity: s.global_purity(),
            product_residual,
            product: product_residual <= PRODUCT_TOL,
            valid,
        }
    }
}
