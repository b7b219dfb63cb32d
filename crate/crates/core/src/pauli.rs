//! Pauli matrices, the orthonormal 16-element operator basis for two qubits,
//! and closed-form exponentials of the two-qubit interaction Hamiltonians.
//!
//! The basis is `X_0 = I/2`, `X_1..X_3 = σ_a ⊗ 1 / 2`, `X_4..X_6 = 1 ⊗ σ_a / 2`
//! and `X_7..X_15 = σ_a ⊗ σ_b / 2` in row-major `(a, b)` order. Every element
//! satisfies `Tr(X_j X_k) = δ_jk`, so the expansion coefficients of a density
//! matrix are simply `Tr(ρ X_j)`.

use std::fmt;
use std::sync::OnceLock;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type Matrix2c = Matrix2<Complex64>;
pub type Matrix4c = Matrix4<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Cartesian axis label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Axis> {
        Axis::ALL.get(i).copied()
    }

    /// The next axis in the cyclic order x → y → z → x.
    #[inline]
    pub fn next(self) -> Axis {
        Axis::ALL[(self.index() + 1) % 3]
    }

    #[inline]
    pub fn prev(self) -> Axis {
        Axis::ALL[(self.index() + 2) % 3]
    }

    pub fn symbol(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" | "1" => Ok(Axis::X),
            "y" | "2" => Ok(Axis::Y),
            "z" | "3" => Ok(Axis::Z),
            other => Err(format!("unknown axis `{other}` (expected x, y or z)")),
        }
    }
}

/// The standard Pauli matrix for `axis`.
pub fn pauli(axis: Axis) -> Matrix2c {
    match axis {
        Axis::X => Matrix2c::new(ZERO, ONE, ONE, ZERO),
        Axis::Y => Matrix2c::new(ZERO, -I, I, ZERO),
        Axis::Z => Matrix2c::new(ONE, ZERO, ZERO, -ONE),
    }
}

/// Kronecker product of two single-qubit operators; `a` acts on qubit 1.
pub fn kron(a: &Matrix2c, b: &Matrix2c) -> Matrix4c {
    Matrix4c::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// `σ_i ⊗ σ_j`.
pub fn sigma_product(i: Axis, j: Axis) -> Matrix4c {
    kron(&pauli(i), &pauli(j))
}

/// `σx⊗σx + σy⊗σy + σz⊗σz`.
pub fn heisenberg_hamiltonian() -> Matrix4c {
    Axis::ALL
        .iter()
        .fold(Matrix4c::zeros(), |acc, &a| acc + sigma_product(a, a))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    pub index: usize,
    pub matrix: Matrix4c,
    pub label: String,
}

fn build_basis() -> Vec<BasisElement> {
    let half = Complex64::new(0.5, 0.0);
    let id2 = Matrix2c::identity();
    let mut out = Vec::with_capacity(16);
    out.push(BasisElement {
        index: 0,
        matrix: Matrix4c::identity() * half,
        label: "I⊗I".to_string(),
    });
    for a in Axis::ALL {
        out.push(BasisElement {
            index: out.len(),
            matrix: kron(&pauli(a), &id2) * half,
            label: format!("σ{a}⊗1"),
        });
    }
    for a in Axis::ALL {
        out.push(BasisElement {
            index: out.len(),
            matrix: kron(&id2, &pauli(a)) * half,
            label: format!("1⊗σ{a}"),
        });
    }
    for a in Axis::ALL {
        for b in Axis::ALL {
            out.push(BasisElement {
                index: out.len(),
                matrix: sigma_product(a, b) * half,
                label: format!("σ{a}⊗σ{b}"),
            });
        }
    }
    out
}

/// The sixteen trace-orthonormal basis elements `X_0..X_15`.
pub fn basis() -> &'static [BasisElement] {
    static BASIS: OnceLock<Vec<BasisElement>> = OnceLock::new();
    BASIS.get_or_init(build_basis)
}

/// `exp[-i(φ/2) σ_i⊗σ_j] = cos(φ/2) I − i sin(φ/2) σ_i⊗σ_j`.
pub fn exp_one_dim(i: Axis, j: Axis, phi: f64) -> Matrix4c {
    let (s, c) = (phi / 2.0).sin_cos();
    Matrix4c::identity() * Complex64::new(c, 0.0) - sigma_product(i, j) * Complex64::new(0.0, s)
}

/// `exp[-i(cφ/2)(σx⊗σx + σy⊗σy + σz⊗σz)]` in closed form:
/// `[cos³(cφ/2) − i sin³(cφ/2)] I − (i/2) e^{icφ/2} sin(cφ) H`.
pub fn exp_heisenberg(c: f64, phi: f64) -> Matrix4c {
    let half = c * phi / 2.0;
    let (s, co) = half.sin_cos();
    let identity_coeff = Complex64::new(co.powi(3), -s.powi(3));
    let h_coeff = Complex64::new(0.0, -0.5) * Complex64::from_polar(1.0, half) * (c * phi).sin();
    Matrix4c::identity() * identity_coeff + heisenberg_hamiltonian() * h_coeff
}

/// `Tr(A B)`.
pub fn trace_product(a: &Matrix4c, b: &Matrix4c) -> Complex64 {
    let mut acc = ZERO;
    for r in 0..4 {
        for c in 0..4 {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}

/// Normalized overlap `|Tr(U†V)| / 4`; equals 1 iff `U` and `V` agree up to a global phase.
pub fn phase_insensitive_overlap(u: &Matrix4c, v: &Matrix4c) -> f64 {
    trace_product(&u.adjoint(), v).norm() / 4.0
}

/// Largest entrywise modulus of `U U† − I`.
pub fn unitarity_defect(u: &Matrix4c) -> f64 {
    (u * u.adjoint() - Matrix4c::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}
