//! Coherence-vector dynamics of two-qubit systems.
//!
//! A two-qubit density matrix is stored as its coherence triple `(r1, r2, T)`,
//! the expansion coefficients on the normalized product-Pauli basis. Unitary
//! evolutions act on the triple directly; the [`oracle`] module reproduces every
//! evolution by explicit matrix conjugation for cross-checking.

pub mod control;
pub mod ellipse;
pub mod error;
pub mod evolution;
pub mod oracle;
pub mod pauli;
pub mod state;

pub use control::{
    heisenberg_entanglement_scan, reachable_disk, sample_reachable, sample_sequences,
    EntanglementReport, ReachableDisk,
};
pub use ellipse::{
    chi_closed_form, fit_one_dim, heisenberg_ellipse, semi_minor_product, Degeneracy,
    EllipseParams, Plane,
};
pub use error::{Error, Result};
pub use evolution::{
    apply_cartan, apply_heisenberg, apply_local, apply_one_dim, evolve, trace_orbit,
    InteractionSpec, OrbitSample, OrbitTrace,
};
pub use pauli::{Axis, Matrix2c, Matrix4c};
pub use state::{DensityMatrix4, Subsystem, TwoQubitState, ValidationReport};

pub use nalgebra;
pub use num_complex;
