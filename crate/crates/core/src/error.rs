use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |ρ - ρ†| = {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("coherence vector of subsystem {subsystem} has norm {norm}, above 1/2")]
    OutsideBall { subsystem: u8, norm: f64 },
    #[error("rotation axis must be a unit vector, got norm {0}")]
    BadAxis(f64),
    #[error("operator is not unitary (max |UU† - I| = {0:e})")]
    NotUnitary(f64),
    #[error("state is not a product state (max |T - 2 r1 r2ᵀ| = {0:e})")]
    NotProduct(f64),
    #[error("orbit phase is indeterminate: the orbit is a circle or a point")]
    Indeterminate,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
