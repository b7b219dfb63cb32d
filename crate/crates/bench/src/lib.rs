//! Fixed inputs shared by the benchmarks.

use orbits_core::oracle::{random_product, random_state};
use orbits_core::{Axis, InteractionSpec, Subsystem, TwoQubitState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn states(n: usize) -> Vec<TwoQubitState> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0b);
    (0..n).map(|_| random_state(&mut rng)).collect()
}

pub fn product_state() -> TwoQubitState {
    random_product(&mut ChaCha8Rng::seed_from_u64(0xb0c))
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xb0d)
}

/// One spec of each kind.
pub fn specs() -> [(&'static str, InteractionSpec); 4] {
    [
        (
            "local",
            InteractionSpec::Local {
                target: Subsystem::Two,
                axis: [0.0, 0.6, 0.8],
                angle: 1.1,
            },
        ),
        (
            "one_dim",
            InteractionSpec::OneDim {
                i: Axis::X,
                j: Axis::Z,
                phi: 0.7,
            },
        ),
        (
            "heisenberg",
            InteractionSpec::Heisenberg { c: 1.0, phi: 0.4 },
        ),
        (
            "cartan",
            InteractionSpec::Cartan {
                c: [0.3, -1.2, 2.0],
            },
        ),
    ]
}
