//! Fixed inputs shared by the benchmarks.

use sipt_core::{make_state, DensityMatrix, StateSpec};

/// Seeded full-rank state of the given local dimensions.
pub fn ginibre(dim_a: usize, dim_b: usize) -> DensityMatrix {
    make_state(&StateSpec::RandomGinibre {
        dim_a,
        dim_b,
        rank: dim_a * dim_b,
        seed: 2024,
    })
    .expect("valid fixture")
}

pub fn werner(p: f64) -> DensityMatrix {
    make_state(&StateSpec::Werner { p }).expect("valid fixture")
}

/// Dimension pairs the size-scaling benchmarks run over.
pub const SIZES: &[(usize, usize)] = &[(2, 2), (3, 3), (4, 4), (6, 6), (8, 8)];
