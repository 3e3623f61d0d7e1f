#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sipt_core::qmat::tensor;
use sipt_core::{make_state, validate_density, CMatrix, DensityMatrix, Operator, StateSpec, Tolerances, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Ginibre state of random rank on the given dims.
pub fn random_state(dims: (usize, usize), rng: &mut ChaCha8Rng) -> DensityMatrix {
    let n = dims.0 * dims.1;
    make_state(&StateSpec::RandomGinibre {
        dim_a: dims.0,
        dim_b: dims.1,
        rank: rng.random_range(1..=n),
        seed: rng.random(),
    })
    .unwrap()
}

/// Classical-quantum state with a random number of branches.
pub fn random_cq(dims: (usize, usize), rng: &mut ChaCha8Rng) -> DensityMatrix {
    make_state(&StateSpec::RandomCq {
        dim_a: dims.0,
        dim_b: dims.1,
        k: rng.random_range(1..=dims.0),
        seed: rng.random(),
    })
    .unwrap()
}

/// Real vector of the given length shifted to sum exactly one (up to rounding).
pub fn unit_sum_vector(len: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut v: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
    let shift = (v.iter().sum::<f64>() - 1.0) / len as f64;
    v.iter_mut().for_each(|x| *x -= shift);
    v
}

/// Haar-random unitary from the QR decomposition of a complex Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(rand_distr::StandardNormal);
        let im: f64 = rng.sample(rand_distr::StandardNormal);
        C64::new(re, im)
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMatrix::from_fn(n, n, |i, j| if i == j { r[(i, i)] / r[(i, i)].norm() } else { C64::new(0.0, 0.0) });
    q * phases
}

/// `(U (x) V) rho (U (x) V)^dagger` for independent Haar-random `U`, `V`.
pub fn locally_rotated(rho: &DensityMatrix, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let dims = rho.dims();
    let w = tensor(&random_unitary(dims.dim_a, rng), &random_unitary(dims.dim_b, rng));
    let rotated = &w * rho.entries() * w.adjoint();
    validate_density(rotated, dims, &Tolerances::default()).unwrap()
}
