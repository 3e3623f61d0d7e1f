//! Brute-force verifiers and the state factory.
//!
//! Every oracle value is an upper bound on the exact minimum it targets; the analytic
//! bounds must therefore never exceed it.

mod search;
mod separable;
mod simplex_qp;
mod states;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{
    entropy_of_values, hermitian_eigenvalues, BipartiteDims, CMatrix, DensityMatrix, Measurement, Operator,
    Subsystem, Tolerances, C64,
};
use search::{minimize_over_bases, SearchConfig};

pub use separable::{separable_upper_search, SeparableOptions};
pub use simplex_qp::simplex_qp_oracle;
pub use states::{make_state, StateSpec};

/// Options for the measurement-search oracles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Random starts for subsystems of dimension >= 3 (dimension 2 uses the grid plus up to
    /// four refined grid minima).
    pub restarts: usize,
    /// `(polar, azimuthal)` grid size for two-dimensional subsystems.
    pub grid: (usize, usize),
    /// Nested refinement levels around each grid candidate.
    pub refine_levels: usize,
    /// Stop a descent when a full sweep improves the objective by less than this.
    pub tol: f64,
    pub max_sweeps: usize,
    pub seed: u64,
    pub warm_start: Option<Measurement>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            grid: (64, 128),
            refine_levels: 2,
            tol: 1e-10,
            max_sweeps: 200,
            seed: 0,
            warm_start: None,
        }
    }
}

impl OracleOptions {
    fn search_config(&self) -> SearchConfig {
        SearchConfig {
            restarts: self.restarts,
            grid: self.grid,
            refine_levels: self.refine_levels,
            tol: self.tol,
            max_sweeps: self.max_sweeps,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Argmin {
    Measurement(Measurement),
    Description(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    pub argmin: Argmin,
    pub restarts_used: usize,
    pub converged: bool,
    /// Max minus min of the final values across starts.
    pub spread: f64,
}

/// Unnormalized diagonal blocks of `m` in the local basis `w` on `side`: block `i` is
/// `(<w_i| (x) I) m (|w_i> (x) I)` for side A, and the analogue on B.
fn diagonal_blocks(m: &CMatrix, w: &CMatrix, dims: BipartiteDims, side: Subsystem) -> Vec<CMatrix> {
    let (na, nb) = (dims.dim_a, dims.dim_b);
    let (local, other) = match side {
        Subsystem::A => (na, nb),
        Subsystem::B => (nb, na),
    };
    let index = |measured: usize, rest: usize| match side {
        Subsystem::A => measured * nb + rest,
        Subsystem::B => rest * nb + measured,
    };
    (0..local)
        .map(|col| {
            let mut block = CMatrix::zeros(other, other);
            for x in 0..local {
                for x2 in 0..local {
                    let coeff: C64 = w[(x, col)].conj() * w[(x2, col)];
                    if coeff.norm_sqr() == 0.0 {
                        continue;
                    }
                    for r in 0..other {
                        for r2 in 0..other {
                            block[(r, r2)] += coeff * m[(index(x, r), index(x2, r2))];
                        }
                    }
                }
            }
            block
        })
        .collect()
}

fn check_warm_start(warm: &Option<Measurement>, dims: BipartiteDims, side: Subsystem) -> Result<Option<CMatrix>> {
    match warm {
        None => Ok(None),
        Some(m) if m.subsystem() == side && m.dim() == dims.of(side) => Ok(Some(m.unitary().clone())),
        Some(m) => Err(Error::InvalidArgument(format!(
            "warm start must be a {}-dimensional basis on {side:?}, got {} on {:?}",
            dims.of(side),
            m.dim(),
            m.subsystem()
        ))),
    }
}

fn measurement_result(outcome: search::SearchOutcome, side: Subsystem) -> Result<OracleResult> {
    let argmin = Measurement::from_unitary(outcome.unitary, side, 1e-8)?;
    Ok(OracleResult {
        value: outcome.value,
        argmin: Argmin::Measurement(argmin),
        restarts_used: outcome.restarts_used,
        converged: outcome.converged,
        spread: outcome.spread,
    })
}

/// Geometric discord: minimal `|rho - pinch_A(rho)|_2^2` over rank-1 projective
/// measurements on A.
pub fn gqd_oracle(rho: &DensityMatrix, opts: &OracleOptions) -> Result<OracleResult> {
    let dims = rho.dims();
    let warm = check_warm_start(&opts.warm_start, dims, Subsystem::A)?;
    let m = rho.entries();
    let total: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    let objective = |w: &CMatrix| {
        let kept: f64 = diagonal_blocks(m, w, dims, Subsystem::A)
            .iter()
            .map(|b| b.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum();
        (total - kept).max(0.0)
    };
    let outcome = minimize_over_bases(&objective, dims.dim_a, warm.as_ref(), &opts.search_config());
    measurement_result(outcome, Subsystem::A)
}

/// One-way deficit in bits, measured on B: minimal `S(pinch_B(rho)) - S(rho)`.
pub fn deficit_oracle(rho: &DensityMatrix, opts: &OracleOptions) -> Result<OracleResult> {
    deficit_oracle_on(rho, Subsystem::B, opts)
}

/// Deficit with the dephasing applied on the chosen subsystem.
pub fn deficit_oracle_on(rho: &DensityMatrix, side: Subsystem, opts: &OracleOptions) -> Result<OracleResult> {
    let dims = rho.dims();
    let warm = check_warm_start(&opts.warm_start, dims, side)?;
    let eps = Tolerances::default().eigen;
    let m = rho.entries();
    let base = entropy_of_values(&hermitian_eigenvalues(m)?, eps);
    let objective = |w: &CMatrix| {
        let mut s = 0.0;
        for block in diagonal_blocks(m, w, dims, side) {
            match hermitian_eigenvalues(&block) {
                Ok(vals) => s += entropy_of_values(&vals, eps),
                Err(_) => return f64::INFINITY,
            }
        }
        (s - base).max(0.0)
    };
    let outcome = minimize_over_bases(&objective, dims.of(side), warm.as_ref(), &opts.search_config());
    measurement_result(outcome, side)
}
