//! Upper bound on the squared Hilbert-Schmidt distance to the separable set.
//!
//! Fully corrective Frank-Wolfe over pure product states: each iteration adds the product
//! state best aligned with the residual `rho - sigma`, re-fits all mixture weights on the
//! simplex, and locally re-optimizes every atom. The iterate is separable by construction,
//! so its distance is a valid upper bound whatever the convergence state.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::states::random_unit_vector;
use super::{Argmin, OracleResult};
use crate::error::Result;
use crate::qmat::{hermitian_eigen, BipartiteDims, CMatrix, CVector, DensityMatrix, Operator, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparableOptions {
    /// Maximum number of product terms; `None` means `(MN)^2`.
    pub k: Option<usize>,
    pub iterations: usize,
    pub seed: u64,
    /// Stop once the Frank-Wolfe duality gap drops below this.
    pub tol: f64,
}

impl Default for SeparableOptions {
    fn default() -> Self {
        Self {
            k: None,
            iterations: 400,
            seed: 0,
            tol: 1e-10,
        }
    }
}

struct Atom {
    b: CVector,
    v: CVector,
}

impl Atom {
    fn new(a: CVector, b: CVector) -> Self {
        let v = a.kronecker(&b);
        Self { b, v }
    }
}

fn expectation(m: &CMatrix, v: &CVector) -> f64 {
    (v.adjoint() * m * v)[(0, 0)].re
}

fn top_eigenvector(m: &CMatrix) -> Result<CVector> {
    let (vals, vecs) = hermitian_eigen(m)?;
    let idx = vals
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    Ok(vecs.column(idx).into_owned())
}

/// `(<.| (x) <b|) m (|.> (x) |b>)`, an operator on A.
fn reduce_on_a(m: &CMatrix, b: &CVector, dims: BipartiteDims) -> CMatrix {
    let (na, nb) = (dims.dim_a, dims.dim_b);
    CMatrix::from_fn(na, na, |x, x2| {
        let mut s = C64::new(0.0, 0.0);
        for y in 0..nb {
            for y2 in 0..nb {
                s += b[y].conj() * m[(x * nb + y, x2 * nb + y2)] * b[y2];
            }
        }
        s
    })
}

fn reduce_on_b(m: &CMatrix, a: &CVector, dims: BipartiteDims) -> CMatrix {
    let (na, nb) = (dims.dim_a, dims.dim_b);
    CMatrix::from_fn(nb, nb, |y, y2| {
        let mut s = C64::new(0.0, 0.0);
        for x in 0..na {
            for x2 in 0..na {
                s += a[x].conj() * m[(x * nb + y, x2 * nb + y2)] * a[x2];
            }
        }
        s
    })
}

/// Alternating maximization of `<ab|m|ab>` starting from `b`.
fn align(m: &CMatrix, mut b: CVector, dims: BipartiteDims) -> Result<(Atom, f64)> {
    let mut a = top_eigenvector(&reduce_on_a(m, &b, dims))?;
    let mut last = f64::NEG_INFINITY;
    for _ in 0..100 {
        b = top_eigenvector(&reduce_on_b(m, &a, dims))?;
        a = top_eigenvector(&reduce_on_a(m, &b, dims))?;
        let atom = Atom::new(a.clone(), b.clone());
        let value = expectation(m, &atom.v);
        if value - last < 1e-15 {
            return Ok((atom, value));
        }
        last = value;
    }
    let atom = Atom::new(a, b);
    let value = expectation(m, &atom.v);
    Ok((atom, value))
}

/// Best product state for `m` over several starts.
fn linear_oracle(m: &CMatrix, dims: BipartiteDims, rng: &mut ChaCha8Rng) -> Result<(Atom, f64)> {
    let mut starts = Vec::new();
    // Leading Schmidt vector of the top eigenvector.
    let top = top_eigenvector(m)?;
    let psi = CMatrix::from_fn(dims.dim_a, dims.dim_b, |x, y| top[x * dims.dim_b + y]);
    let svd = psi.svd(false, true);
    if let Some(vt) = svd.v_t {
        starts.push(vt.row(0).transpose());
    }
    for _ in 0..3 {
        starts.push(random_unit_vector(dims.dim_b, rng));
    }
    let mut best: Option<(Atom, f64)> = None;
    for b in starts {
        let (atom, value) = align(m, b, dims)?;
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((atom, value));
        }
    }
    Ok(best.expect("at least one start"))
}

fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut prefix = 0.0;
    let mut theta = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        prefix += x;
        let t = (prefix - 1.0) / (i + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

/// Minimizes `w^T G w - 2 c^T w` over the simplex by accelerated projected gradient.
fn fit_weights(atoms: &[Atom], rho: &CMatrix, start: &[f64]) -> Vec<f64> {
    let k = atoms.len();
    let gram: Vec<Vec<f64>> = atoms
        .iter()
        .map(|p| atoms.iter().map(|q| (p.v.adjoint() * &q.v)[(0, 0)].norm_sqr()).collect())
        .collect();
    let c: Vec<f64> = atoms.iter().map(|p| expectation(rho, &p.v)).collect();
    let lipschitz = 2.0 * gram.iter().map(|row| row.iter().sum::<f64>()).fold(0.0, f64::max);
    let step = 1.0 / lipschitz.max(1e-12);

    let mut w = project_to_simplex(start);
    let mut y = w.clone();
    let mut t = 1.0f64;
    for _ in 0..2000 {
        let grad: Vec<f64> = (0..k)
            .map(|i| 2.0 * ((0..k).map(|j| gram[i][j] * y[j]).sum::<f64>() - c[i]))
            .collect();
        let next = project_to_simplex(&(0..k).map(|i| y[i] - step * grad[i]).collect::<Vec<_>>());
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        let change: f64 = next.iter().zip(&w).map(|(a, b)| (a - b).abs()).sum();
        y = (0..k)
            .map(|i| next[i] + (t - 1.0) / t_next * (next[i] - w[i]))
            .collect();
        w = next;
        t = t_next;
        if change < 1e-16 {
            break;
        }
    }
    w
}

fn mixture(atoms: &[Atom], w: &[f64], side: usize) -> CMatrix {
    let mut sigma = CMatrix::zeros(side, side);
    for (atom, &wi) in atoms.iter().zip(w) {
        sigma += (&atom.v * atom.v.adjoint()) * C64::new(wi, 0.0);
    }
    sigma
}

fn distance_sq(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm_sqr()).sum()
}

/// Searches mixtures of at most `k` pure product states for the one closest to `rho`.
pub fn separable_upper_search(rho: &DensityMatrix, opts: &SeparableOptions) -> Result<OracleResult> {
    let dims = rho.dims();
    let m = rho.entries();
    let side = dims.total();
    let max_terms = opts.k.unwrap_or(side * side).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let (first, _) = linear_oracle(m, dims, &mut rng)?;
    let mut atoms = vec![first];
    let mut w = vec![1.0];
    let mut converged = false;
    let mut iterations = 0;

    for _ in 0..opts.iterations {
        iterations += 1;
        // Local re-alignment of each atom against the residual without it.
        for j in 0..atoms.len() {
            let sigma = mixture(&atoms, &w, side);
            let own = (&atoms[j].v * atoms[j].v.adjoint()) * C64::new(w[j], 0.0);
            let residual = m - sigma + own;
            let (atom, value) = align(&residual, atoms[j].b.clone(), dims)?;
            if value > expectation(&residual, &atoms[j].v) {
                atoms[j] = atom;
            }
        }
        w = fit_weights(&atoms, m, &w);

        let sigma = mixture(&atoms, &w, side);
        let residual = m - &sigma;
        let (candidate, value) = linear_oracle(&residual, dims, &mut rng)?;
        let current: f64 = atoms
            .iter()
            .zip(&w)
            .map(|(a, wi)| wi * expectation(&residual, &a.v))
            .sum();
        if value - current < opts.tol {
            converged = true;
            break;
        }
        atoms.push(candidate);
        w.push(0.0);
        w = fit_weights(&atoms, m, &w);

        // Drop unused atoms, then enforce the term budget.
        let mut keep: Vec<(Atom, f64)> = atoms.drain(..).zip(w.drain(..)).filter(|(_, wi)| *wi > 1e-14).collect();
        if keep.len() > max_terms {
            keep.sort_by(|x, y| y.1.total_cmp(&x.1));
            keep.truncate(max_terms);
        }
        for (atom, wi) in keep {
            atoms.push(atom);
            w.push(wi);
        }
        let total: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= total);
    }

    let sigma = mixture(&atoms, &w, side);
    Ok(OracleResult {
        value: distance_sq(m, &sigma),
        argmin: Argmin::Description(format!(
            "mixture of {} pure product states after {iterations} iterations",
            atoms.len()
        )),
        restarts_used: 1,
        converged,
        spread: 0.0,
    })
}
