//! Derivative-free minimization of a function of a local orthonormal basis.
//!
//! Objectives depend on the basis only through its rank-1 projectors, so column phases are
//! irrelevant. Local descent sweeps over two-level rotations (one real and one imaginary
//! generator per index pair) applied on the right of the current unitary; each step is an
//! exact-enough one-dimensional minimization over a half period. Two-dimensional subsystems
//! are additionally scanned on a Bloch-sphere grid with nested refinement.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::states::haar_unitary;
use crate::qmat::{CMatrix, C64};

#[derive(Debug, Clone)]
pub(crate) struct SearchConfig {
    pub restarts: usize,
    pub grid: (usize, usize),
    pub refine_levels: usize,
    pub tol: f64,
    pub max_sweeps: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub(crate) struct SearchOutcome {
    pub unitary: CMatrix,
    pub value: f64,
    pub restarts_used: usize,
    pub converged: bool,
    pub spread: f64,
}

#[derive(Debug, Clone)]
struct Descent {
    unitary: CMatrix,
    value: f64,
    converged: bool,
}

/// Basis with first vector on the Bloch sphere at `(theta, phi)`.
pub(crate) fn bloch_basis(theta: f64, phi: f64) -> CMatrix {
    let (s, c) = (0.5 * theta).sin_cos();
    let e = C64::from_polar(1.0, phi);
    CMatrix::from_row_slice(2, 2, &[C64::new(c, 0.0), -e.conj() * s, e * s, C64::new(c, 0.0)])
}

fn rotate(u: &CMatrix, i: usize, j: usize, imaginary: bool, t: f64) -> CMatrix {
    let (s, c) = t.sin_cos();
    let mut out = u.clone();
    for r in 0..u.nrows() {
        let (ui, uj) = (u[(r, i)], u[(r, j)]);
        if imaginary {
            let is = C64::new(0.0, s);
            out[(r, i)] = ui * c + uj * is;
            out[(r, j)] = ui * is + uj * c;
        } else {
            out[(r, i)] = ui * c + uj * s;
            out[(r, j)] = -ui * s + uj * c;
        }
    }
    out
}

const LINE_SAMPLES: usize = 16;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Minimizes `g` over `[-pi/2, pi/2)`; returns `(t, g(t))` with `g(t) <= g(0)`.
fn line_minimize<G: Fn(f64) -> f64>(g: &G, g0: f64) -> (f64, f64) {
    let h = PI / LINE_SAMPLES as f64;
    let mut best = (0.0, g0);
    for k in 0..LINE_SAMPLES {
        let t = -0.5 * PI + k as f64 * h;
        if t == 0.0 {
            continue;
        }
        let v = g(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    let (mut lo, mut hi) = (best.0 - h, best.0 + h);
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    while hi - lo > 1e-10 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = g(x2);
        }
    }
    let (t, v) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    if v < best.1 {
        (t, v)
    } else {
        best
    }
}

fn descend<F: Fn(&CMatrix) -> f64>(f: &F, start: CMatrix, cfg: &SearchConfig) -> Descent {
    let n = start.nrows();
    let mut u = start;
    let mut value = f(&u);
    if n < 2 {
        return Descent {
            unitary: u,
            value,
            converged: true,
        };
    }
    for _ in 0..cfg.max_sweeps {
        let before = value;
        for i in 0..n {
            for j in (i + 1)..n {
                for imaginary in [false, true] {
                    let g = |t: f64| f(&rotate(&u, i, j, imaginary, t));
                    let (t, v) = line_minimize(&g, value);
                    if v < value {
                        u = rotate(&u, i, j, imaginary, t);
                        value = v;
                    }
                }
            }
        }
        if before - value < cfg.tol {
            return Descent {
                unitary: u,
                value,
                converged: true,
            };
        }
    }
    Descent {
        unitary: u,
        value,
        converged: false,
    }
}

/// Best points of a `(theta, phi)` grid, each refined by nested local grids.
fn bloch_candidates<F: Fn(&CMatrix) -> f64>(f: &F, cfg: &SearchConfig, count: usize) -> Vec<CMatrix> {
    let (nt, np) = (cfg.grid.0.max(2), cfg.grid.1.max(1));
    let dt = PI / (nt - 1) as f64;
    let dp = 2.0 * PI / np as f64;
    let mut scored: Vec<(f64, f64, f64)> = (0..nt)
        .flat_map(|a| (0..np).map(move |b| (a as f64 * dt, b as f64 * dp)))
        .map(|(t, p)| (f(&bloch_basis(t, p)), t, p))
        .collect();
    scored.sort_by(|x, y| x.0.total_cmp(&y.0));

    // Keep well separated seeds; antipodal points give the same measurement.
    let mut seeds: Vec<(f64, f64)> = Vec::new();
    for &(_, t, p) in &scored {
        if seeds.len() >= count {
            break;
        }
        let n = bloch_vector(t, p);
        if seeds
            .iter()
            .all(|&(t2, p2)| dot(&n, &bloch_vector(t2, p2)).abs() < 0.95)
        {
            seeds.push((t, p));
        }
    }

    seeds
        .into_iter()
        .map(|(mut t, mut p)| {
            let (mut ht, mut hp) = (dt, dp);
            for _ in 0..cfg.refine_levels {
                const SUB: usize = 16;
                let mut best = (f(&bloch_basis(t, p)), t, p);
                for a in 0..=SUB {
                    for b in 0..=SUB {
                        let tt = t - ht + 2.0 * ht * a as f64 / SUB as f64;
                        let pp = p - hp + 2.0 * hp * b as f64 / SUB as f64;
                        let v = f(&bloch_basis(tt, pp));
                        if v < best.0 {
                            best = (v, tt, pp);
                        }
                    }
                }
                t = best.1;
                p = best.2;
                ht *= 2.0 / SUB as f64;
                hp *= 2.0 / SUB as f64;
            }
            bloch_basis(t, p)
        })
        .collect()
}

fn bloch_vector(t: f64, p: f64) -> [f64; 3] {
    [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Multi-start minimization of `f` over `dim x dim` unitaries.
///
/// Starts are: the warm start (if any), the identity, Bloch-grid candidates when `dim == 2`,
/// then Haar-random unitaries drawn from `cfg.seed`. Descents run in parallel; the result is
/// the minimum by value with ties broken by start index.
pub(crate) fn minimize_over_bases<F>(f: &F, dim: usize, warm: Option<&CMatrix>, cfg: &SearchConfig) -> SearchOutcome
where
    F: Fn(&CMatrix) -> f64 + Sync,
{
    let mut starts: Vec<CMatrix> = Vec::new();
    if let Some(w) = warm {
        starts.push(w.clone());
    }
    starts.push(CMatrix::identity(dim, dim));
    if dim == 2 {
        starts.extend(bloch_candidates(f, cfg, cfg.restarts.clamp(1, 4)));
    } else if dim > 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        starts.extend((0..cfg.restarts).map(|_| haar_unitary(dim, &mut rng)));
    }

    let runs: Vec<Descent> = starts.into_par_iter().map(|s| descend(f, s, cfg)).collect();
    let (best_idx, _) = runs
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .expect("at least one start");
    let max = runs.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    let best = &runs[best_idx];
    SearchOutcome {
        unitary: best.unitary.clone(),
        value: best.value,
        restarts_used: runs.len(),
        converged: best.converged,
        spread: max - best.value,
    }
}
