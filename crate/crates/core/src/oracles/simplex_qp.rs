//! Projection onto the probability simplex by enumeration of support patterns.
//!
//! For a fixed support `S` the equality-constrained minimizer is `q_i = v_i - mu` on `S` with
//! `mu = (sum_S v - 1) / |S|`, zero elsewhere. The optimum is feasible for its own support,
//! so the best feasible pattern is the global minimizer. No sorting or cut rule is used.

use crate::error::{Error, Result};
use crate::spectra::SIMPLEX_SUM_TOLERANCE;

const EXHAUSTIVE_MAX_LEN: usize = 12;

/// Returns `(projection, squared distance)` of `v` onto `{q >= 0, sum q = 1}`.
pub fn simplex_qp_oracle(v: &[f64]) -> Result<(Vec<f64>, f64)> {
    let sum: f64 = v.iter().sum();
    if v.is_empty() || (sum - 1.0).abs() > SIMPLEX_SUM_TOLERANCE {
        return Err(Error::TraceNotOne { sum });
    }
    let q = if v.len() <= EXHAUSTIVE_MAX_LEN {
        exhaustive(v)
    } else {
        bisection(v)
    };
    let d = v.iter().zip(&q).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok((q, d))
}

fn exhaustive(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut best: Option<(f64, u32)> = None;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as f64;
        let inside: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).sum();
        let mu = (inside - 1.0) / size;
        let mut dist = 0.0;
        let mut feasible = true;
        for (i, &x) in v.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if x - mu < -1e-15 {
                    feasible = false;
                    break;
                }
                dist += mu * mu;
            } else {
                dist += x * x;
            }
        }
        if feasible && best.is_none_or(|(d, _)| dist < d) {
            best = Some((dist, mask));
        }
    }
    let (_, mask) = best.expect("the full support with mu = 0 is feasible when sum = 1");
    let inside: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).sum();
    let mu = (inside - 1.0) / mask.count_ones() as f64;
    (0..n)
        .map(|i| if mask >> i & 1 == 1 { (v[i] - mu).max(0.0) } else { 0.0 })
        .collect()
}

/// Solves `sum max(v_i - mu, 0) = 1` for `mu` by bisection.
fn bisection(v: &[f64]) -> Vec<f64> {
    let mass = |mu: f64| v.iter().map(|x| (x - mu).max(0.0)).sum::<f64>();
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (mut lo, mut hi) = (max - 1.0, max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mass(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mu = 0.5 * (lo + hi);
    v.iter().map(|x| (x - mu).max(0.0)).collect()
}
