//! PPT, spectrum-invariance (SIPT) and moment-based SIPT criteria.
//!
//! A violated PPT test certifies entanglement. A violated SIPT test certifies discord: the
//! spectrum of a classical-quantum state is unchanged by partial transposition. Neither
//! `Satisfied` verdict proves the absence of the respective correlation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{moments, partial_transpose, spectrum, DensityMatrix, Operator, Subsystem, Tolerances};
use crate::spectra::{negativity_stats, spectrum_distance_sq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Violated,
    Satisfied,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub verdict: Verdict,
    pub witness_value: f64,
    pub threshold: f64,
    pub detail: String,
}

impl CriterionVerdict {
    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

/// Highest moment order examined by [`sipt_moment_test`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentLimit {
    /// `M * N` moments; enough to fix the spectrum through Newton's identities.
    Composite,
    /// `M * N + 2` moments.
    CompositePlusTwo,
    Fixed(usize),
}

impl MomentLimit {
    pub fn resolve(self, composite: usize) -> usize {
        match self {
            MomentLimit::Composite => composite,
            MomentLimit::CompositePlusTwo => composite + 2,
            MomentLimit::Fixed(n) => n,
        }
    }
}

/// Threshold on the squared spectrum gap: `1e-10 * M * N`.
pub fn sipt_threshold(composite: usize) -> f64 {
    1e-10 * composite as f64
}

/// Threshold on the `n`-th moment gap: `1e-9 * n`.
pub fn moment_threshold(n: usize) -> f64 {
    1e-9 * n as f64
}

/// Violated iff the partial transpose has an eigenvalue below `-tol.psd`.
/// The witness is the negativity.
pub fn ppt_test(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionVerdict> {
    let pt = spectrum(&partial_transpose(rho, Subsystem::A))?.with_tol(tol.eigen);
    let stats = negativity_stats(&pt);
    let min = pt.min();
    let verdict = if min < -tol.psd {
        Verdict::Violated
    } else {
        Verdict::Satisfied
    };
    Ok(CriterionVerdict {
        verdict,
        witness_value: stats.negativity,
        threshold: tol.psd,
        detail: format!("negativity of the partial transpose (min eigenvalue {min:.3e})"),
    })
}

/// Squared L2 gap between the sorted spectra of `rho` and its partial transpose.
pub fn sipt_test(rho: &DensityMatrix) -> Result<CriterionVerdict> {
    let before = spectrum(rho)?;
    let after = spectrum(&partial_transpose(rho, Subsystem::A))?;
    let gap = spectrum_distance_sq(&before, &after)?;
    let threshold = sipt_threshold(rho.dims().total());
    let verdict = if gap > threshold {
        Verdict::Violated
    } else {
        Verdict::Satisfied
    };
    Ok(CriterionVerdict {
        verdict,
        witness_value: gap,
        threshold,
        detail: "squared distance between sorted spectra of rho and its partial transpose".into(),
    })
}

/// Compares `Tr(rho^n)` with `Tr((rho^T_A)^n)` for `3 <= n <= n_limit`.
///
/// Orders 1 and 2 always agree, so they are skipped. When no gap exceeds its threshold the
/// verdict is `Satisfied` if at least `M * N` moments were compared and `Inconclusive`
/// otherwise.
pub fn sipt_moment_test(rho: &DensityMatrix, limit: MomentLimit) -> Result<CriterionVerdict> {
    let composite = rho.dims().total();
    let n_limit = limit.resolve(composite);
    if n_limit < 3 {
        return Err(Error::InvalidArgument(format!(
            "moment test needs n_limit >= 3, got {n_limit}"
        )));
    }
    let original = moments(rho, n_limit)?;
    let transposed = moments(&partial_transpose(rho, Subsystem::A), n_limit)?;
    for n in 3..=n_limit {
        let gap = (original[n - 1] - transposed[n - 1]).abs();
        let threshold = moment_threshold(n);
        if gap > threshold {
            return Ok(CriterionVerdict {
                verdict: Verdict::Violated,
                witness_value: gap,
                threshold,
                detail: format!("moment gap at n = {n}"),
            });
        }
    }
    let verdict = if n_limit >= composite {
        Verdict::Satisfied
    } else {
        Verdict::Inconclusive
    };
    Ok(CriterionVerdict {
        verdict,
        witness_value: 0.0,
        threshold: moment_threshold(n_limit),
        detail: format!("moments 3..={n_limit} agree"),
    })
}

/// Absolute gaps `|Tr(rho^n) - Tr((rho^T_A)^n)|` for `n = 1..=n_max`.
pub fn moment_gaps(rho: &DensityMatrix, n_max: usize) -> Result<Vec<f64>> {
    let original = moments(rho, n_max)?;
    let transposed = moments(&partial_transpose(rho, Subsystem::A), n_max)?;
    Ok(original
        .iter()
        .zip(&transposed)
        .map(|(a, b)| (a - b).abs())
        .collect())
}
