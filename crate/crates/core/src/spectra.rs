//! Spectrum-level quantities: negativity, sign counts and the Euclidean projection of a
//! unit-sum spectrum onto the probability simplex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack on `sum(values) == 1` accepted by [`simplex_project`].
pub const SIMPLEX_SUM_TOLERANCE: f64 = 1e-8;

/// Real eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    tol: f64,
}

impl Spectrum {
    /// Sorts `values` descending. Ties keep their input order.
    pub fn new(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values, tol }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Elementwise mean of two spectra of equal length; the result is re-sorted.
    pub fn midpoint(&self, other: &Spectrum) -> Result<Spectrum> {
        check_lengths(self, other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        Ok(Spectrum::new(values, self.tol))
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegativityStats {
    pub negativity: f64,
    pub n_plus: usize,
    pub n_minus: usize,
}

impl NegativityStats {
    /// `N^2 / N_+ + N^2 / N_-`, with each term taken as zero when its count is zero.
    pub fn ratio_bound(&self) -> f64 {
        let n2 = self.negativity * self.negativity;
        let term = |count: usize| if count == 0 { 0.0 } else { n2 / count as f64 };
        term(self.n_plus) + term(self.n_minus)
    }
}

/// Negativity and sign counts. Entries within `[-tol, tol]` join neither count.
pub fn negativity_stats(s: &Spectrum) -> NegativityStats {
    let mut negativity = 0.0;
    let mut n_plus = 0;
    let mut n_minus = 0;
    for &v in &s.values {
        if v > s.tol {
            n_plus += 1;
        } else if v < -s.tol {
            n_minus += 1;
            negativity -= v;
        }
    }
    NegativityStats {
        negativity,
        n_plus,
        n_minus,
    }
}

/// Result of projecting a unit-sum spectrum onto the probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexProjection {
    pub projected: Spectrum,
    /// Number of leading entries kept (shifted down by `level_shift`).
    pub cut_index: usize,
    pub level_shift: f64,
    /// Squared distance between the input and `projected`.
    pub bound_value: f64,
}

/// Euclidean projection onto the probability simplex by the cut-index rule: `n` is the
/// smallest count for which `tau = (sum_{i<=n} v_i - 1) / n >= v_{n+1}`, with
/// `v_{len+1} = -inf`. The leading `n` entries are shifted by `tau`, the rest zeroed.
pub fn simplex_project(s: &Spectrum) -> Result<SimplexProjection> {
    let v = &s.values;
    let sum: f64 = v.iter().sum();
    if v.is_empty() || (sum - 1.0).abs() > SIMPLEX_SUM_TOLERANCE {
        return Err(Error::TraceNotOne { sum });
    }

    let mut prefix = 0.0;
    let mut cut = v.len();
    let mut tau = 0.0;
    for (i, &x) in v.iter().enumerate() {
        prefix += x;
        let n = i + 1;
        let t = (prefix - 1.0) / n as f64;
        let next = v.get(n).copied().unwrap_or(f64::NEG_INFINITY);
        if t >= next {
            cut = n;
            tau = t;
            break;
        }
    }

    let projected: Vec<f64> = v
        .iter()
        .enumerate()
        .map(|(i, &x)| if i < cut { x - tau } else { 0.0 })
        .collect();
    let tail: f64 = v[cut..].iter().map(|x| x * x).sum();
    let bound_value = tail + cut as f64 * tau * tau;

    Ok(SimplexProjection {
        projected: Spectrum {
            values: projected,
            tol: s.tol,
        },
        cut_index: cut,
        level_shift: tau,
        bound_value,
    })
}

/// `sum (a_i - b_i)^2` over the two sorted spectra.
pub fn spectrum_distance_sq(a: &Spectrum, b: &Spectrum) -> Result<f64> {
    check_lengths(a, b)?;
    Ok(a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y) * (x - y))
        .sum())
}

fn check_lengths(a: &Spectrum, b: &Spectrum) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec(), 1e-10)
    }

    #[test]
    fn sorts_descending() {
        let s = spec(&[0.1, 0.5, -0.2, 0.6]);
        assert_eq!(s.values(), &[0.6, 0.5, 0.1, -0.2]);
    }

    #[test]
    fn negativity_examples() {
        let st = negativity_stats(&spec(&[0.5, 0.5, 0.5, -0.5]));
        assert_eq!((st.negativity, st.n_plus, st.n_minus), (0.5, 3, 1));

        let st = negativity_stats(&spec(&[1.0, 0.0, 0.0, 0.0]));
        assert_eq!((st.negativity, st.n_plus, st.n_minus), (0.0, 1, 0));
        assert_eq!(st.ratio_bound(), 0.0);

        let mut v = vec![1.0 / 3.0; 6];
        v.extend([-1.0 / 3.0; 3]);
        let st = negativity_stats(&spec(&v));
        assert!((st.negativity - 1.0).abs() < 1e-15);
        assert_eq!((st.n_plus, st.n_minus), (6, 3));
    }

    #[test]
    fn projection_bell_partial_transpose() {
        let p = simplex_project(&spec(&[0.5, 0.5, 0.5, -0.5])).unwrap();
        assert_eq!(p.cut_index, 3);
        assert!((p.level_shift - 1.0 / 6.0).abs() < 1e-15);
        assert!((p.bound_value - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn projection_of_distribution_is_identity() {
        let p = simplex_project(&spec(&[0.25; 4])).unwrap();
        assert_eq!(p.cut_index, 4);
        assert_eq!(p.level_shift, 0.0);
        assert_eq!(p.bound_value, 0.0);
        assert_eq!(p.projected.values(), &[0.25; 4]);
    }

    #[test]
    fn projection_mean_spectrum() {
        let p = simplex_project(&spec(&[0.75, 0.25, 0.25, -0.25])).unwrap();
        assert_eq!(p.cut_index, 3);
        assert!((p.level_shift - 1.0 / 12.0).abs() < 1e-15);
        assert!((p.bound_value - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn projection_rejects_non_unit_sum() {
        assert!(matches!(
            simplex_project(&spec(&[0.5, 0.6])),
            Err(Error::TraceNotOne { .. })
        ));
    }

    #[test]
    fn distance_examples() {
        let a = spec(&[1.0, 0.0, 0.0, 0.0]);
        let b = spec(&[0.5, 0.5, 0.5, -0.5]);
        assert!((spectrum_distance_sq(&a, &b).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(spectrum_distance_sq(&b, &b).unwrap(), 0.0);
        assert!(matches!(
            spectrum_distance_sq(&a, &spec(&[1.0])),
            Err(Error::LengthMismatch { left: 4, right: 1 })
        ));
    }

    #[test]
    fn equality_case_uniform_positive_part() {
        // Werner p = 0.5 partial transpose spectrum.
        let s = spec(&[0.375, 0.375, 0.375, -0.125]);
        let p = simplex_project(&s).unwrap();
        let st = negativity_stats(&s);
        assert!((p.bound_value - st.ratio_bound()).abs() < 1e-10);
        assert!((p.bound_value - 1.0 / 48.0).abs() < 1e-15);
    }

    fn unit_sum_vector() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1.0f64..1.0, 1..12).prop_map(|mut v| {
            let shift = (v.iter().sum::<f64>() - 1.0) / v.len() as f64;
            v.iter_mut().for_each(|x| *x -= shift);
            v
        })
    }

    proptest! {
        #[test]
        fn projection_invariants(v in unit_sum_vector()) {
            let s = spec(&v);
            let p = simplex_project(&s).unwrap();
            let q = p.projected.values();
            prop_assert!(q.iter().all(|&x| x >= -1e-15));
            prop_assert!((q.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            // Descending order is preserved.
            prop_assert!(q.windows(2).all(|w| w[0] >= w[1]));
            // Bound equals the achieved distance.
            let d = spectrum_distance_sq(&s, &p.projected).unwrap();
            prop_assert!((d - p.bound_value).abs() < 1e-12);
            // Minimality of the cut index.
            let vals = s.values();
            let mut prefix = 0.0;
            for n in 1..p.cut_index {
                prefix += vals[n - 1];
                prop_assert!((prefix - 1.0) / (n as f64) < vals[n]);
            }
        }

        #[test]
        fn projection_beats_random_distributions(v in unit_sum_vector(), w in prop::collection::vec(0.0f64..1.0, 12)) {
            let s = spec(&v);
            let p = simplex_project(&s).unwrap();
            let w = &w[..s.len()];
            let total: f64 = w.iter().sum();
            prop_assume!(total > 1e-6);
            let d: f64 = s.values().iter().zip(w).map(|(x, y)| (x - y / total).powi(2)).sum();
            prop_assert!(p.bound_value <= d + 1e-12);
        }
    }
}
