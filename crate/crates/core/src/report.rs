//! One-shot analysis of a state: all criteria, bounds and optional oracle runs.

use serde::{Deserialize, Serialize};

use crate::bounds::{discord_bounds_from, entanglement_bounds_from, DiscordBounds, EntanglementBounds, SpectrumPair};
use crate::criteria::{ppt_test, sipt_moment_test, sipt_test, CriterionVerdict, MomentLimit};
use crate::error::Result;
use crate::oracles::{deficit_oracle, deficit_oracle_on, gqd_oracle, OracleOptions, OracleResult};
use crate::qmat::{BipartiteDims, DensityMatrix, Operator, Subsystem, Tolerances};
use crate::spectra::{negativity_stats, NegativityStats};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    Gqd,
    Deficit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOptions {
    pub tolerances: Tolerances,
    pub moment_limit: MomentLimit,
    pub oracles: Vec<OracleKind>,
    pub oracle_options: OracleOptions,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            moment_limit: MomentLimit::Composite,
            oracles: Vec::new(),
            oracle_options: OracleOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub ppt: CriterionVerdict,
    pub sipt: CriterionVerdict,
    pub sipt_moments: CriterionVerdict,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub gqd: Option<OracleResult>,
    /// Dephasing on B.
    pub deficit: Option<OracleResult>,
    /// Dephasing on A, reported for square dimensions.
    pub deficit_a: Option<OracleResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub state_id: String,
    pub dims: BipartiteDims,
    pub criteria: CriteriaReport,
    pub negativity: NegativityStats,
    pub spectrum: Vec<f64>,
    pub transposed_spectrum: Vec<f64>,
    pub discord_bounds: DiscordBounds,
    pub entanglement_bounds: EntanglementBounds,
    pub oracles: OracleReport,
    pub tolerances: Tolerances,
    pub version: String,
}

pub fn analyze(rho: &DensityMatrix, state_id: &str, opts: &AnalyzeOptions) -> Result<CorrelationReport> {
    let dims = rho.dims();
    let pair = SpectrumPair::of(rho)?;
    let transposed = pair.transposed.clone().with_tol(opts.tolerances.eigen);

    let mut oracles = OracleReport::default();
    for kind in &opts.oracles {
        match kind {
            OracleKind::Gqd => oracles.gqd = Some(gqd_oracle(rho, &opts.oracle_options)?),
            OracleKind::Deficit => {
                oracles.deficit = Some(deficit_oracle(rho, &opts.oracle_options)?);
                if dims.dim_a == dims.dim_b {
                    oracles.deficit_a = Some(deficit_oracle_on(rho, Subsystem::A, &opts.oracle_options)?);
                }
            }
        }
    }

    Ok(CorrelationReport {
        state_id: state_id.to_string(),
        dims,
        criteria: CriteriaReport {
            ppt: ppt_test(rho, &opts.tolerances)?,
            sipt: sipt_test(rho)?,
            sipt_moments: sipt_moment_test(rho, opts.moment_limit)?,
        },
        negativity: negativity_stats(&transposed),
        spectrum: pair.original.values().to_vec(),
        transposed_spectrum: pair.transposed.values().to_vec(),
        discord_bounds: discord_bounds_from(&pair)?,
        entanglement_bounds: entanglement_bounds_from(&pair, dims.dim_a, dims.dim_b)?,
        oracles,
        tolerances: opts.tolerances,
        version: VERSION.to_string(),
    })
}
