//! Quantum-correlation analysis built on partial transposition.
//!
//! * [`qmat`]: validated bipartite density matrices, partial transpose, spectra, moments,
//!   norms, entropies and dephasing.
//! * [`spectra`]: negativity, sign counts and the simplex projection of a spectrum.
//! * [`criteria`]: PPT (entanglement) and spectrum-invariance (discord) tests.
//! * [`bounds`]: analytic lower bounds on geometric discord, one-way deficit, geometric
//!   entanglement and relative entropy of entanglement.
//! * [`oracles`]: state factory and brute-force searches the bounds are checked against.
//! * [`report`] and [`matfile`]: whole-state reports and the canonical matrix file format.
//!
//! Composite indices follow `k = a * N + b` for `|a>_A |b>_B` throughout.

pub mod bounds;
pub mod criteria;
pub mod error;
pub mod matfile;
pub mod oracles;
pub mod qmat;
pub mod report;
pub mod spectra;

pub use bounds::{discord_bounds, entanglement_bounds, l_ppt, l_ppt_prime, l_sipt, DiscordBounds, EntanglementBounds};
pub use criteria::{ppt_test, sipt_moment_test, sipt_test, CriterionVerdict, MomentLimit, Verdict};
pub use error::{Error, Result};
pub use oracles::{
    deficit_oracle, gqd_oracle, make_state, separable_upper_search, simplex_qp_oracle, OracleOptions, OracleResult,
    SeparableOptions, StateSpec,
};
pub use qmat::{
    partial_transpose, spectrum, validate_density, BipartiteDims, CMatrix, DensityMatrix, HermitianMatrix,
    Measurement, Operator, Subsystem, Tolerances, C64,
};
pub use report::{analyze, AnalyzeOptions, CorrelationReport, OracleKind};
pub use spectra::{negativity_stats, simplex_project, NegativityStats, SimplexProjection, Spectrum};
