//! Parameter sweeps written as CSV.

use std::io::Write;

use clap::ValueEnum;
use rayon::prelude::*;
use sipt_core::bounds::{discord_bounds_from, entanglement_bounds_from, SpectrumPair};
use sipt_core::report::VERSION;
use sipt_core::{
    deficit_oracle, gqd_oracle, make_state, negativity_stats, ppt_test, sipt_test, OracleOptions, StateSpec,
    Tolerances,
};

use crate::args::FamilyArgs;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Param {
    D,
    P,
    F,
    C1,
    C2,
    C3,
    Rank,
    K,
    Seed,
}

impl Param {
    fn is_integer(self) -> bool {
        matches!(self, Param::D | Param::Rank | Param::K | Param::Seed)
    }

    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Column {
    Negativity,
    NPlus,
    NMinus,
    LPpt,
    LPptPrime,
    LSipt,
    Combined,
    DeficitBoundBits,
    PptWitness,
    SiptWitness,
    EHsLemma,
    EHsRatio,
    EHsFloor,
    EHsLiterature,
    EReBoundBits,
    GqdOracle,
    DeficitOracle,
    /// `1 - 1/d` for max-entangled, empty otherwise.
    ExactGqd,
}

impl Column {
    pub fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

pub const DEFAULT_COLUMNS: &[Column] = &[
    Column::Negativity,
    Column::LPpt,
    Column::LSipt,
    Column::Combined,
    Column::SiptWitness,
];

/// `from, from + step, ...` up to `to` inclusive; empty when `from > to`.
pub fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) {
        return Err(CliError::Invalid("range bounds and step must be finite".into()));
    }
    if step <= 0.0 {
        return Err(CliError::Invalid(format!("--step must be positive, got {step}")));
    }
    if from > to {
        return Ok(Vec::new());
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| {
            let x = from + i as f64 * step;
            (x * 1e12).round() / 1e12
        })
        .collect())
}

fn with_param(base: &FamilyArgs, param: Param, value: f64) -> Result<StateSpec, CliError> {
    let mut args = base.clone();
    if param.is_integer() && (value < 0.0 || value.fract() != 0.0) {
        return Err(CliError::Invalid(format!(
            "parameter {} takes nonnegative integers, got {value}",
            param.name()
        )));
    }
    let n = value as usize;
    match param {
        Param::D => args.d = Some(n),
        Param::P => args.p = Some(value),
        Param::F => args.f = Some(value),
        Param::C1 => args.c1 = Some(value),
        Param::C2 => args.c2 = Some(value),
        Param::C3 => args.c3 = Some(value),
        Param::Rank => args.rank = Some(n),
        Param::K => args.k = Some(n),
        Param::Seed => args.seed = value as u64,
    }
    args.spec()
}

fn row(
    spec: &StateSpec,
    columns: &[Column],
    tol: &Tolerances,
    oracle: &OracleOptions,
) -> Result<Vec<String>, CliError> {
    let rho = make_state(spec)?;
    let dims = rho_dims(spec);
    let pair = SpectrumPair::of(&rho)?;
    let neg = negativity_stats(&pair.transposed.clone().with_tol(tol.eigen));
    let discord = discord_bounds_from(&pair)?;
    let ent = entanglement_bounds_from(&pair, dims.0, dims.1)?;
    let mut out = Vec::with_capacity(columns.len());
    for column in columns {
        let cell = match column {
            Column::Negativity => neg.negativity.to_string(),
            Column::NPlus => neg.n_plus.to_string(),
            Column::NMinus => neg.n_minus.to_string(),
            Column::LPpt => discord.l_ppt.to_string(),
            Column::LPptPrime => discord.l_ppt_prime.to_string(),
            Column::LSipt => discord.l_sipt.to_string(),
            Column::Combined => discord.combined.to_string(),
            Column::DeficitBoundBits => discord.deficit_bound_bits.to_string(),
            Column::PptWitness => ppt_test(&rho, tol)?.witness_value.to_string(),
            Column::SiptWitness => sipt_test(&rho)?.witness_value.to_string(),
            Column::EHsLemma => ent.e_hs_lemma.to_string(),
            Column::EHsRatio => ent.e_hs_ratio.to_string(),
            Column::EHsFloor => ent.e_hs_floor.to_string(),
            Column::EHsLiterature => ent.e_hs_literature.to_string(),
            Column::EReBoundBits => ent.e_re_bound_bits.to_string(),
            Column::GqdOracle => gqd_oracle(&rho, oracle)?.value.to_string(),
            Column::DeficitOracle => deficit_oracle(&rho, oracle)?.value.to_string(),
            Column::ExactGqd => match spec {
                StateSpec::MaxEntangled { d } => (1.0 - 1.0 / *d as f64).to_string(),
                _ => String::new(),
            },
        };
        out.push(cell);
    }
    Ok(out)
}

fn rho_dims(spec: &StateSpec) -> (usize, usize) {
    let d = spec.dims();
    (d.dim_a, d.dim_b)
}

pub struct SweepPlan<'a> {
    pub base: &'a FamilyArgs,
    pub param: Param,
    pub values: Vec<f64>,
    pub columns: Vec<Column>,
    pub tolerances: Tolerances,
    pub oracle: OracleOptions,
}

/// Computes all rows in parallel, then writes the comment line, header and rows in order.
pub fn run<W: Write>(plan: &SweepPlan<'_>, out: W) -> Result<(), CliError> {
    // Reject a bad fixed configuration even when the range is empty.
    if let Some(first) = plan.values.first() {
        with_param(plan.base, plan.param, *first)?;
    }
    let rows: Vec<Result<Vec<String>, CliError>> = plan
        .values
        .par_iter()
        .map(|&v| {
            let spec = with_param(plan.base, plan.param, v)?;
            let mut cells = vec![v.to_string()];
            cells.extend(row(&spec, &plan.columns, &plan.tolerances, &plan.oracle)?);
            Ok(cells)
        })
        .collect();

    let mut out = out;
    writeln!(out, "# seed={}, version={}", plan.base.seed, VERSION)?;
    let mut writer = csv::Writer::from_writer(out);
    let mut header = vec![plan.param.name()];
    header.extend(plan.columns.iter().map(|c| c.name()));
    writer.write_record(&header)?;
    for r in rows {
        writer.write_record(&r?)?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive_and_clean() {
        let g = grid(0.0, 1.0, 0.05).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[3], 0.15);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!(grid(1.0, 0.0, 0.1).unwrap().is_empty());
        assert!(grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn integer_parameters_reject_fractions() {
        let base = FamilyArgs {
            family: Some(crate::args::Family::MaxEntangled),
            ..FamilyArgs::default()
        };
        assert!(with_param(&base, Param::D, 2.5).is_err());
        assert_eq!(with_param(&base, Param::D, 3.0).unwrap(), StateSpec::MaxEntangled { d: 3 });
    }
}
