//! Shared flag groups and their translation into core types.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use sipt_core::criteria::MomentLimit;
use sipt_core::{OracleKind, OracleOptions, StateSpec, Tolerances};

use crate::CliError;

pub const TOL_PROFILE_ENV: &str = "SIPT_TOL_PROFILE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    MaxEntangled,
    Werner,
    Isotropic,
    BellDiagonal,
    XState,
    RandomGinibre,
    RandomCq,
    RandomSeparable,
    Product,
}

/// Flags describing a state family and its parameters.
#[derive(Debug, Clone, Default, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Local dimension for max-entangled and isotropic.
    #[arg(long)]
    pub d: Option<usize>,
    /// Singlet weight for werner.
    #[arg(long)]
    pub p: Option<f64>,
    /// Fidelity for isotropic.
    #[arg(long)]
    pub f: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c3: Option<f64>,
    /// X-state diagonal `r00,r11,r22,r33`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub diag: Option<Vec<f64>>,
    /// X-state `rho_03` as `re,im`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub outer: Option<Vec<f64>>,
    /// X-state `rho_12` as `re,im`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub inner: Option<Vec<f64>>,
    /// Subsystem dimensions `M,N` (or `MxN`) for random families.
    #[arg(long, value_parser = parse_dims)]
    pub dims: Option<(usize, usize)>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Number of mixture terms for random-cq and random-separable.
    #[arg(long)]
    pub k: Option<usize>,
    /// Seed for random families and for oracle restarts.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split([',', 'x', 'X']).map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a = a.parse().map_err(|_| format!("bad dimension `{a}`"))?;
            let b = b.parse().map_err(|_| format!("bad dimension `{b}`"))?;
            Ok((a, b))
        }
        _ => Err(format!("expected `M,N`, got `{s}`")),
    }
}

fn required<T: Copy>(value: Option<T>, flag: &str, family: Family) -> Result<T, CliError> {
    value.ok_or_else(|| {
        let name = family.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        CliError::Invalid(format!("--{flag} is required for family {name}"))
    })
}

fn pair(v: &Option<Vec<f64>>, flag: &str) -> Result<[f64; 2], CliError> {
    match v.as_deref() {
        None => Ok([0.0, 0.0]),
        Some([re, im]) => Ok([*re, *im]),
        Some(other) => Err(CliError::Invalid(format!("--{flag} takes 2 values, got {}", other.len()))),
    }
}

impl FamilyArgs {
    pub fn spec(&self) -> Result<StateSpec, CliError> {
        let family = self
            .family
            .ok_or_else(|| CliError::Invalid("either --file or --family is required".into()))?;
        let (dim_a, dim_b) = self.dims.unwrap_or((2, 2));
        let seed = self.seed;
        Ok(match family {
            Family::MaxEntangled => StateSpec::MaxEntangled {
                d: required(self.d, "d", family)?,
            },
            Family::Werner => StateSpec::Werner {
                p: required(self.p, "p", family)?,
            },
            Family::Isotropic => StateSpec::Isotropic {
                d: required(self.d, "d", family)?,
                f: required(self.f, "f", family)?,
            },
            Family::BellDiagonal => StateSpec::BellDiagonal {
                c1: required(self.c1, "c1", family)?,
                c2: required(self.c2, "c2", family)?,
                c3: required(self.c3, "c3", family)?,
            },
            Family::XState => {
                let diag = match self.diag.as_deref() {
                    Some([a, b, c, d]) => [*a, *b, *c, *d],
                    Some(other) => {
                        return Err(CliError::Invalid(format!("--diag takes 4 values, got {}", other.len())))
                    }
                    None => return Err(CliError::Invalid("--diag is required for family x-state".into())),
                };
                StateSpec::XState {
                    diag,
                    outer: pair(&self.outer, "outer")?,
                    inner: pair(&self.inner, "inner")?,
                }
            }
            Family::RandomGinibre => StateSpec::RandomGinibre {
                dim_a,
                dim_b,
                rank: self.rank.unwrap_or(dim_a * dim_b),
                seed,
            },
            Family::RandomCq => StateSpec::RandomCq {
                dim_a,
                dim_b,
                k: self.k.unwrap_or(dim_a),
                seed,
            },
            Family::RandomSeparable => StateSpec::RandomSeparable {
                dim_a,
                dim_b,
                k: self.k.unwrap_or(dim_a * dim_b),
                seed,
            },
            Family::Product => StateSpec::Product { dim_a, dim_b, seed },
        })
    }
}

/// Flags selecting an input state: a matrix file or a family.
#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Matrix file to analyze; `-` reads standard input.
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleChoice {
    Gqd,
    Deficit,
    None,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Oracle to run; repeat for several.
    #[arg(long = "oracle", value_enum)]
    pub oracles: Vec<OracleChoice>,
    #[arg(long)]
    pub restarts: Option<usize>,
}

impl OracleArgs {
    pub fn kinds(&self) -> Vec<OracleKind> {
        let mut kinds = Vec::new();
        for choice in &self.oracles {
            let kind = match choice {
                OracleChoice::Gqd => OracleKind::Gqd,
                OracleChoice::Deficit => OracleKind::Deficit,
                OracleChoice::None => continue,
            };
            if !kinds.contains(&kind) {
                kinds.push(kind);
            }
        }
        kinds
    }

    pub fn options(&self, seed: u64) -> OracleOptions {
        let defaults = OracleOptions::default();
        OracleOptions {
            restarts: self.restarts.unwrap_or(defaults.restarts),
            seed,
            ..defaults
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MomentChoice {
    /// Compare moments up to `MN`.
    Mn,
    /// Compare moments up to `MN + 2`.
    MnPlusTwo,
}

#[derive(Debug, Clone, Args)]
pub struct ToleranceArgs {
    /// Base tolerance profile (default, strict, loose).
    #[arg(long, env = TOL_PROFILE_ENV)]
    pub tol_profile: Option<String>,
    #[arg(long)]
    pub tol_hermiticity: Option<f64>,
    #[arg(long)]
    pub tol_trace: Option<f64>,
    #[arg(long)]
    pub tol_psd: Option<f64>,
    #[arg(long)]
    pub tol_eigen: Option<f64>,
    #[arg(long)]
    pub tol_basis: Option<f64>,
    #[arg(long)]
    pub tol_support: Option<f64>,
    #[arg(long, value_enum, default_value = "mn")]
    pub moment_limit: MomentChoice,
}

impl ToleranceArgs {
    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        let mut tol = match &self.tol_profile {
            None => Tolerances::default(),
            Some(name) => Tolerances::profile(name)
                .ok_or_else(|| CliError::Invalid(format!("unknown tolerance profile `{name}`")))?,
        };
        let overrides = [
            (self.tol_hermiticity, &mut tol.hermiticity, "hermiticity"),
            (self.tol_trace, &mut tol.trace, "trace"),
            (self.tol_psd, &mut tol.psd, "psd"),
            (self.tol_eigen, &mut tol.eigen, "eigen"),
            (self.tol_basis, &mut tol.basis, "basis"),
            (self.tol_support, &mut tol.support, "support"),
        ];
        for (value, slot, name) in overrides {
            if let Some(v) = value {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(CliError::Invalid(format!("--tol-{name} must be a finite nonnegative number")));
                }
                *slot = v;
            }
        }
        Ok(tol)
    }

    pub fn moment_limit(&self) -> MomentLimit {
        match self.moment_limit {
            MomentChoice::Mn => MomentLimit::Composite,
            MomentChoice::MnPlusTwo => MomentLimit::CompositePlusTwo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}
