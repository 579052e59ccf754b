//! TOML run configuration.

use crate::concentration::{default_c_grid, BoundId};
use crate::dist::FiniteDist;
use crate::error::{Error, Result};
use crate::numeric::log_grid;
use crate::orlicz::{default_grid, validate, OrliczFunction};
use serde::Deserialize;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Norm,
    CheckHj,
    Counterexample,
    RatioSweep,
    Series,
    Tails,
    Calibrate,
    VerifyLemmas,
    CrucialCheck,
    PoissonCheck,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Norm,
        Command::CheckHj,
        Command::Counterexample,
        Command::RatioSweep,
        Command::Series,
        Command::Tails,
        Command::Calibrate,
        Command::VerifyLemmas,
        Command::CrucialCheck,
        Command::PoissonCheck,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Norm => "norm",
            Command::CheckHj => "check-hj",
            Command::Counterexample => "counterexample",
            Command::RatioSweep => "ratio-sweep",
            Command::Series => "series",
            Command::Tails => "tails",
            Command::Calibrate => "calibrate",
            Command::VerifyLemmas => "verify-lemmas",
            Command::CrucialCheck => "crucial-check",
            Command::PoissonCheck => "poisson-check",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("unknown format `{s}` (csv or json)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodChoice {
    #[default]
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionalChoice {
    #[default]
    Sum,
    Max,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NormSection {
    /// Law of every member when `members` is absent.
    pub dist: FiniteDist,
    pub count: usize,
    /// Independent, non-identical members.
    pub members: Option<Vec<FiniteDist>>,
    pub functional: FunctionalChoice,
    pub method: MethodChoice,
    pub samples: usize,
}

impl Default for NormSection {
    fn default() -> Self {
        Self {
            dist: FiniteDist::point_mass(1.0),
            count: 1,
            members: None,
            functional: FunctionalChoice::Sum,
            method: MethodChoice::Exact,
            samples: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckHjSection {
    pub s_grid: Vec<f64>,
    pub u_grid: Vec<f64>,
    /// Evaluate along `(s, u)` pairs instead of the product grid.
    pub path: Option<Vec<[f64; 2]>>,
}

impl Default for CheckHjSection {
    fn default() -> Self {
        Self { s_grid: log_grid(2.0, 1e6, 25), u_grid: log_grid(2.0, 1e6, 25), path: None }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CounterexampleSection {
    pub n_max: usize,
    /// Superpolynomial `Φ` to dominate; defaults to the top-level `psi`.
    pub phi: Option<OrliczFunction>,
}

impl Default for CounterexampleSection {
    fn default() -> Self {
        Self { n_max: 4, phi: None }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RatioSweepSection {
    pub u_grid: Vec<f64>,
    pub n_grid: Vec<usize>,
    pub method: MethodChoice,
    pub samples: usize,
    /// Also follow the schedule of a counterexample of this depth built over `psi`.
    pub schedule_depth: Option<usize>,
}

impl Default for RatioSweepSection {
    fn default() -> Self {
        Self {
            u_grid: (2..=10).map(f64::from).collect(),
            n_grid: (1..=10).map(|j| 1usize << j).collect(),
            method: MethodChoice::Exact,
            samples: 100_000,
            schedule_depth: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeriesSection {
    /// Depth of the counterexample built over `psi`.
    pub depth: usize,
    pub k_max: usize,
    /// Rerun the same blocks under `Ψ₁`.
    pub compare_psi1: bool,
}

impl Default for SeriesSection {
    fn default() -> Self {
        Self { depth: 10, k_max: 4, compare_psi1: true }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProcessSection {
    /// Rademacher dimension when no explicit class is given.
    pub d: usize,
    /// Number of summands.
    pub n: usize,
    pub symmetric: bool,
    /// Explicit value tables; requires `index_dist`.
    pub class: Option<Vec<Vec<f64>>>,
    /// Law on table indices shared by all summands.
    pub index_dist: Option<FiniteDist>,
}

impl Default for ProcessSection {
    fn default() -> Self {
        Self { d: 4, n: 16, symmetric: true, class: None, index_dist: None }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TailsSection {
    pub samples: usize,
    /// Defaults to `sqrt(Σ²) k/4`, `k = 1..=24`.
    pub t_grid: Option<Vec<f64>>,
    pub bounds: Vec<BoundId>,
    pub c: f64,
}

impl Default for TailsSection {
    fn default() -> Self {
        Self { samples: 100_000, t_grid: None, bounds: vec![BoundId::Bennett, BoundId::Bernstein], c: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CalibrateSection {
    pub c_grid: Vec<f64>,
    pub bounds: Vec<BoundId>,
    /// Constant used in the Bennett/Bernstein equivalence check.
    pub equivalence_c: f64,
}

impl Default for CalibrateSection {
    fn default() -> Self {
        Self { c_grid: default_c_grid(), bounds: vec![BoundId::Bennett, BoundId::Bernstein], equivalence_c: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyLemmasSection {
    pub cases: usize,
}

impl Default for VerifyLemmasSection {
    fn default() -> Self {
        Self { cases: 1000 }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CrucialSection {
    /// Member law; defaults to a Rademacher sign.
    pub dist: Option<FiniteDist>,
    /// Use the three-point law at this `u` (with `P(±u) = 1/(2 count Ψ(u))`) instead of `dist`.
    pub three_point_u: Option<f64>,
    pub count: usize,
    pub q_grid: Vec<u32>,
    pub k_grid: Vec<usize>,
    /// `u = u′` values.
    pub u_grid: Vec<f64>,
    pub samples: usize,
}

impl Default for CrucialSection {
    fn default() -> Self {
        Self {
            dist: None,
            three_point_u: None,
            count: 8,
            q_grid: vec![2, 3, 4],
            k_grid: vec![1, 2, 4],
            u_grid: vec![0.5, 1.0, 2.0],
            samples: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PoissonSection {
    /// Defaults to `Ψ⁻¹(2^j)`, `j = 1..=4`.
    pub u_grid: Option<Vec<f64>>,
    pub s_grid: Vec<f64>,
    pub n: usize,
    pub n_grid: Vec<usize>,
}

impl Default for PoissonSection {
    fn default() -> Self {
        Self { u_grid: None, s_grid: vec![4.0, 8.0, 16.0], n: 1000, n_grid: vec![100, 1000, 10_000] }
    }
}

/// Fully resolved configuration. Every section has defaults, so an empty file is valid.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub seed: Option<u64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub psi: OrliczFunction,
    pub norm: NormSection,
    pub check_hj: CheckHjSection,
    pub counterexample: CounterexampleSection,
    pub ratio_sweep: RatioSweepSection,
    pub series: SeriesSection,
    pub process: ProcessSection,
    pub tails: TailsSection,
    pub calibrate: CalibrateSection,
    pub verify_lemmas: VerifyLemmasSection,
    pub crucial_check: CrucialSection,
    pub poisson_check: PoissonSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            seed: None,
            format: Format::Csv,
            out: None,
            threads: None,
            psi: OrliczFunction::psi1(),
            norm: NormSection::default(),
            check_hj: CheckHjSection::default(),
            counterexample: CounterexampleSection::default(),
            ratio_sweep: RatioSweepSection::default(),
            series: SeriesSection::default(),
            process: ProcessSection::default(),
            tails: TailsSection::default(),
            calibrate: CalibrateSection::default(),
            verify_lemmas: VerifyLemmasSection::default(),
            crucial_check: CrucialSection::default(),
            poisson_check: PoissonSection::default(),
        }
    }
}

fn check_valid(name: &str, f: &OrliczFunction) -> Result<()> {
    match validate(f, &default_grid(f)).failure() {
        None => Ok(()),
        Some(why) => Err(Error::Config(format!("`{name}` is not an Orlicz function: {why}"))),
    }
}

/// Parses a TOML configuration. Unknown keys, duplicate keys and invalid `Ψ` are errors.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let config: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    check_valid("psi", &config.psi)?;
    if let Some(phi) = &config.counterexample.phi {
        check_valid("counterexample.phi", phi)?;
    }
    if config.threads == Some(0) {
        return Err(Error::Config("`threads` must be at least 1".into()));
    }
    Ok(config)
}
