//! Batch frontend: one TOML config per run, reports as CSV or JSON.

mod commands;
mod config;
mod report;

pub use config::{
    parse_config, CalibrateSection, CheckHjSection, Command, CounterexampleSection, CrucialSection, Format,
    FunctionalChoice, MethodChoice, NormSection, PoissonSection, ProcessSection, RatioSweepSection, RunConfig,
    SeriesSection, TailsSection, VerifyLemmasSection,
};
pub use report::{emit, Cell, Table, PREFIX, TOOL_VERSION};

use crate::error::{Error, Result};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Command-line flags; each overrides the matching config key.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub cases: Option<usize>,
}

/// Tables of one run, and whether a verification inside it failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub verification_failed: bool,
}

/// Runs `command` under `config` with the overrides applied. Parallel work runs on a
/// dedicated pool of `threads` workers; values do not depend on the count.
pub fn run(command: Command, mut config: RunConfig, overrides: &Overrides) -> Result<Outcome> {
    if let Some(c) = config.command {
        if c != command {
            return Err(Error::Config(format!("config is for `{}`, not `{}`", c.as_str(), command.as_str())));
        }
    }
    if overrides.seed.is_some() {
        config.seed = overrides.seed;
    }
    if let Some(n) = overrides.cases {
        config.verify_lemmas.cases = n;
    }
    let threads = overrides.threads.or(config.threads);
    let pool = match threads {
        Some(0) => return Err(Error::Config("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    }
    .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    pool.install(|| commands::dispatch(command, &config))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) | Error::Range(_) => EXIT_RESOURCE,
        Error::Config(_) | Error::InvalidParameter(_) | Error::Domain(_) | Error::Io(_) => EXIT_USAGE,
    }
}

/// Full invocation: reads the config (if any), runs, and writes reports. Returns the
/// process exit status.
pub fn execute(
    command: Command,
    config_path: Option<&std::path::Path>,
    overrides: &Overrides,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let result = (|| {
        let config = match config_path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
                parse_config(&text)?
            }
            None => RunConfig::default(),
        };
        let format = overrides.format.unwrap_or(config.format);
        let out = overrides.out.clone().or_else(|| config.out.clone());
        let outcome = run(command, config, overrides)?;
        let paths = emit(&outcome.tables, out.as_deref(), format, stdout)?;
        for p in paths {
            writeln!(stderr, "wrote {}", p.display())?;
        }
        Ok::<_, Error>(outcome.verification_failed)
    })();
    match result {
        Ok(false) => EXIT_OK,
        Ok(true) => {
            let _ = writeln!(stderr, "{}: verification failed", command.as_str());
            EXIT_VERIFICATION
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let Error::Resource(_) = e {
                let _ = writeln!(stderr, "hint: lower sample counts or grid sizes, or switch to monte-carlo");
            }
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(command: Command, config: Option<&str>, overrides: &Overrides) -> (i32, String, String) {
        let dir = tempfile::tempdir().unwrap();
        let path = config.map(|text| {
            let p = dir.path().join("run.toml");
            std::fs::write(&p, text).unwrap();
            p
        });
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = execute(command, path.as_deref(), overrides, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn cell(csv: &str, table: &str, column: &str) -> String {
        let body = csv.split(&format!("# {table}\n")).nth(1).unwrap();
        let mut lines = body.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        row[header.iter().position(|h| *h == column).unwrap()].to_string()
    }

    #[test]
    fn point_mass_norm_under_psi1() {
        let cfg = "[psi]\nfamily = \"exp-power\"\nalpha = 1.0\n";
        let (code, out, _) = exec(Command::Norm, Some(cfg), &Overrides::default());
        assert_eq!(code, EXIT_OK);
        let v: f64 = cell(&out, "norm", "value").parse().unwrap();
        assert!((v - 1.0 / std::f64::consts::LN_2).abs() < 1e-9);
        assert_eq!(cell(&out, "norm", "method"), "exact");
        assert_eq!(cell(&out, "norm", "tool_version"), TOOL_VERSION);
    }

    #[test]
    fn exp_square_diverges_without_failing() {
        let cfg = "[psi]\nfamily = \"exp-square\"\n";
        let (code, out, _) = exec(Command::CheckHj, Some(cfg), &Overrides::default());
        assert_eq!(code, EXIT_OK);
        assert_eq!(cell(&out, "check_hj", "verdict"), "diverging");
    }

    #[test]
    fn lemma_suite_exits_clean() {
        let o = Overrides { seed: Some(7), cases: Some(1000), ..Overrides::default() };
        let (code, out, _) = exec(Command::VerifyLemmas, None, &o);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("# lemma_violations\n"));
        let violations = out.split("# lemma_violations\n").nth(1).unwrap();
        assert_eq!(violations.trim().lines().count(), 1, "{violations}");
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = exec(Command::Tails, None, &Overrides::default());
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("seed"), "{err}");
        assert_eq!(exec(Command::Norm, Some("command = \"series\""), &Overrides::default()).0, EXIT_USAGE);
        assert_eq!(exec(Command::Norm, Some("seed = 1\nseed = 1\n"), &Overrides::default()).0, EXIT_USAGE);
        let bad_alpha = "[psi]\nfamily = \"exp-power\"\nalpha = 1.5\n";
        assert_eq!(exec(Command::Norm, Some(bad_alpha), &Overrides::default()).0, EXIT_USAGE);
        let o = Overrides { threads: Some(0), ..Overrides::default() };
        assert_eq!(exec(Command::Norm, None, &o).0, EXIT_USAGE);
        let empty = "[check_hj]\ns_grid = []\n";
        assert_eq!(exec(Command::CheckHj, Some(empty), &Overrides::default()).0, EXIT_USAGE);
    }

    #[test]
    fn oversized_exact_run_is_a_resource_error() {
        let members: Vec<String> = (0..40)
            .map(|i| {
                let a = (i as f64 + 2.0).sqrt();
                format!("{{ atoms = [{{ value = 0.0, p = 0.5 }}, {{ value = {a}, p = 0.25 }}, {{ value = {}, p = 0.25 }}] }}", a * 3.1)
            })
            .collect();
        let cfg = format!("[norm]\nmembers = [{}]\n", members.join(", "));
        let (code, _, err) = exec(Command::Norm, Some(&cfg), &Overrides::default());
        assert_eq!(code, EXIT_RESOURCE, "{err}");
        assert!(err.contains("hint"), "{err}");
    }

    #[test]
    fn writes_json_reports_to_out_dir() {
        let dir = tempfile::tempdir().unwrap();
        let o = Overrides { out: Some(dir.path().to_path_buf()), format: Some(Format::Json), ..Overrides::default() };
        let (code, out, err) = exec(Command::PoissonCheck, None, &o);
        assert_eq!(code, EXIT_OK);
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 3, "{err}");
        let text = std::fs::read_to_string(dir.path().join("poisson_summary.json")).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["command"], "poisson-check");
        assert_eq!(v[0]["dominates_poisson"], true);
        assert!(v[0]["seed"].is_null());
    }
}
