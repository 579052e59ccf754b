use clap::Parser;
use orlicz_hj::cli::{execute, Command, Format, Overrides};
use std::path::PathBuf;

/// Orlicz norms, (HJ) checks and concentration experiments driven by TOML configs.
#[derive(Parser)]
#[command(name = "hjlab", version)]
struct Args {
    /// norm, check-hj, counterexample, ratio-sweep, series, tails, calibrate,
    /// verify-lemmas, crucial-check or poisson-check.
    #[arg(value_parser = parse::<Command>)]
    command: Command,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for report files; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse::<Format>)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Number of random cases for verify-lemmas.
    #[arg(long)]
    cases: Option<usize>,
}

fn parse<T: std::str::FromStr<Err = orlicz_hj::Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: orlicz_hj::Error| e.to_string())
}

fn main() {
    let args = Args::try_parse().unwrap_or_else(|e| {
        let _ = e.print();
        std::process::exit(if e.use_stderr() { 2 } else { 0 });
    });
    let overrides = Overrides {
        out: args.out,
        format: args.format,
        seed: args.seed,
        threads: args.threads,
        cases: args.cases,
    };
    let code = execute(
        args.command,
        args.config.as_deref(),
        &overrides,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
