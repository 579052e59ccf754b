//! Drives a subcommand from a TOML config, as the `hjlab` binary does, and shows that the
//! report bytes do not depend on the worker count.

use orlicz_hj::cli::{emit, parse_config, run, Command, Format, Overrides};

const CONFIG: &str = r#"
command = "ratio-sweep"
seed = 11

[psi]
family = "exp-power"
alpha = 0.5

[ratio_sweep]
u_grid = [2.0, 4.0, 8.0]
n_grid = [4, 16, 64]
method = "monte-carlo"
samples = 40000
"#;

fn main() -> orlicz_hj::Result<()> {
    let config = parse_config(CONFIG)?;
    let mut reports = Vec::new();
    for threads in [1, 4] {
        let o = Overrides { threads: Some(threads), ..Overrides::default() };
        let outcome = run(Command::RatioSweep, config.clone(), &o)?;
        let mut buf = Vec::new();
        emit(&outcome.tables, None, Format::Csv, &mut buf)?;
        reports.push(buf);
    }
    print!("{}", String::from_utf8_lossy(&reports[0]));
    println!("identical across 1 and 4 threads: {}", reports[0] == reports[1]);
    Ok(())
}
