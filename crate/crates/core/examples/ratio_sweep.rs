//! Hoffmann-Jørgensen ratio `‖S_N‖ / (E|S_N| + ‖max|X_i|‖)` for three-point families: bounded
//! under `e^x − 1`, growing along a counterexample schedule.

use orlicz_hj::lab::{ratio_sweep, schedule_ratios, Mode};
use orlicz_hj::orlicz::build_counterexample;
use orlicz_hj::OrliczFunction;

fn main() -> orlicz_hj::Result<()> {
    let psi = OrliczFunction::psi1();
    let u: Vec<f64> = (2..=10).map(f64::from).collect();
    let n: Vec<usize> = (1..=10).map(|j| 1usize << j).collect();
    let sweep = ratio_sweep(&psi, &u, &n, Mode::Exact)?;
    println!("e^x - 1: largest ratio over {} cells = {:.4}", sweep.records.len(), sweep.empirical_d);

    let cx = build_counterexample(&psi, 4)?;
    for r in schedule_ratios(&cx)? {
        println!(
            "schedule k = {}: N = {}, ratio {:.4}, certified lower bound {:.4}",
            r.k,
            r.n,
            r.record.ratio.unwrap_or(f64::NAN),
            r.record.certified_ratio.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
