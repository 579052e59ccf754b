//! A series whose terms have uniformly bounded maxima but whose partial sums have
//! unbounded Orlicz norm, compared with the same blocks under `e^x − 1`.

use orlicz_hj::lab::{series_experiment, series_spec_from_counterexample};
use orlicz_hj::orlicz::build_counterexample;
use orlicz_hj::OrliczFunction;

fn main() -> orlicz_hj::Result<()> {
    let cx = build_counterexample(&OrliczFunction::psi1(), 10)?;
    let spec = series_spec_from_counterexample(&cx, 4)?;
    let bad = series_experiment(&cx.psi, &spec)?;
    let good = series_experiment(&OrliczFunction::psi1(), &spec)?;
    println!("{:>3} {:>6} {:>14} {:>14}", "k", "N", "lower bound", "e^x-1 upper");
    for (b, g) in bad.records.iter().zip(&good.records) {
        println!("{:>3} {:>6} {:>14.4} {:>14.4}", b.k, b.n, b.lower_bound, g.sum_upper);
    }
    println!("‖sup|X_n|‖ ≤ {:.4} (π²/6 = {:.4})", bad.sup_upper(), std::f64::consts::PI.powi(2) / 6.0);
    Ok(())
}
