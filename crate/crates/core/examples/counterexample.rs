//! Builds a piecewise affine Orlicz function below `e^x − 1` that breaks the growth
//! condition along its breakpoint schedule.

use orlicz_hj::orlicz::{build_counterexample, check_hj_along};
use orlicz_hj::OrliczFunction;

fn main() -> orlicz_hj::Result<()> {
    let cx = build_counterexample(&OrliczFunction::psi1(), 5)?;
    println!("depth {} of {}; dominated: {}", cx.depth, cx.requested_depth, cx.dominated());
    for m in &cx.margins {
        println!(
            "  k = {}: growth {:.3e}, slope {:.3e}, tangent {:.3e}, spacing {:?}",
            m.k, m.growth, m.slope, m.tangent, m.spacing
        );
    }
    let path: Vec<(f64, f64)> = cx.schedule().into_iter().map(|(k, u)| (k as f64, u)).collect();
    let along = check_hj_along(&cx.psi, &path);
    for ((k, u), p) in cx.schedule().iter().zip(&along.grid) {
        println!("  u_{k} = {u:.6e}, ln Ψ(u) = {:.4e}, ratio {:.4}", cx.psi.ln_psi(*u), p.ratio);
    }
    println!("verdict along schedule: {:?}", along.verdict);
    Ok(())
}
