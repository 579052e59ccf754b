//! Tail of a symmetric empirical process against Bennett and Bernstein type bounds, and
//! the constants that make each bound hold on the simulated curve.

use orlicz_hj::concentration::{
    attach_bound, bennett_bernstein_equivalence, calibrate_c, default_c_grid, empirical_process_tail, BoundId,
    EmpiricalProcessSpec,
};
use orlicz_hj::OrliczFunction;

fn main() -> orlicz_hj::Result<()> {
    let psi = OrliczFunction::psi1();
    let spec = EmpiricalProcessSpec::rademacher_projections(4, 16, true)?;
    let (stats, mut curve) = empirical_process_tail(&spec, &psi, None, 100_000, 1)?;
    println!("U = {:.4}, Σ² = {:.4}, ES = {:.4}", stats.u.value, stats.sigma2.value, stats.es.value);
    for b in [BoundId::Bennett, BoundId::Bernstein] {
        attach_bound(&mut curve, b, &stats, &psi, 1.0)?;
    }
    println!("{:>6} {:>10} {:>10} {:>10}", "t", "P(|S-ES|≥t)", "bennett", "bernstein");
    for (i, p) in curve.points.iter().enumerate().step_by(3) {
        println!(
            "{:>6.2} {:>10.5} {:>10.5} {:>10.5}",
            p.t, p.survival, curve.bounds[0].values[i].capped, curve.bounds[1].values[i].capped
        );
    }
    for b in [BoundId::Bennett, BoundId::Bernstein, BoundId::Talagrand] {
        let cal = calibrate_c(&curve, b, &stats, &psi, &default_c_grid())?;
        println!("{}: largest feasible c = {:?}", b.as_str(), cal.c);
    }
    let ts: Vec<f64> = curve.points.iter().map(|p| p.t).collect();
    let eq = bennett_bernstein_equivalence(&psi, &ts, stats.u.value, stats.sigma2.value, 1.0)?;
    println!("bernstein(κc)/bennett(c) ≤ {:.4} with κ = {}", eq.max_ratio, eq.kappa);
    Ok(())
}
