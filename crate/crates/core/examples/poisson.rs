//! Binomial tails of rare events against the Orlicz lower bound and the Poisson limit.

use orlicz_hj::concentration::{poisson_check, poisson_discrepancy};
use orlicz_hj::OrliczFunction;

fn main() -> orlicz_hj::Result<()> {
    let psi = OrliczFunction::psi1();
    let u: Vec<f64> = (1..=4).map(|j| psi.invert_ln(f64::from(j) * std::f64::consts::LN_2)).collect::<Result<_, _>>()?;
    let s = [4.0, 8.0, 16.0];
    let report = poisson_check(&psi, &u, &s, 1000)?;
    for r in &report.rows {
        println!("u = {:.3} s = {:>4}: ln P = {:>9.3}, needs C ≥ {:.4}", r.u, r.s, r.ln_binomial_tail, r.c_needed);
    }
    println!("fitted C = {:.4}", report.fitted_c);
    for d in poisson_discrepancy(&psi, &u, &s, &[100, 1000, 10_000])? {
        println!("N = {:>6}: |binomial − Poisson| ≤ {:.3e}, Le Cam {:.3e}", d.n, d.max_abs, d.le_cam);
    }
    Ok(())
}
