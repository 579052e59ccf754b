//! Luxemburg norms of finite laws: exact by bisection, and Monte Carlo with a 95% interval.

use orlicz_hj::dist::{max_distribution, sum_distribution_general, DEFAULT_ATOM_BUDGET};
use orlicz_hj::norm::{l1_exact, norm_exact, norm_mc, Functional};
use orlicz_hj::{Family, FiniteDist, OrliczFunction};

fn main() -> orlicz_hj::Result<()> {
    let psi = OrliczFunction::psi1();
    println!("‖1‖ under e^x − 1: {:.12}", norm_exact(&FiniteDist::point_mass(1.0), &psi)?.value);

    let law = FiniteDist::scalar(&[-1.0, 0.5, 2.0], &[0.3, 0.5, 0.2])?;
    let family = Family::iid(law, 10)?;
    let sum = sum_distribution_general(&family, DEFAULT_ATOM_BUDGET)?;
    let max = max_distribution(&family, DEFAULT_ATOM_BUDGET)?;
    println!("sum of 10: {} atoms, E|S| = {:.6}", sum.len(), l1_exact(&sum));
    println!("  exact ‖S‖   = {:.6}", norm_exact(&sum, &psi)?.value);
    let mc = norm_mc(&family, &Functional::SumNorm, &psi, 200_000, 42)?;
    println!("  MC ‖S‖      = {:.6} in [{:.6}, {:.6}]", mc.value, mc.lo, mc.hi);
    println!("  exact ‖max‖ = {:.6}", norm_exact(&max, &psi)?.value);

    for (name, f) in [
        ("x^2", OrliczFunction::power_law(2.0)?),
        ("e^sqrt(x) - 1", OrliczFunction::exp_power(0.5)?),
        ("e^(x^2) - 1", OrliczFunction::exp_square()),
    ] {
        println!("  ‖S‖ under {name:<14} = {:.6}", norm_exact(&sum, &f)?.value);
    }
    Ok(())
}
