//! Grid verdicts of the growth condition `ψ(su) ≤ K(s ln(1+s) + sψ(u))`.

use orlicz_hj::numeric::log_grid;
use orlicz_hj::orlicz::check_hj;
use orlicz_hj::OrliczFunction;

fn main() -> orlicz_hj::Result<()> {
    let grid = log_grid(2.0, 1e6, 25);
    let cases = [
        ("x^2", OrliczFunction::power_law(2.0)?),
        ("e^x - 1", OrliczFunction::psi1()),
        ("e^sqrt(x) - 1", OrliczFunction::exp_power(0.5)?),
        ("e^(ln(1+x))^2 - 1", OrliczFunction::heavy_tail_log(2.0)?),
        ("e^(x^2) - 1", OrliczFunction::exp_square()),
    ];
    println!("{:<20} {:>16} {:>12} {:>12}  delta2", "psi", "verdict", "max ratio", "trend");
    for (name, psi) in cases {
        let r = check_hj(&psi, &grid, &grid);
        println!(
            "{name:<20} {:>16} {:>12.4} {:>12.4}  {}",
            format!("{:?}", r.verdict),
            r.grid_k,
            r.trend,
            r.sub_checks.delta2_bounded
        );
    }
    Ok(())
}
