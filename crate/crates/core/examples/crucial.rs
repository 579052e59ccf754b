//! Tail of a Rademacher sum of three-point variables against its exponential, order and
//! top-k bound, exactly for 12 members and by simulation for 64.

use orlicz_hj::concentration::{crucial_lemma_check, CrucialLemmaParams};
use orlicz_hj::dist::make_three_point;
use orlicz_hj::{Family, OrliczFunction};

fn main() -> orlicz_hj::Result<()> {
    let psi = OrliczFunction::psi1();
    for n in [12, 64] {
        let family = Family::iid(make_three_point(&psi, 2.0, n)?, n)?;
        for (q, k) in [(2, 1), (3, 2), (4, 4)] {
            let p = CrucialLemmaParams { q, k, u: 1.0, u_prime: 1.0 };
            let o = crucial_lemma_check(&family, p, 100_000, 3)?;
            println!(
                "N = {n:>2} q = {q} k = {k}: lhs {:.3e} ≤ rhs {:.3e} ({}) {}",
                o.lhs,
                o.rhs,
                o.method.as_str(),
                if o.passed { "ok" } else { "VIOLATED" }
            );
        }
    }
    Ok(())
}
