//! Exact checks of the auxiliary inequalities over random small families.

use orlicz_hj::lab::lemma_suite;

fn main() -> orlicz_hj::Result<()> {
    let report = lemma_suite(7, 500)?;
    for (lemma, n) in &report.comparisons {
        let bad = report.violations.iter().filter(|v| v.lemma == *lemma).count();
        println!("{:<18} {n:>7} comparisons, {bad} violations", lemma.id());
    }
    Ok(())
}
