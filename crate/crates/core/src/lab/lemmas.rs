//! Exact checks of the auxiliary inequalities on random small families.

use crate::dist::{max_distribution, row_seed, sum_distribution_general, Family, FiniteDist, NormTag};
use crate::error::Result;
use crate::norm::{l1_exact, norm_exact};
use crate::orlicz::{default_grid, l1_embedding_constant, OrliczFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Relative slack (relative to `max(1, rhs)`) before a comparison counts as a violation.
pub const LEMMA_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    /// `Σ_j P(‖X_j‖ ≥ t) ≤ 2 P(max_j ‖X_j‖ ≥ t)` whenever `P(max ≥ t) ≤ 1/2`.
    MaxTail,
    /// `P(Y ≥ t) ≤ 2 exp(−ψ(t/‖Y‖_Ψ))`.
    OrliczChebyshev,
    /// `½‖Σ ε_i X_i‖_Ψ ≤ ‖Σ X_i‖_Ψ ≤ 2‖Σ ε_i X_i‖_Ψ` for mean-zero summands.
    Symmetrization,
    /// `‖X‖₁ ≤ C_Ψ ‖X‖_Ψ` with `C_Ψ` from the best tangent minorant.
    L1Embedding,
    /// `‖E X‖_Ψ ≤ max(Ψ(1), 1) ‖E X‖`.
    MeanNorm,
}

impl Lemma {
    pub const ALL: [Lemma; 5] =
        [Lemma::MaxTail, Lemma::OrliczChebyshev, Lemma::Symmetrization, Lemma::L1Embedding, Lemma::MeanNorm];

    pub fn id(self) -> &'static str {
        match self {
            Lemma::MaxTail => "max-tail",
            Lemma::OrliczChebyshev => "orlicz-chebyshev",
            Lemma::Symmetrization => "symmetrization",
            Lemma::L1Embedding => "l1-embedding",
            Lemma::MeanNorm => "mean-norm",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub case: usize,
    pub lemma: Lemma,
    pub lhs: f64,
    pub rhs: f64,
    pub detail: String,
}

/// One generated case: a family, its centered version and an Orlicz function.
#[derive(Debug, Clone)]
pub struct LemmaCase {
    pub psi: OrliczFunction,
    pub family: Family,
    pub centered: Family,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub cases: usize,
    pub seed: u64,
    pub comparisons: BTreeMap<Lemma, usize>,
    pub violations: Vec<Violation>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn psi_pool() -> Vec<OrliczFunction> {
    vec![
        OrliczFunction::power_law(1.0).expect("valid"),
        OrliczFunction::power_law(2.0).expect("valid"),
        OrliczFunction::power_law(3.5).expect("valid"),
        OrliczFunction::exp_power(0.5).expect("valid"),
        OrliczFunction::psi1(),
        OrliczFunction::heavy_tail_log(2.0).expect("valid"),
        OrliczFunction::exp_square(),
    ]
}

/// Random family with `N ≤ 5` members of `≤ 4` atoms in `[−3, 3]^d`, `d ∈ {1, 2}`.
pub fn random_family<R: Rng>(rng: &mut R) -> (Family, Family) {
    let n = rng.random_range(1..=5);
    let dim = if rng.random_bool(0.75) { 1 } else { 2 };
    let tag = match (dim, rng.random_range(0..3)) {
        (1, _) => NormTag::Abs,
        (_, 0) => NormTag::Sup,
        (_, 1) => NormTag::Euclidean,
        _ => NormTag::L1,
    };
    let mut raw = Vec::with_capacity(n);
    let mut centered = Vec::with_capacity(n);
    for _ in 0..n {
        let k = rng.random_range(1..=4);
        let values: Vec<f64> = (0..k * dim).map(|_| rng.random_range(-3.0..3.0)).collect();
        let w: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
        let total: f64 = w.iter().sum();
        let ln: Vec<f64> = w.iter().map(|x| (x / total).ln()).collect();
        let d = FiniteDist::from_ln_probs(dim, values.clone(), ln.clone(), tag).expect("distinct random atoms");
        let mean = d.mean();
        let shifted: Vec<f64> = values.iter().enumerate().map(|(i, v)| v - mean[i % dim]).collect();
        centered.push(FiniteDist::from_ln_probs(dim, shifted, ln, tag).expect("shift keeps atoms distinct"));
        raw.push(d);
    }
    (
        Family::independent(raw).expect("shared tag"),
        Family::independent(centered).expect("shared tag"),
    )
}

/// Case `i` of the suite, drawn from its own stream `row_seed(seed, i)`.
pub fn lemma_case(seed: u64, i: usize) -> LemmaCase {
    let mut rng = ChaCha8Rng::seed_from_u64(row_seed(seed, i as u64));
    let pool = psi_pool();
    let psi = pool[rng.random_range(0..pool.len())].clone();
    let (family, centered) = random_family(&mut rng);
    LemmaCase { psi, family, centered }
}

struct Tally {
    case: usize,
    counts: BTreeMap<Lemma, usize>,
    violations: Vec<Violation>,
}

impl Tally {
    fn check(&mut self, lemma: Lemma, lhs: f64, rhs: f64, detail: impl FnOnce() -> String) {
        *self.counts.entry(lemma).or_default() += 1;
        if lhs - rhs > LEMMA_SLACK * rhs.abs().max(1.0) {
            self.violations.push(Violation { case: self.case, lemma, lhs, rhs, detail: detail() });
        }
    }
}

/// Runs every comparison of one case.
pub fn check_case(case: usize, c: &LemmaCase) -> Result<(BTreeMap<Lemma, usize>, Vec<Violation>)> {
    let mut t = Tally { case, counts: BTreeMap::new(), violations: Vec::new() };
    let psi = &c.psi;
    let budget = crate::dist::DEFAULT_ATOM_BUDGET;

    let max_law = max_distribution(&c.family, budget)?;
    for level in (0..max_law.len()).map(|i| max_law.atom(i)[0]).filter(|&x| x > 0.0) {
        let p_max = max_law.tail(level);
        if p_max <= 0.5 {
            let lhs: f64 = c.family.members().map(|m| m.tail(level)).sum();
            t.check(Lemma::MaxTail, lhs, 2.0 * p_max, || format!("t = {level}"));
        }
    }

    let sum = sum_distribution_general(&c.family, budget)?;
    let mut laws: Vec<&FiniteDist> = c.family.members().collect();
    laws.push(&sum);
    let c_psi = l1_embedding_constant(psi, &default_grid(psi));
    for law in laws {
        let norm = norm_exact(law, psi)?.value;
        if norm > 0.0 {
            let nd = law.norm_dist();
            let ys: Vec<f64> = (0..nd.len()).map(|i| nd.atom(i)[0]).filter(|&y| y > 0.0).collect();
            let mut ts = ys.clone();
            ts.extend(ys.windows(2).map(|w| 0.5 * (w[0] + w[1])));
            for tt in ts {
                let rhs = 2.0 * (-psi.psi(tt / norm)).exp();
                t.check(Lemma::OrliczChebyshev, law.tail(tt), rhs, || format!("t = {tt}, norm = {norm}"));
            }
        }
        t.check(Lemma::L1Embedding, l1_exact(law), c_psi * norm, || format!("C_Ψ = {c_psi}"));
    }

    let mean = sum.mean();
    let mean_law = FiniteDist::from_ln_probs(sum.dim(), mean.clone(), vec![0.0], sum.tag())?;
    let bound = psi.eval(1.0)?.value.unwrap_or(f64::INFINITY).max(1.0) * sum.tag().apply(&mean);
    t.check(Lemma::MeanNorm, norm_exact(&mean_law, psi)?.value, bound, || format!("E X = {mean:?}"));

    let s = norm_exact(&sum_distribution_general(&c.centered, budget)?, psi)?.value;
    let e = norm_exact(&sum_distribution_general(&c.centered.symmetrized(), budget)?, psi)?.value;
    t.check(Lemma::Symmetrization, 0.5 * e, s, || format!("‖Σ εX‖ = {e}, ‖Σ X‖ = {s}"));
    t.check(Lemma::Symmetrization, s, 2.0 * e, || format!("‖Σ X‖ = {s}, ‖Σ εX‖ = {e}"));

    Ok((t.counts, t.violations))
}

/// Generates `cases` random families and checks every lemma exactly.
pub fn lemma_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let results: Vec<_> = (0..cases).into_par_iter().map(|i| check_case(i, &lemma_case(seed, i))).collect();
    let mut comparisons = BTreeMap::new();
    let mut violations = Vec::new();
    for r in results {
        let (counts, v) = r?;
        for (k, n) in counts {
            *comparisons.entry(k).or_default() += n;
        }
        violations.extend(v);
    }
    Ok(SuiteReport { cases, seed, comparisons, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_single_member_coincides() {
        let psi = OrliczFunction::psi1();
        let d = FiniteDist::scalar(&[-2.0, 0.0, 2.0], &[0.25, 0.5, 0.25]).unwrap();
        let fam = Family::iid(d.clone(), 1).unwrap();
        let s = norm_exact(&sum_distribution_general(&fam, 100).unwrap(), &psi).unwrap().value;
        let e = norm_exact(&sum_distribution_general(&fam.symmetrized(), 100).unwrap(), &psi).unwrap().value;
        let x = norm_exact(&d, &psi).unwrap().value;
        assert!((s - x).abs() < 1e-12 && (e - x).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_equality_case() {
        let psi = OrliczFunction::psi1();
        let d = FiniteDist::point_mass(1.0);
        let norm = norm_exact(&d, &psi).unwrap().value;
        let rhs = 2.0 * (-psi.psi(1.0 / norm)).exp();
        assert!((rhs - 1.0).abs() < 1e-9);
        assert_eq!(d.tail(1.0), 1.0);
    }

    #[test]
    fn small_suite_is_clean_and_deterministic() {
        let a = lemma_suite(7, 60).unwrap();
        assert!(a.passed(), "{:?}", a.violations);
        assert_eq!(a.comparisons.len(), Lemma::ALL.len());
        assert_eq!(a, lemma_suite(7, 60).unwrap());
    }

    #[test]
    fn broken_bound_is_caught() {
        let mut t = Tally { case: 0, counts: BTreeMap::new(), violations: vec![] };
        t.check(Lemma::MeanNorm, 1.0 + 1e-6, 1.0, String::new);
        t.check(Lemma::MeanNorm, 1.0 + 1e-12, 1.0, String::new);
        assert_eq!(t.violations.len(), 1);
    }
}
