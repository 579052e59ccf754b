//! Hoffmann-Jørgensen ratios `‖Σ X_i‖_Ψ / (‖Σ X_i‖₁ + ‖max ‖X_i‖‖_Ψ)` and related experiments.

mod lemmas;
mod series;

pub use lemmas::{check_case, lemma_case, lemma_suite, random_family, Lemma, LemmaCase, SuiteReport, Violation, LEMMA_SLACK};
pub use series::{series_experiment, series_spec_from_counterexample, SeriesRecord, SeriesReport};

use crate::dist::{
    make_three_point, max_distribution, sum_distribution_general, sum_distribution_iid_lattice, Family, FiniteDist,
    DEFAULT_ATOM_BUDGET,
};
use crate::error::{Error, Result};
use crate::norm::{l1_exact, l1_mc, norm_exact, norm_mc, Functional, NormEstimate};
use crate::orlicz::{Counterexample, OrliczFunction, OrliczSpec};
use rayon::prelude::*;
use serde::Serialize;

/// Largest block size tried when choosing `N` for a level `u`.
pub const MAX_BLOCK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum Mode {
    Exact,
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRecord {
    pub psi_hash: String,
    pub n: usize,
    /// Lattice step of an iid `{−u, 0, u}` family.
    pub u: Option<f64>,
    pub sum_norm: NormEstimate,
    pub l1: NormEstimate,
    pub max_norm: NormEstimate,
    /// `None` when numerator and denominator both vanish.
    pub ratio: Option<f64>,
    /// `N u / Ψ⁻¹(1/P(S_N = N u))`, a lower bound on `‖S_N‖_Ψ` for iid lattice families.
    pub a_low: Option<f64>,
    /// `a_low / (l1.hi + max_norm.hi)`.
    pub certified_ratio: Option<f64>,
}

/// Step `u` and `ln P(X = u)` of an iid scalar law supported in `{−u, 0, u}`.
fn lattice_params(family: &Family) -> Option<(f64, f64, usize, &FiniteDist)> {
    let Family::Iid { dist, count } = family else { return None };
    if dist.dim() != 1 {
        return None;
    }
    let u = (0..dist.len()).map(|i| dist.atom(i)[0].abs()).fold(0.0, f64::max);
    if u == 0.0 {
        return None;
    }
    let mut ln_top = f64::NEG_INFINITY;
    for i in 0..dist.len() {
        let v = dist.atom(i)[0];
        if v == u {
            ln_top = dist.ln_prob(i);
        } else if v != 0.0 && v != -u {
            return None;
        }
    }
    Some((u, ln_top, *count, dist))
}

/// Single-atom lower bound `N u / Ψ⁻¹(e^{−N ln p₊})` on `‖S_N‖_Ψ`.
pub fn single_atom_lower_bound(psi: &OrliczFunction, u: f64, ln_p_top: f64, n: usize) -> Option<f64> {
    if ln_p_top == f64::NEG_INFINITY {
        return None;
    }
    let inv = psi.invert_ln(-(n as f64) * ln_p_top).ok()?;
    Some(n as f64 * u / inv)
}

fn ratio_of(sum: f64, l1: f64, max: f64) -> Option<f64> {
    let d = l1 + max;
    if d == 0.0 {
        if sum == 0.0 {
            None
        } else {
            Some(f64::INFINITY)
        }
    } else {
        Some(sum / d)
    }
}

/// Computes the three norms of the ratio. Exact mode uses the lattice law for iid
/// `{−u, 0, u}` families and general convolution otherwise.
pub fn hj_ratio(family: &Family, psi: &OrliczFunction, mode: Mode) -> Result<RatioRecord> {
    let lattice = lattice_params(family);
    let (sum_norm, l1, max_norm) = match mode {
        Mode::Exact => {
            let sum_law = exact_sum_law(family)?;
            let max_law = max_distribution(family, DEFAULT_ATOM_BUDGET)?;
            (norm_exact(&sum_law, psi)?, NormEstimate::exact(l1_exact(&sum_law)), norm_exact(&max_law, psi)?)
        }
        Mode::MonteCarlo { samples, seed } => (
            norm_mc(family, &Functional::SumNorm, psi, samples, seed)?,
            l1_mc(family, &Functional::SumNorm, samples, seed)?,
            norm_mc(family, &Functional::MaxNorm, psi, samples, seed)?,
        ),
    };
    let a_low = lattice.and_then(|(u, lp, n, _)| single_atom_lower_bound(psi, u, lp, n));
    let certified_ratio = a_low.map(|a| a / (l1.hi + max_norm.hi));
    Ok(RatioRecord {
        psi_hash: psi.spec_hash(),
        n: family.len(),
        u: lattice.map(|l| l.0),
        ratio: ratio_of(sum_norm.value, l1.value, max_norm.value),
        sum_norm,
        l1,
        max_norm,
        a_low,
        certified_ratio,
    })
}

/// Quantile form of the ratio for `Ψ(x) = x^p`: `‖S‖_p / (t₀ + ‖max ‖X_i‖‖_p)` with
/// `t₀ = inf{t : P(‖S‖ > t) ≤ (2·4^p)^{-1}}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantileRatio {
    pub p: f64,
    pub level: f64,
    pub t0: f64,
    pub sum_norm: f64,
    pub max_norm: f64,
    pub ratio: Option<f64>,
}

/// Exact quantile-form ratio. Only defined for power laws; other families give a domain error.
pub fn hj_quantile_ratio(family: &Family, psi: &OrliczFunction) -> Result<QuantileRatio> {
    let OrliczSpec::PowerLaw { p } = *psi.spec() else {
        return Err(Error::Domain(format!("quantile ratio needs a power law, got {psi}")));
    };
    let sum_law = exact_sum_law(family)?;
    let max_law = max_distribution(family, DEFAULT_ATOM_BUDGET)?;
    let level = 1.0 / (2.0 * 4f64.powf(p));
    let t0 = upper_quantile(&sum_law, level);
    let sum_norm = norm_exact(&sum_law, psi)?.value;
    let max_norm = norm_exact(&max_law, psi)?.value;
    let ratio = if t0 + max_norm == 0.0 { None } else { Some(sum_norm / (t0 + max_norm)) };
    Ok(QuantileRatio { p, level, t0, sum_norm, max_norm, ratio })
}

/// `inf{t ≥ 0 : P(‖X‖ > t) ≤ level}` for `level < 1`.
fn upper_quantile(law: &FiniteDist, level: f64) -> f64 {
    let mut atoms: Vec<(f64, f64)> = (0..law.len()).map(|i| (law.norm_of(i), law.prob(i))).collect();
    atoms.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut above = 0.0;
    let mut t0 = atoms.first().map_or(0.0, |a| a.0);
    let mut i = 0;
    while i < atoms.len() && above <= level {
        let v = atoms[i].0;
        t0 = v;
        while i < atoms.len() && atoms[i].0 == v {
            above += atoms[i].1;
            i += 1;
        }
    }
    t0
}

fn exact_sum_law(family: &Family) -> Result<FiniteDist> {
    match lattice_params(family) {
        Some((_, _, n, d)) => sum_distribution_iid_lattice(d, n),
        None => sum_distribution_general(family, DEFAULT_ATOM_BUDGET).map_err(|e| match e {
            Error::Resource(m) => Error::Resource(format!("{m}; rerun hj_ratio in Monte Carlo mode")),
            other => other,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub psi_hash: String,
    pub records: Vec<RatioRecord>,
    /// Cells `(u, N)` skipped because `N Ψ(u) ≤ 1`.
    pub skipped: Vec<(f64, usize)>,
    /// Largest ratio over the sweep.
    pub empirical_d: f64,
}

/// Three-point families `P(X = ±u) = 1/(2NΨ(u))` over the product grid. Cells run in
/// parallel; Monte Carlo cells use seed `row_seed(seed, cell index)`.
pub fn ratio_sweep(psi: &OrliczFunction, u_grid: &[f64], n_grid: &[usize], mode: Mode) -> Result<RatioReport> {
    let cells: Vec<(usize, f64, usize)> = u_grid
        .iter()
        .flat_map(|&u| n_grid.iter().map(move |&n| (u, n)))
        .enumerate()
        .map(|(i, (u, n))| (i, u, n))
        .collect();
    let results: Vec<Result<Option<RatioRecord>>> = cells
        .par_iter()
        .map(|&(i, u, n)| {
            let Ok(d) = make_three_point(psi, u, n) else { return Ok(None) };
            let cell_mode = match mode {
                Mode::Exact => Mode::Exact,
                Mode::MonteCarlo { samples, seed } => {
                    Mode::MonteCarlo { samples, seed: crate::dist::row_seed(seed, i as u64) }
                }
            };
            hj_ratio(&Family::iid(d, n)?, psi, cell_mode).map(Some)
        })
        .collect();
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (r, &(_, u, n)) in results.into_iter().zip(&cells) {
        match r? {
            Some(rec) => records.push(rec),
            None => skipped.push((u, n)),
        }
    }
    let empirical_d = records.iter().filter_map(|r| r.ratio).fold(0.0, f64::max);
    Ok(RatioReport { psi_hash: psi.spec_hash(), records, skipped, empirical_d })
}

/// One step of the ratio along a counterexample schedule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScheduleRecord {
    pub k: usize,
    pub u: f64,
    /// Block size maximising the certified ratio.
    pub n: usize,
    pub record: RatioRecord,
}

/// For each `(k, u_k)` of the schedule, the three-point family with the `N ≤ MAX_BLOCK`
/// that maximises the certified ratio `a_low / (‖S‖₁ + ‖max‖_Ψ)`.
pub fn schedule_ratios(cx: &Counterexample) -> Result<Vec<ScheduleRecord>> {
    cx.schedule()
        .into_iter()
        .map(|(k, u)| {
            let best = (1..=MAX_BLOCK)
                .into_par_iter()
                .filter_map(|n| {
                    let d = make_three_point(&cx.psi, u, n).ok()?;
                    Some(hj_ratio(&Family::iid(d, n).ok()?, &cx.psi, Mode::Exact).map(|r| (n, r)))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max_by(|a, b| a.1.certified_ratio.partial_cmp(&b.1.certified_ratio).expect("finite"))
                .ok_or_else(|| Error::Range(format!("no block size makes N Ψ(u_{k}) > 1")))?;
            Ok(ScheduleRecord { k, u, n: best.0, record: best.1 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orlicz::build_counterexample;

    #[test]
    fn quantile_ratio_for_rademacher_sums() {
        let sq = OrliczFunction::power_law(2.0).unwrap();
        let r = hj_quantile_ratio(&Family::iid(FiniteDist::rademacher(), 4).unwrap(), &sq).unwrap();
        // |S_4| takes 0, 2, 4 with masses 6/16, 8/16, 2/16; level 1/32 puts t₀ at 4.
        assert_eq!(r.level, 1.0 / 32.0);
        assert_eq!(r.t0, 4.0);
        assert!((r.sum_norm - 2.0).abs() < 1e-9);
        assert!((r.max_norm - 1.0).abs() < 1e-9);
        assert!((r.ratio.unwrap() - 0.4).abs() < 1e-9);
        let rare = FiniteDist::scalar(&[0.0, 1.0], &[0.9, 0.1]).unwrap();
        let r = hj_quantile_ratio(&Family::iid(rare, 1).unwrap(), &OrliczFunction::power_law(1.0).unwrap()).unwrap();
        // P(|X| > 0) = 0.1 is already below 1/8.
        assert_eq!(r.t0, 0.0);
        assert!((r.ratio.unwrap() - 1.0).abs() < 1e-9);
        assert!(hj_quantile_ratio(&Family::iid(FiniteDist::rademacher(), 2).unwrap(), &OrliczFunction::psi1()).is_err());
    }

    #[test]
    fn single_member_ratio_below_one() {
        let f = OrliczFunction::psi1();
        let d = FiniteDist::scalar(&[-2.0, 1.0], &[1.0 / 3.0, 2.0 / 3.0]).unwrap();
        let r = hj_ratio(&Family::iid(d, 1).unwrap(), &f, Mode::Exact).unwrap();
        let direct = r.sum_norm.value / (r.l1.value + r.max_norm.value);
        assert!((r.ratio.unwrap() - direct).abs() < 1e-15);
        assert!(r.ratio.unwrap() < 1.0);
    }

    #[test]
    fn three_point_l1_bound() {
        let f = OrliczFunction::psi1();
        for &(u, n) in &[(2.0, 4), (5.0, 32), (9.0, 512)] {
            let r = hj_ratio(&Family::iid(make_three_point(&f, u, n).unwrap(), n).unwrap(), &f, Mode::Exact).unwrap();
            assert!(r.l1.value <= u / u.exp_m1() * (1.0 + 1e-12));
            assert!(r.sum_norm.hi >= r.a_low.unwrap());
            assert!(r.max_norm.value <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn zero_family_is_null_ratio() {
        let f = OrliczFunction::psi1();
        let r = hj_ratio(&Family::iid(FiniteDist::point_mass(0.0), 3).unwrap(), &f, Mode::Exact).unwrap();
        assert_eq!(r.ratio, None);
    }

    #[test]
    fn scale_invariance() {
        let f = OrliczFunction::power_law(2.0).unwrap();
        let d = FiniteDist::scalar(&[-1.0, 0.0, 1.0], &[0.25, 0.5, 0.25]).unwrap();
        let fam = Family::iid(d, 5).unwrap();
        let a = hj_ratio(&fam, &f, Mode::Exact).unwrap().ratio.unwrap();
        let b = hj_ratio(&fam.scaled(7.0).unwrap(), &f, Mode::Exact).unwrap().ratio.unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn sweep_single_cell_matches() {
        let f = OrliczFunction::psi1();
        let rep = ratio_sweep(&f, &[3.0], &[8], Mode::Exact).unwrap();
        let direct = hj_ratio(&Family::iid(make_three_point(&f, 3.0, 8).unwrap(), 8).unwrap(), &f, Mode::Exact).unwrap();
        assert_eq!(rep.records[0], direct);
        assert_eq!(rep.empirical_d, direct.ratio.unwrap());
    }

    #[test]
    fn schedule_ratio_grows() {
        let cx = build_counterexample(&OrliczFunction::psi1(), 4).unwrap();
        let s = schedule_ratios(&cx).unwrap();
        let r: Vec<f64> = s.iter().map(|x| x.record.certified_ratio.unwrap()).collect();
        assert!(r[1] > 1.5 * r[0] && r[2] > 1.5 * r[1], "{r:?}");
    }
}
