//! Series `X_{m_k + i} = Y_{i,k}/k²` built from three-point blocks, whose partial sums
//! grow in `L_Ψ` while `sup_n |X_n|` stays in `L_Ψ`.

use super::{single_atom_lower_bound, MAX_BLOCK};
use crate::dist::{
    make_three_point, max_distribution, sum_distribution_iid_lattice, Family, SeriesBlock, SeriesSpec,
    DEFAULT_ATOM_BUDGET,
};
use crate::error::{Error, Result};
use crate::norm::norm_exact;
use crate::orlicz::{Counterexample, OrliczFunction};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesRecord {
    pub k: usize,
    pub u: f64,
    pub n: usize,
    /// `m_{k+1}`, the index of the last summand of block `k`.
    pub m_next: usize,
    /// Single-atom lower bound on the block sum `‖Σ_i Y_{i,k}‖_Ψ`.
    pub a_low: Option<f64>,
    /// Lower end of the exact bisection bracket for the block sum norm.
    pub block_norm_lo: f64,
    /// Upper end of the exact bisection bracket for the block sum norm.
    pub block_norm_hi: f64,
    /// `max(a_low, block_norm_lo)/k²`, a lower bound on `‖S_{m_{k+1}}‖_Ψ`.
    pub lower_bound: f64,
    /// `Σ_{j≤k} block_norm_hi_j / j²`, an upper bound on `‖S_{m_{k+1}}‖_Ψ`.
    pub sum_upper: f64,
    /// Exact `‖max_i |Y_{i,k}|‖_Ψ` (upper bracket end).
    pub block_max_norm: f64,
    /// `Σ_{j≤k} block_max_norm_j / j²`, an upper bound on `‖sup_{n ≤ m_{k+1}} |X_n|‖_Ψ`.
    pub sup_upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesReport {
    pub psi_hash: String,
    pub records: Vec<SeriesRecord>,
    pub truncated: Option<String>,
    /// `lower_bound_k ≥ k` for every block.
    pub lower_bounds_reach_k: bool,
    /// Final `sup_upper` is below `π²/6`.
    pub sup_below_zeta2: bool,
    /// Lower bounds are non-decreasing in `k`.
    pub lower_bounds_nondecreasing: bool,
}

impl SeriesReport {
    pub fn sup_upper(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.sup_upper)
    }

    pub fn max_sum_upper(&self) -> f64 {
        self.records.iter().map(|r| r.sum_upper).fold(0.0, f64::max)
    }
}

/// Lower bound via Jensen (blocks are independent and centered, so `‖S_{m_{k+1}}‖_Ψ`
/// dominates the norm of block `k` alone) and upper bounds via the triangle inequality.
pub fn series_experiment(psi: &OrliczFunction, spec: &SeriesSpec) -> Result<SeriesReport> {
    let offsets = spec.offsets();
    let mut records: Vec<SeriesRecord> = Vec::new();
    let mut truncated = None;
    let (mut sum_upper, mut sup_upper) = (0.0, 0.0);
    for (idx, &SeriesBlock { u, n }) in spec.blocks.iter().enumerate() {
        let k = idx + 1;
        let k2 = (k * k) as f64;
        let step = || -> Result<(Option<f64>, f64, f64, f64)> {
            let d = make_three_point(psi, u, n)?;
            let ln_top = d.ln_prob(d.len() - 1);
            let a_low = single_atom_lower_bound(psi, u, ln_top, n);
            let block = norm_exact(&sum_distribution_iid_lattice(&d, n)?, psi)?;
            let max = norm_exact(&max_distribution(&Family::iid(d, n)?, DEFAULT_ATOM_BUDGET)?, psi)?;
            Ok((a_low, block.lo, block.hi, max.hi))
        };
        match step() {
            Ok((a_low, lo, hi, max_hi)) => {
                sum_upper += hi / k2;
                sup_upper += max_hi / k2;
                records.push(SeriesRecord {
                    k,
                    u,
                    n,
                    m_next: offsets[k],
                    a_low,
                    block_norm_lo: lo,
                    block_norm_hi: hi,
                    lower_bound: a_low.unwrap_or(0.0).max(lo) / k2,
                    sum_upper,
                    block_max_norm: max_hi,
                    sup_upper,
                });
            }
            Err(e) => {
                truncated = Some(format!("stopped at block {k}: {e}"));
                break;
            }
        }
    }
    let lower_bounds_reach_k = records.iter().all(|r| r.lower_bound >= r.k as f64);
    let lower_bounds_nondecreasing = records.windows(2).all(|w| w[1].lower_bound >= w[0].lower_bound);
    let sup_below_zeta2 = sup_upper < std::f64::consts::PI.powi(2) / 6.0;
    Ok(SeriesReport {
        psi_hash: psi.spec_hash(),
        records,
        truncated,
        lower_bounds_reach_k,
        sup_below_zeta2,
        lower_bounds_nondecreasing,
    })
}

/// Blocks `k = 1..=k_max` along the counterexample schedule: block `k` takes the next
/// level `u_n` and the smallest `N ≤ MAX_BLOCK` whose single-atom bound reaches `k³`.
pub fn series_spec_from_counterexample(cx: &Counterexample, k_max: usize) -> Result<SeriesSpec> {
    let schedule = cx.schedule();
    let mut next = 0;
    let mut blocks = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let target = (k * k * k) as f64;
        let found = schedule[next.min(schedule.len())..].iter().enumerate().find_map(|(off, &(_, u))| {
            let lp = cx.psi.ln_psi(u);
            (1..=MAX_BLOCK).find_map(|n| {
                if (n as f64).ln() + lp <= 0.0 {
                    return None;
                }
                let d = make_three_point(&cx.psi, u, n).ok()?;
                let a = single_atom_lower_bound(&cx.psi, u, d.ln_prob(d.len() - 1), n)?;
                (a >= target).then_some((off, SeriesBlock { u, n }))
            })
        });
        let Some((off, block)) = found else {
            return Err(Error::Range(format!(
                "counterexample depth {} is too shallow for block {k} (needs a bound ≥ {target})",
                cx.depth
            )));
        };
        next += off + 1;
        blocks.push(block);
    }
    SeriesSpec::new(blocks, &cx.psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orlicz::build_counterexample;

    #[test]
    fn divergent_series() {
        let cx = build_counterexample(&OrliczFunction::psi1(), 10).unwrap();
        let spec = series_spec_from_counterexample(&cx, 4).unwrap();
        let r = series_experiment(&cx.psi, &spec).unwrap();
        assert!(r.truncated.is_none());
        assert!(r.lower_bounds_reach_k, "{:?}", r.records);
        assert!(r.sup_below_zeta2, "{}", r.sup_upper());
        let ps = series_experiment(&OrliczFunction::psi1(), &spec).unwrap();
        assert!(ps.max_sum_upper() <= 20.0, "{}", ps.max_sum_upper());
    }

    #[test]
    fn shallow_counterexample_is_reported() {
        let cx = build_counterexample(&OrliczFunction::psi1(), 3).unwrap();
        assert!(matches!(series_spec_from_counterexample(&cx, 4), Err(Error::Range(_))));
    }
}
