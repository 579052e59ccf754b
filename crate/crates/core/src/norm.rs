//! Luxemburg norms `‖Y‖_Ψ = inf{a > 0 : E Ψ(|Y|/a) ≤ 1}` and `L₁` norms.

use crate::dist::{sample_rows, Family, FiniteDist};
use crate::error::{Error, Result};
use crate::numeric::{bisect_boundary, log_sum_exp_slice, section_interval, BISECTION_MAX_ITER, BISECTION_REL_TOL};
use crate::orlicz::OrliczFunction;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Number of independent sections behind every Monte Carlo interval.
pub const SECTIONS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    MonteCarlo,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormEstimate {
    pub value: f64,
    pub method: Method,
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
}

impl NormEstimate {
    pub fn exact(value: f64) -> Self {
        Self { value, method: Method::Exact, lo: value, hi: value, samples: 0 }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// `ln E Ψ(y/a)` for weighted points `(y, ln w)` with `y > 0`.
fn ln_expectation(points: &[(f64, f64)], psi: &OrliczFunction, a: f64) -> f64 {
    let terms: Vec<f64> = points.iter().map(|&(y, lw)| lw + psi.ln_psi(y / a)).collect();
    log_sum_exp_slice(&terms)
}

/// Root in `a` of `ln E Ψ(y/a) = 0`. `ln_w_top` is the smallest weight on the largest point;
/// the root lies in `[y_max/Ψ⁻¹(1/w_top), y_max/Ψ⁻¹(1)]`.
/// Each atom alone forces `a ≥ y_i / Ψ⁻¹(1/w_i)`, so `lower` is the largest such bound
/// over some subset of atoms.
fn solve(points: &[(f64, f64)], psi: &OrliczFunction, lower: f64) -> Result<(f64, f64)> {
    let y_max = points.iter().map(|p| p.0).fold(0.0, f64::max);
    if y_max == 0.0 {
        return Ok((0.0, 0.0));
    }
    if lower <= 0.0 {
        return Err(Error::Range("no atom gives a finite lower bracket".into()));
    }
    let lo = lower * (1.0 - 1e-9);
    let hi = y_max / psi.invert_ln(0.0)? * (1.0 + 1e-9);
    let pred = |a: f64| ln_expectation(points, psi, a) <= 0.0;
    if !pred(hi) {
        return Err(Error::Range(format!("E Ψ(Y/a) > 1 at the bracket end a = {hi}")));
    }
    if pred(lo) {
        return Ok((lo, lo));
    }
    let b = bisect_boundary(pred, lo, hi, BISECTION_REL_TOL, BISECTION_MAX_ITER);
    Ok((b.lo, b.hi))
}

/// Exact Luxemburg norm of `‖X‖` for a finite law.
pub fn norm_exact(dist: &FiniteDist, psi: &OrliczFunction) -> Result<NormEstimate> {
    let nd = dist.norm_dist();
    let points: Vec<(f64, f64)> =
        (0..nd.len()).filter(|&i| nd.atom(i)[0] > 0.0).map(|i| (nd.atom(i)[0], nd.ln_prob(i))).collect();
    let lower = points.iter().filter_map(|&(y, lw)| psi.invert_ln(-lw).ok().map(|x| y / x)).fold(0.0, f64::max);
    let (lo, hi) = solve(&points, psi, lower)?;
    Ok(NormEstimate { value: 0.5 * (lo + hi), method: Method::Exact, lo, hi, samples: 0 })
}

/// `E ‖X‖`.
pub fn l1_exact(dist: &FiniteDist) -> f64 {
    let terms: Vec<f64> = (0..dist.len())
        .filter_map(|i| {
            let y = dist.norm_of(i);
            (y > 0.0).then(|| dist.ln_prob(i) + y.ln())
        })
        .collect();
    log_sum_exp_slice(&terms).exp()
}

/// Scalar statistic of one realization of a family.
#[derive(Debug, Clone, PartialEq)]
pub enum Functional {
    /// `‖Σ X_i‖`.
    SumNorm,
    /// `max_i ‖X_i‖`.
    MaxNorm,
    /// `sup_f Σ_i f(X_i)` for scalar members whose values index into each table `f`.
    SupOverClass(Vec<Vec<f64>>),
}

impl Functional {
    /// Evaluates on one row of `N · dim` values.
    pub fn eval(&self, family: &Family, row: &[f64]) -> f64 {
        let dim = family.dim();
        match self {
            Functional::SumNorm => {
                let mut s = [0.0f64; crate::dist::MAX_DIM];
                for x in row.chunks(dim) {
                    for (acc, v) in s.iter_mut().zip(x) {
                        *acc += v;
                    }
                }
                family.tag().apply(&s[..dim])
            }
            Functional::MaxNorm => row.chunks(dim).map(|x| family.tag().apply(x)).fold(0.0, f64::max),
            Functional::SupOverClass(tables) => tables
                .iter()
                .map(|f| row.iter().map(|&x| f[x as usize]).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// Draws `n` realizations of the functional.
pub fn functional_samples(family: &Family, functional: &Functional, n: usize, seed: u64) -> Vec<f64> {
    sample_rows(family, n, seed, |row| functional.eval(family, row))
}

fn mc_root(ys: &[f64], psi: &OrliczFunction) -> Result<f64> {
    let ln_n = (ys.len() as f64).ln();
    let points: Vec<(f64, f64)> = ys.iter().filter(|&&y| y > 0.0).map(|&y| (y, -ln_n)).collect();
    let y_max = points.iter().map(|p| p.0).fold(0.0, f64::max);
    let lower = if y_max > 0.0 { y_max / psi.invert_ln(ln_n)? } else { 0.0 };
    let (lo, hi) = solve(&points, psi, lower)?;
    Ok(0.5 * (lo + hi))
}

/// Monte Carlo norm of `|Y|` from samples: the full-sample root of the empirical map,
/// with a 95% interval from the spread of 16 section roots.
pub fn norm_from_samples(ys: &[f64], psi: &OrliczFunction) -> Result<NormEstimate> {
    if ys.len() < SECTIONS {
        return Err(Error::InvalidParameter(format!("need at least {SECTIONS} samples, got {}", ys.len())));
    }
    let abs: Vec<f64> = ys.iter().map(|y| y.abs()).collect();
    let value = mc_root(&abs, psi)?;
    let len = abs.len() / SECTIONS;
    let roots: Vec<f64> = (0..SECTIONS)
        .into_par_iter()
        .map(|k| mc_root(&abs[k * len..(k + 1) * len], psi))
        .collect::<Result<_>>()?;
    let (_, hw) = section_interval(&roots);
    Ok(NormEstimate { value, method: Method::MonteCarlo, lo: value - hw, hi: value + hw, samples: ys.len() })
}

/// Sample mean of `|Y|` with a 95% section interval.
pub fn mean_from_samples(ys: &[f64]) -> NormEstimate {
    let n = ys.len();
    let value = ys.iter().map(|y| y.abs()).sum::<f64>() / n as f64;
    let len = n / SECTIONS;
    let means: Vec<f64> = (0..SECTIONS)
        .map(|k| ys[k * len..(k + 1) * len].iter().map(|y| y.abs()).sum::<f64>() / len as f64)
        .collect();
    let (_, hw) = section_interval(&means);
    NormEstimate { value, method: Method::MonteCarlo, lo: value - hw, hi: value + hw, samples: n }
}

/// Monte Carlo Luxemburg norm of a functional of the family. Deterministic given `seed`.
pub fn norm_mc(
    family: &Family,
    functional: &Functional,
    psi: &OrliczFunction,
    n: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if n < 1000 {
        return Err(Error::InvalidParameter(format!("Monte Carlo norms need n ≥ 1000, got {n}")));
    }
    norm_from_samples(&functional_samples(family, functional, n, seed), psi)
}

/// Monte Carlo `E |functional|`.
pub fn l1_mc(family: &Family, functional: &Functional, n: usize, seed: u64) -> Result<NormEstimate> {
    if n < SECTIONS {
        return Err(Error::InvalidParameter(format!("need at least {SECTIONS} samples")));
    }
    Ok(mean_from_samples(&functional_samples(family, functional, n, seed)))
}
