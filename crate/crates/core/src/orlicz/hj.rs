//! Grid diagnostics for `ψ(su) ≤ K(s ln(1+s) + sψ(u))`.

use super::{OrliczFunction, Scale};
use serde::Serialize;

/// `ψ(su) / (s ln(1+s) + sψ(u))`.
pub fn hj_ratio(psi: &OrliczFunction, s: f64, u: f64) -> f64 {
    psi.psi(s * u) / (s * s.ln_1p() + s * psi.psi(u))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HjPoint {
    pub s: f64,
    pub u: f64,
    pub ratio: f64,
    /// Smallest `K'` with `ln Ψ(su) ≤ K' s (ln s + ln Ψ(u))`; `None` when the right side is not positive.
    pub hj_prime: Option<f64>,
    /// Smallest `K̂` with `K̂ ln(1+x) ψ⁻¹(xy) ≥ x ψ⁻¹(y)` at `x = s`, `y = ψ(u)`.
    pub inverse_bound: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HjVerdict {
    BoundedOnGrid,
    Diverging,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubChecks {
    /// Largest `K'` over the grid.
    pub hj_prime_max: f64,
    /// Whether `K' ≤ 4K + 4` holds at every point with ratio at most `K = grid_k`.
    pub hj_prime_consistent: bool,
    pub inverse_bound_max: f64,
    /// `ln(Ψ(2u)/Ψ(u))` per u-grid point.
    pub delta2_ln_ratios: Vec<f64>,
    /// Whether `ln(Ψ(2u)/Ψ(u))` stays within 1e-6 of its value at the smallest grid u.
    pub delta2_bounded: bool,
    /// `(K, p)` with `Ψ(x) ≤ K x^p` on the u-grid, from the slope over the top half.
    pub poly_envelope: (f64, f64),
    /// Local log-log slope of `Ψ` rises across the u-grid by more than a factor 2.
    pub poly_slope_growing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HjReport {
    pub grid: Vec<HjPoint>,
    pub grid_k: f64,
    /// Max ratio over the top decade divided by the max over the bottom decade.
    pub trend: f64,
    pub verdict: HjVerdict,
    pub sub_checks: SubChecks,
}

fn point(psi: &OrliczFunction, s: f64, u: f64) -> HjPoint {
    let ratio = hj_ratio(psi, s, u);
    let denom = s * (s.ln() + psi.ln_psi(u));
    let hj_prime = (denom > 0.0).then(|| psi.ln_psi(s * u) / denom);
    let y = psi.psi(u);
    let inverse_bound = psi
        .invert(s * y, Scale::Psi)
        .ok()
        .filter(|&v| v > 0.0)
        .map(|inv_xy| s * u / (s.ln_1p() * inv_xy));
    HjPoint { s, u, ratio, hj_prime, inverse_bound }
}

fn sub_checks(psi: &OrliczFunction, grid: &[HjPoint], grid_k: f64, u_grid: &[f64]) -> SubChecks {
    let hj_prime_max = grid.iter().filter_map(|p| p.hj_prime).fold(0.0, f64::max);
    let bound = 4.0 * grid_k + 4.0;
    let hj_prime_consistent = grid
        .iter()
        .filter(|p| p.ratio <= grid_k)
        .all(|p| p.hj_prime.is_none_or(|k| k <= bound));
    let inverse_bound_max = grid.iter().filter_map(|p| p.inverse_bound).fold(0.0, f64::max);

    let delta2_ln_ratios: Vec<f64> = u_grid.iter().map(|&u| psi.ln_psi(2.0 * u) - psi.ln_psi(u)).collect();
    let delta2_bounded = delta2_ln_ratios.iter().all(|&r| r <= delta2_ln_ratios[0] + 1e-6);

    let n = u_grid.len();
    let slope = |i: usize, j: usize| {
        (psi.ln_psi(u_grid[j]) - psi.ln_psi(u_grid[i])) / (u_grid[j].ln() - u_grid[i].ln())
    };
    let (poly_envelope, poly_slope_growing) = if n >= 2 {
        let p = slope(n / 2, n - 1).max(slope(0, 1)).max(1.0);
        let ln_k = u_grid
            .iter()
            .map(|&x| psi.ln_psi(x) - p * x.ln())
            .fold(f64::NEG_INFINITY, f64::max);
        let first = slope(0, 1);
        let last = slope(n - 2, n - 1);
        ((ln_k.exp(), p), last > 2.0 * first)
    } else {
        ((f64::NAN, f64::NAN), false)
    };

    SubChecks {
        hj_prime_max,
        hj_prime_consistent,
        inverse_bound_max,
        delta2_ln_ratios,
        delta2_bounded,
        poly_envelope,
        poly_slope_growing,
    }
}

/// Evaluates the ratio on the product grid and applies the decade-growth rule.
///
/// With `S = s_max / s_min ≥ 100`, the bottom decade is `s ≤ 10 s_min` and the top decade
/// `s ≥ s_max / 10`; the verdict is diverging iff the top-decade maximum exceeds both
/// twice and ten times the bottom-decade maximum. Shorter grids fall back to the rule
/// used for schedule paths in [`check_hj_along`].
pub fn check_hj(psi: &OrliczFunction, s_grid: &[f64], u_grid: &[f64]) -> HjReport {
    assert!(!s_grid.is_empty() && !u_grid.is_empty(), "empty grid");
    let grid: Vec<HjPoint> = s_grid
        .iter()
        .flat_map(|&s| u_grid.iter().map(move |&u| (s, u)))
        .map(|(s, u)| point(psi, s, u))
        .collect();
    let grid_k = grid.iter().map(|p| p.ratio).fold(0.0, f64::max);

    let (s_min, s_max) = (s_grid[0], s_grid[s_grid.len() - 1]);
    let (trend, verdict) = if s_max >= 100.0 * s_min {
        let max_where = |f: &dyn Fn(f64) -> bool| {
            grid.iter().filter(|p| f(p.s)).map(|p| p.ratio).fold(0.0, f64::max)
        };
        let bottom = max_where(&|s| s <= 10.0 * s_min);
        let top = max_where(&|s| s >= s_max / 10.0);
        let diverging = top > 2.0 * bottom && top > 10.0 * bottom;
        (top / bottom, if diverging { HjVerdict::Diverging } else { HjVerdict::BoundedOnGrid })
    } else {
        let per_s: Vec<f64> = s_grid
            .iter()
            .map(|&s| grid.iter().filter(|p| p.s == s).map(|p| p.ratio).fold(0.0, f64::max))
            .collect();
        path_verdict(&per_s)
    };
    let sub_checks = sub_checks(psi, &grid, grid_k, u_grid);
    HjReport { grid, grid_k, trend, verdict, sub_checks }
}

fn path_verdict(ratios: &[f64]) -> (f64, HjVerdict) {
    let first = ratios[0];
    let last = ratios[ratios.len() - 1];
    let increasing = ratios.windows(2).all(|w| w[1] > w[0]);
    let diverging = ratios.len() >= 2 && increasing && last > 2.0 * first;
    (last / first, if diverging { HjVerdict::Diverging } else { HjVerdict::BoundedOnGrid })
}

/// Evaluates the ratio along a path of `(s, u)` pairs, such as the schedule `(n, u_n)`.
///
/// Diverging iff the ratios strictly increase and the last exceeds twice the first.
pub fn check_hj_along(psi: &OrliczFunction, path: &[(f64, f64)]) -> HjReport {
    assert!(!path.is_empty(), "empty path");
    let grid: Vec<HjPoint> = path.iter().map(|&(s, u)| point(psi, s, u)).collect();
    let grid_k = grid.iter().map(|p| p.ratio).fold(0.0, f64::max);
    let ratios: Vec<f64> = grid.iter().map(|p| p.ratio).collect();
    let (trend, verdict) = path_verdict(&ratios);
    let u_grid: Vec<f64> = path.iter().map(|p| p.1).collect();
    let sub_checks = sub_checks(psi, &grid, grid_k, &u_grid);
    HjReport { grid, grid_k, trend, verdict, sub_checks }
}
