//! Binomial vs Poisson tails for the centered Bernoulli family `P(Y = 1) = 1/(NΨ(u))`.

use crate::error::{Error, Result};
use crate::numeric::{log1m_exp, log_sum_exp, log_sum_exp_slice, softplus, LnFactorial};
use crate::orlicz::OrliczFunction;
use serde::Serialize;

/// Terms this far below the running maximum are dropped.
const LN_CUTOFF: f64 = 80.0;

/// `ln P(B ≥ m)` for `B ~ Binomial(n, p)`, `p = e^{ln_p}`.
pub fn binomial_ln_tail(n: usize, ln_p: f64, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    if m > n {
        return f64::NEG_INFINITY;
    }
    let lf = LnFactorial::new(n);
    let ln_q = log1m_exp(ln_p);
    let term = |j: usize| lf.ln_binomial(n, j) + j as f64 * ln_p + (n - j) as f64 * ln_q;
    let mode = ((n as f64 + 1.0) * ln_p.exp()).floor() as usize;
    if m <= mode {
        let head: Vec<f64> = (0..m).map(term).collect();
        return log1m_exp(log_sum_exp_slice(&head).min(0.0));
    }
    let first = term(m);
    let mut terms = vec![first];
    for j in m + 1..=n {
        let t = term(j);
        if t < first - LN_CUTOFF {
            break;
        }
        terms.push(t);
    }
    log_sum_exp_slice(&terms)
}

/// `ln P(Z ≥ m)` for `Z ~ Poisson(λ)`.
pub fn poisson_ln_tail(lambda: f64, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let ln_l = lambda.ln();
    let mut ln_fact = 0.0;
    let mut terms = Vec::new();
    for j in 0..m {
        if j > 0 {
            ln_fact += (j as f64).ln();
        }
        terms.push(-lambda + j as f64 * ln_l - ln_fact);
    }
    if (m as f64) <= lambda {
        return log1m_exp(log_sum_exp_slice(&terms).min(0.0));
    }
    let mut j = m;
    ln_fact += (m as f64).ln();
    let first = -lambda + m as f64 * ln_l - ln_fact;
    let mut tail = vec![first];
    loop {
        j += 1;
        ln_fact += (j as f64).ln();
        let t = -lambda + j as f64 * ln_l - ln_fact;
        if t < first - LN_CUTOFF {
            break;
        }
        tail.push(t);
    }
    log_sum_exp(tail)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoissonRow {
    pub u: f64,
    pub s: f64,
    pub n: usize,
    /// `ln P(S_N ≥ s)`, exact.
    pub ln_binomial_tail: f64,
    /// `ln P(Z ≥ ⌈2s⌉)`, `Z ~ Poisson(1/Ψ(u))`.
    pub ln_poisson_tail: f64,
    /// `s ln(1+s) + sψ(u)`.
    pub exponent_scale: f64,
    /// Smallest `C` with `P(S_N ≥ s) ≥ exp(−C²(s ln(1+s) + sψ(u)))` at this cell.
    pub c_needed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoissonReport {
    pub rows: Vec<PoissonRow>,
    /// Smallest `C` valid on the whole grid.
    pub fitted_c: f64,
    /// `P(S_N ≥ s) ≥ P(Z ≥ ⌈2s⌉)` at every cell.
    pub dominates_poisson: bool,
}

fn ln_success(psi: &OrliczFunction, u: f64, n: usize) -> Result<f64> {
    let ln_p = -(n as f64).ln() - psi.ln_psi(u);
    if !(ln_p < 0.0) {
        return Err(Error::InvalidParameter(format!("NΨ(u) must exceed 1 (u = {u}, N = {n})")));
    }
    Ok(ln_p)
}

/// `S_N ≥ s` iff the binomial count reaches `⌈s + 1/Ψ(u)⌉`.
fn event_threshold(s: f64, lambda: f64) -> usize {
    (s + lambda).ceil() as usize
}

/// Exact tails of `S_N = Σ (Y_i − E Y_i)` against the Poisson lower bound, on `u × s`.
pub fn poisson_check(psi: &OrliczFunction, u_grid: &[f64], s_grid: &[f64], n: usize) -> Result<PoissonReport> {
    let mut rows = Vec::with_capacity(u_grid.len() * s_grid.len());
    for &u in u_grid {
        let ln_p = ln_success(psi, u, n)?;
        let lambda = (-psi.ln_psi(u)).exp();
        let small_psi = softplus(psi.ln_psi(u));
        for &s in s_grid {
            if !(s > 0.0) {
                return Err(Error::InvalidParameter(format!("s = {s} must be positive")));
            }
            let ln_binomial_tail = binomial_ln_tail(n, ln_p, event_threshold(s, lambda));
            let ln_poisson_tail = poisson_ln_tail(lambda, (2.0 * s).ceil() as usize);
            let exponent_scale = s * s.ln_1p() + s * small_psi;
            let c_needed = (-ln_binomial_tail / exponent_scale).max(0.0).sqrt();
            rows.push(PoissonRow { u, s, n, ln_binomial_tail, ln_poisson_tail, exponent_scale, c_needed });
        }
    }
    let fitted_c = rows.iter().map(|r| r.c_needed).fold(0.0, f64::max);
    let dominates_poisson = rows.iter().all(|r| r.ln_binomial_tail >= r.ln_poisson_tail);
    Ok(PoissonReport { rows, fitted_c, dominates_poisson })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyRow {
    pub n: usize,
    /// `max |P(S_N ≥ s) − P(Z − EZ ≥ s)|` over the grid.
    pub max_abs: f64,
    /// Le Cam's bound `N p²` on the total variation distance, maximised over `u`.
    pub le_cam: f64,
}

/// Binomial-vs-Poisson discrepancy for each `N`, with Le Cam's bound.
pub fn poisson_discrepancy(
    psi: &OrliczFunction,
    u_grid: &[f64],
    s_grid: &[f64],
    n_grid: &[usize],
) -> Result<Vec<DiscrepancyRow>> {
    n_grid
        .iter()
        .map(|&n| {
            let (mut max_abs, mut le_cam) = (0.0f64, 0.0f64);
            for &u in u_grid {
                let ln_p = ln_success(psi, u, n)?;
                let lambda = (-psi.ln_psi(u)).exp();
                le_cam = le_cam.max(n as f64 * (2.0 * ln_p).exp());
                for &s in s_grid {
                    let m = event_threshold(s, lambda);
                    let d = binomial_ln_tail(n, ln_p, m).exp() - poisson_ln_tail(lambda, m).exp();
                    max_abs = max_abs.max(d.abs());
                }
            }
            Ok(DiscrepancyRow { n, max_abs, le_cam })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_closed_forms() {
        assert_eq!(poisson_ln_tail(1.0, 0), 0.0);
        assert!((poisson_ln_tail(1.0, 1).exp() - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        // P(Z ≥ 3) for λ = 0.5 is 1 − e^{−λ}(1 + λ + λ²/2).
        let want = 1.0 - (-0.5f64).exp() * (1.0 + 0.5 + 0.125);
        assert!((poisson_ln_tail(0.5, 3).exp() - want).abs() < 1e-15);
    }

    #[test]
    fn binomial_against_direct_sum() {
        let (n, p) = (20usize, 0.15f64);
        for m in [0usize, 1, 3, 10, 20, 21] {
            let mut want = 0.0;
            for j in m..=n {
                let c: f64 = (1..=j).map(|i| (n - j + i) as f64 / i as f64).product();
                want += c * p.powi(j as i32) * (1.0 - p).powi((n - j) as i32);
            }
            let got = binomial_ln_tail(n, p.ln(), m).exp();
            assert!((got - want).abs() < 1e-14 * want.max(1e-300) + 1e-300, "m = {m}: {got} vs {want}");
        }
    }

    #[test]
    fn grid_behaviour() {
        let psi = OrliczFunction::psi1();
        let us: Vec<f64> = [2.0f64, 4.0, 8.0].iter().map(|y| y.ln_1p()).collect();
        let r = poisson_check(&psi, &us, &[4.0, 8.0, 16.0], 10_000).unwrap();
        assert!(r.dominates_poisson);
        assert!(r.fitted_c > 0.0 && r.fitted_c < 20.0);
        let d = poisson_discrepancy(&psi, &us, &[4.0, 8.0], &[100, 1000, 10_000]).unwrap();
        assert!(d.windows(2).all(|w| w[1].max_abs <= w[0].max_abs));
        assert!(d.iter().all(|r| r.max_abs <= r.le_cam));
    }
}
