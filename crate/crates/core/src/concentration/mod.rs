//! Tail bounds for suprema of empirical processes with Orlicz-bounded envelopes, and
//! the simulations used to check them.

mod crucial;
mod poisson;
mod process;

pub use crucial::{crucial_lemma_check, CrucialLemmaParams, CrucialOutcome};
pub use poisson::{
    binomial_ln_tail, poisson_check, poisson_discrepancy, poisson_ln_tail, DiscrepancyRow, PoissonReport,
    PoissonRow,
};
pub use process::{
    attach_bound, calibrate_c, default_c_grid, default_t_grid, empirical_process_tail, weak_variance_terms,
    BoundCurve, Calibration, EmpiricalProcessSpec, ProcessStats, TailCurve, TailPoint, WeakVarianceReport,
    MC_WORK_BUDGET,
};

use crate::error::{Error, Result};
use crate::numeric::softplus;
use crate::orlicz::{default_grid, validate, OrliczFunction};
use serde::{Deserialize, Serialize};

/// Which right-hand side to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundId {
    Bennett,
    Bernstein,
    /// Bernstein with `Σ² + tU` replaced by `Σ²`.
    BernsteinEquivalent,
    /// Bennett without the Orlicz term, `C exp(−(t/CU) ln(1 + tU/Σ²))` with `C = 1/c`.
    Talagrand,
    Convex,
}

impl BoundId {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::Bennett => "bennett",
            BoundId::Bernstein => "bernstein",
            BoundId::BernsteinEquivalent => "bernstein-equivalent",
            BoundId::Talagrand => "talagrand",
            BoundId::Convex => "convex",
        }
    }
}

/// A bound value as computed, and capped at 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub raw: f64,
    pub capped: f64,
}

impl BoundValue {
    fn new(raw: f64) -> Self {
        Self { raw, capped: raw.min(1.0) }
    }
}

fn check_params(t: f64, a: f64, b: f64, names: (&str, &str)) -> Result<()> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Domain(format!("{} = {a} and {} = {b} must be positive", names.0, names.1)));
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("t = {t} must be nonnegative")));
    }
    Ok(())
}

fn check_c(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("c = {c} must be positive")))
    }
}

/// `2/(Ψ(x) + 1) = 2 e^{−ψ(x)}`.
fn orlicz_term(psi: &OrliczFunction, x: f64) -> f64 {
    2.0 * (-softplus(psi.ln_psi(x))).exp()
}

/// `2 exp(−(ct/U) ln(1 + tU/Σ²)) + 2/(Ψ(ct/U) + 1)`, or the Talagrand form without the
/// Orlicz term when `include_orlicz` is false.
pub fn bennett_rhs(
    t: f64,
    u: f64,
    sigma2: f64,
    c: f64,
    psi: &OrliczFunction,
    include_orlicz: bool,
) -> Result<BoundValue> {
    check_params(t, u, sigma2, ("U", "Σ²"))?;
    check_c(c)?;
    let raw = if include_orlicz {
        2.0 * (-(c * t / u) * (t * u / sigma2).ln_1p()).exp() + orlicz_term(psi, c * t / u)
    } else {
        (-(c * t / u) * (t * u / sigma2).ln_1p()).exp() / c
    };
    Ok(BoundValue::new(raw))
}

/// `2 exp(−c t²/(Σ² + tU)) + 2/(Ψ(ct/U) + 1)`.
pub fn bernstein_rhs(t: f64, u: f64, sigma2: f64, c: f64, psi: &OrliczFunction) -> Result<BoundValue> {
    check_params(t, u, sigma2, ("U", "Σ²"))?;
    check_c(c)?;
    Ok(BoundValue::new(2.0 * (-c * t * t / (sigma2 + t * u)).exp() + orlicz_term(psi, c * t / u)))
}

/// `2 exp(−c t²/Σ²) + 2/(Ψ(ct/U) + 1)`.
pub fn bernstein_equivalent_rhs(t: f64, u: f64, sigma2: f64, c: f64, psi: &OrliczFunction) -> Result<BoundValue> {
    check_params(t, u, sigma2, ("U", "Σ²"))?;
    check_c(c)?;
    Ok(BoundValue::new(2.0 * (-c * t * t / sigma2).exp() + orlicz_term(psi, c * t / u)))
}

/// `Φ(x) = Ψ(x²)`, rejected unless it passes validation on its default grid.
pub fn convex_phi(psi: &OrliczFunction) -> Result<OrliczFunction> {
    let phi = OrliczFunction::square_composed(psi);
    let report = validate(&phi, &default_grid(&phi));
    match report.failure() {
        None => Ok(phi),
        Some(why) => Err(Error::Domain(format!("Φ = Ψ(x²) is not an Orlicz function: {why}"))),
    }
}

/// `2 exp(−c t²/(E max|X_i|)²) + 2/(Φ(ct/‖max|X_i|‖_Φ) + 1)` for `Φ` from [`convex_phi`].
pub fn convex_rhs(t: f64, mean_max: f64, u_phi: f64, c: f64, phi: &OrliczFunction) -> Result<BoundValue> {
    check_params(t, mean_max, u_phi, ("E max", "U_Φ"))?;
    check_c(c)?;
    Ok(BoundValue::new(2.0 * (-c * t * t / (mean_max * mean_max)).exp() + orlicz_term(phi, c * t / u_phi)))
}

/// Outcome of comparing Bennett and Bernstein on a grid of `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    /// Smallest `C = 2^j ≤ 2^6` with `Ψ(x) ≤ C e^{Cx}` on the validation grid.
    pub growth_c: f64,
    /// Factor `κ = 2 max(1, C)` applied to `c` on the Bernstein side.
    pub kappa: f64,
    /// `max_t bernstein(κc)/bennett(c)`.
    pub max_ratio: f64,
    /// `min_t bernstein(c)/bennett(c)`; never below one since `ln(1+x) ≥ x/(1+x)`.
    pub min_ratio: f64,
}

/// Bounded-ratio check between the Bernstein and Bennett right-hand sides, up to the
/// value of the constant. With `x = tU/Σ²`, for `x ≤ 1` the Bernstein exponent at `κc`
/// dominates the Bennett one, and for `x > 1` the Bernstein term at `κc` is at most
/// `e^{−Cct/U}`, which the Orlicz term controls when `Ψ(y) ≤ C e^{Cy}`. Only defined for
/// `Ψ` of at most exponential growth, which is tested first.
pub fn bennett_bernstein_equivalence(
    psi: &OrliczFunction,
    ts: &[f64],
    u: f64,
    sigma2: f64,
    c: f64,
) -> Result<EquivalenceReport> {
    let grid = default_grid(psi);
    let growth_c = (0..=6)
        .map(|j| f64::from(1u32 << j))
        .find(|&cc| grid.iter().all(|&x| psi.ln_psi(x) <= cc.ln() + cc * x))
        .ok_or_else(|| Error::Domain("Ψ grows faster than C e^{Cx} for every C ≤ 64".into()))?;
    let kappa = 2.0 * growth_c.max(1.0);
    let (mut max_ratio, mut min_ratio) = (0.0f64, f64::INFINITY);
    for &t in ts {
        let bennett = bennett_rhs(t, u, sigma2, c, psi, true)?.raw;
        max_ratio = max_ratio.max(bernstein_rhs(t, u, sigma2, kappa * c, psi)?.raw / bennett);
        min_ratio = min_ratio.min(bernstein_rhs(t, u, sigma2, c, psi)?.raw / bennett);
    }
    Ok(EquivalenceReport { growth_c, kappa, max_ratio, min_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, LN_2};

    #[test]
    fn formula_values() {
        let p = OrliczFunction::psi1();
        assert_eq!(bennett_rhs(0.0, 1.0, 1.0, 1.0, &p, true).unwrap().raw, 4.0);
        assert_eq!(bernstein_rhs(0.0, 1.0, 1.0, 1.0, &p).unwrap().raw, 4.0);
        let b = bennett_rhs(1.0, 1.0, 1.0, 1.0, &p, true).unwrap();
        assert!((b.raw - (2.0 * (-LN_2).exp() + 2.0 / E)).abs() < 1e-12);
        assert_eq!(b.capped, 1.0);
        let s = bernstein_rhs(2.0, 1.0, 1.0, 1.0, &p).unwrap().raw;
        assert!((s - (2.0 * (-4.0f64 / 3.0).exp() + 2.0 / E.powi(2))).abs() < 1e-12);
        let phi = convex_phi(&p).unwrap();
        let v = convex_rhs(1.0, 1.0, 1.0, 1.0, &phi).unwrap().raw;
        assert!((v - 4.0 / E).abs() < 1e-12);
        assert_eq!(convex_rhs(0.0, 1.0, 1.0, 1.0, &phi).unwrap().raw, 4.0);
    }

    #[test]
    fn talagrand_form_drops_orlicz_term() {
        let p = OrliczFunction::psi1();
        let v = bennett_rhs(1.0, 1.0, 1.0, 0.5, &p, false).unwrap().raw;
        assert!((v - 2.0 * (-0.5 * LN_2).exp()).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        let p = OrliczFunction::psi1();
        assert!(matches!(bennett_rhs(1.0, 0.0, 1.0, 1.0, &p, true), Err(Error::Domain(_))));
        assert!(matches!(bernstein_rhs(1.0, 1.0, -1.0, 1.0, &p), Err(Error::Domain(_))));
        assert!(matches!(bernstein_rhs(-1.0, 1.0, 1.0, 1.0, &p), Err(Error::Domain(_))));
    }

    #[test]
    fn equivalence_for_psi1_and_not_for_exp_square() {
        let p = OrliczFunction::psi1();
        let ts: Vec<f64> = (1..=40).map(|i| 0.25 * i as f64).collect();
        for (u, s2) in [(1.0, 4.0), (1.0, 0.1), (0.3, 50.0)] {
            let r = bennett_bernstein_equivalence(&p, &ts, u, s2, 1.0).unwrap();
            assert!(r.min_ratio >= 1.0 && r.max_ratio <= 10.0, "{r:?}");
        }
        assert!(bennett_bernstein_equivalence(&OrliczFunction::exp_square(), &ts, 1.0, 4.0, 1.0).is_err());
    }
}
