//! Axiom checks on a finite grid: `Ψ(0) = 0`, strict monotonicity, midpoint convexity.

use super::{reconstructed_ln_slope, OrliczFunction};
use crate::numeric::{ln_add_exp, log_grid};
use serde::Serialize;
use std::f64::consts::LN_2;

/// Absolute log-domain tolerance for the convexity and slope checks.
pub const VALIDATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub zero_at_origin: bool,
    /// First consecutive pair `(x, y)` with `Ψ(x) ≥ Ψ(y)`.
    pub monotone_violation: Option<(f64, f64)>,
    /// First triple `(x, y, (x+y)/2)` violating midpoint convexity.
    pub convexity_violation: Option<(f64, f64, f64)>,
    /// First knot index whose linear-domain segment slope decreases (piecewise only).
    pub slope_violation: Option<usize>,
    /// First knot index where the stored slope disagrees with the knot values.
    pub continuity_violation: Option<usize>,
    pub grid_len: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.zero_at_origin
            && self.monotone_violation.is_none()
            && self.convexity_violation.is_none()
            && self.slope_violation.is_none()
            && self.continuity_violation.is_none()
    }

    /// Name of the first failing axiom.
    pub fn failure(&self) -> Option<String> {
        if !self.zero_at_origin {
            Some("Ψ(0) ≠ 0".into())
        } else if let Some((x, y)) = self.monotone_violation {
            Some(format!("not strictly increasing between {x} and {y}"))
        } else if let Some((x, y, m)) = self.convexity_violation {
            Some(format!("midpoint convexity fails at x = {x}, y = {y} (midpoint {m})"))
        } else if let Some(i) = self.slope_violation {
            Some(format!("linear-domain slope decreases after knot {i}"))
        } else {
            self.continuity_violation
                .map(|i| format!("stored slope at knot {i} disagrees with knot values"))
        }
    }
}

/// `0`, 64 log-spaced points on `[1e-3, 1e3]`, and the family's own breakpoints
/// (knots, their midpoints, twice the last knot, the convexification threshold).
pub fn default_grid(psi: &OrliczFunction) -> Vec<f64> {
    let mut grid = vec![0.0];
    grid.extend(log_grid(1e-3, 1e3, 64));
    let knots = psi.knots();
    for (i, k) in knots.iter().enumerate() {
        grid.push(k.x);
        if let Some(next) = knots.get(i + 1) {
            grid.push(0.5 * (k.x + next.x));
        } else if k.x > 0.0 {
            grid.push(2.0 * k.x);
        }
    }
    let t = psi.convexification_threshold();
    if t > 0.0 {
        grid.extend([0.5 * t, t, 2.0 * t]);
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    grid
}

fn tol(a: f64, b: f64) -> f64 {
    let scale = [a, b].iter().filter(|v| v.is_finite()).fold(0.0f64, |m, v| m.max(v.abs()));
    VALIDATION_TOL + 16.0 * f64::EPSILON * scale
}

/// Checks the Orlicz axioms on `grid` (ascending, nonnegative).
pub fn validate(psi: &OrliczFunction, grid: &[f64]) -> ValidationReport {
    let zero_at_origin = psi.ln_psi(0.0) == f64::NEG_INFINITY;
    let ln: Vec<f64> = grid.iter().map(|&x| psi.ln_psi(x)).collect();

    let monotone_violation = grid
        .windows(2)
        .zip(ln.windows(2))
        .find(|(_, l)| !(l[1] > l[0]))
        .map(|(g, _)| (g[0], g[1]));

    let mut convexity_violation = None;
    'outer: for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let m = 0.5 * (grid[i] + grid[j]);
            let lhs = psi.ln_psi(m);
            let rhs = ln_add_exp(ln[i], ln[j]) - LN_2;
            if lhs > rhs + tol(lhs, rhs) {
                convexity_violation = Some((grid[i], grid[j], m));
                break 'outer;
            }
        }
    }

    let (mut slope_violation, mut continuity_violation) = (None, None);
    let knots = psi.knots();
    if knots.len() >= 2 {
        let mut slopes: Vec<f64> = (0..knots.len() - 1).map(|i| reconstructed_ln_slope(knots, i)).collect();
        for (i, s) in slopes.iter().enumerate() {
            if (s - knots[i].ln_slope).abs() > tol(knots[i + 1].ln_value(), knots[i].ln_slope) {
                continuity_violation = Some(i);
                break;
            }
        }
        slopes.push(knots[knots.len() - 1].ln_slope);
        slope_violation = slopes.windows(2).position(|w| w[1] < w[0] - tol(w[0], w[1])).map(|i| i + 1);
    }

    ValidationReport {
        zero_at_origin,
        monotone_violation,
        convexity_violation,
        slope_violation,
        continuity_violation,
        grid_len: grid.len(),
    }
}

/// Smallest `(1 + b)/a` over tangent lines `a x − b ≤ Ψ(x)` touching at grid points.
///
/// Bounds `‖X‖₁ ≤ C ‖X‖_Ψ`. Only tangents representable in `f64` are considered.
pub fn l1_embedding_constant(psi: &OrliczFunction, grid: &[f64]) -> f64 {
    grid.iter()
        .filter(|&&x| x > 0.0)
        .filter_map(|&x0| {
            let a = psi.ln_right_derivative(x0).exp();
            let v = psi.eval(x0).ok()?.value?;
            let b = x0 * a - v;
            (a.is_finite() && a > 0.0 && b.is_finite()).then(|| (1.0 + b.max(0.0)) / a)
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orlicz::Knot;

    #[test]
    fn standard_families_pass() {
        for f in [
            OrliczFunction::power_law(2.0).unwrap(),
            OrliczFunction::power_law(1.0).unwrap(),
            OrliczFunction::psi1(),
            OrliczFunction::exp_power(0.5).unwrap(),
            OrliczFunction::exp_power(0.2).unwrap(),
            OrliczFunction::heavy_tail_log(1.0).unwrap(),
            OrliczFunction::heavy_tail_log(3.0).unwrap(),
            OrliczFunction::exp_square(),
        ] {
            let r = validate(&f, &default_grid(&f));
            assert!(r.passed(), "{f}: {:?}", r.failure());
        }
    }

    #[test]
    fn concave_power_fails_convexity() {
        let f = OrliczFunction::power_law(0.5).unwrap();
        let r = validate(&f, &default_grid(&f));
        assert!(r.convexity_violation.is_some());
        assert!(r.monotone_violation.is_none());
    }

    #[test]
    fn decreasing_piecewise_slopes_fail() {
        // slopes 2 then 1
        let knots = vec![
            Knot { x: 0.0, ln_value: None, ln_slope: 2f64.ln() },
            Knot { x: 1.0, ln_value: Some(2f64.ln()), ln_slope: 0.0 },
        ];
        let f = OrliczFunction::piecewise(knots).unwrap();
        let r = validate(&f, &default_grid(&f));
        assert!(!r.passed());
        assert_eq!(r.slope_violation, Some(1));
        assert!(r.convexity_violation.is_some());
    }

    #[test]
    fn inconsistent_knot_value_is_reported() {
        let knots = vec![
            Knot { x: 0.0, ln_value: None, ln_slope: 0.0 },
            Knot { x: 1.0, ln_value: Some(3.0), ln_slope: 5.0 },
        ];
        let f = OrliczFunction::piecewise(knots).unwrap();
        let r = validate(&f, &default_grid(&f));
        assert_eq!(r.continuity_violation, Some(0));
    }

    #[test]
    fn l1_constant_for_psi1() {
        // (1 + b)/a = x0 − 1 + 2e^{−x0}, minimised at x0 = ln 2
        let f = OrliczFunction::psi1();
        let c = l1_embedding_constant(&f, &default_grid(&f));
        let oracle = LN_2;
        assert!(c >= oracle - 1e-12 && c < oracle + 0.01, "{c} vs {oracle}");
    }
}
