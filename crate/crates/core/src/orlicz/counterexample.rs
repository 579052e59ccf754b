//! Inductive construction of a piecewise affine `Ψ ≤ Φ` that violates the (HJ) growth
//! condition: `Ψ(k u_k) > k · k^{k²} · Ψ(u_k)^{k²}` for every constructed step `k`.

use super::{default_grid, validate, Knot, OrliczFunction};
use crate::error::{Error, Result};
use crate::numeric::{bisect_boundary, bracket_upward, ln_add_exp, log_grid};
use serde::Serialize;

/// Log-margins of the construction's conditions at step `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margin {
    pub k: usize,
    /// `u_{k+1} − k u_k` (`None` at the last step).
    pub spacing: Option<f64>,
    /// `ln Ψ(k u_k) − ln k − k² ln k − k² ln Ψ(u_k)`.
    pub growth: f64,
    /// `ln Φ'(u_k+) − ln Ψ'(u_k−)`.
    pub slope: f64,
    /// `ln(Φ'(u_k+)(k u_k − u_k) + Ψ(u_k)) − ln k − k² ln k − k² ln Ψ(u_k)`.
    pub tangent: f64,
}

impl Margin {
    pub fn all_positive(&self) -> bool {
        self.spacing.is_none_or(|d| d > 0.0) && self.growth > 0.0 && self.slope > 0.0 && self.tangent > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub psi: OrliczFunction,
    pub phi: OrliczFunction,
    /// `u_1 = 0, u_2, …, u_depth`.
    pub breakpoints: Vec<f64>,
    pub requested_depth: usize,
    /// Number of breakpoints actually constructed.
    pub depth: usize,
    pub margins: Vec<Margin>,
    /// Largest `ln Ψ − ln Φ` on the audit grid (negative when `Ψ < Φ` throughout).
    pub audit_excess: f64,
    pub audit_points: usize,
    /// Set when the search ran out of representable range before `requested_depth`.
    pub truncated: Option<String>,
}

impl Counterexample {
    pub fn is_complete(&self) -> bool {
        self.truncated.is_none()
    }

    pub fn margins_positive(&self) -> bool {
        self.margins.iter().all(Margin::all_positive)
    }

    pub fn dominated(&self) -> bool {
        self.audit_excess <= 0.0
    }

    /// `(k, u_k)` for `k = 2..=depth`.
    pub fn schedule(&self) -> Vec<(usize, f64)> {
        self.breakpoints.iter().enumerate().skip(1).map(|(i, &u)| (i + 1, u)).collect()
    }
}

const SEARCH_CAP: f64 = 1e300;

fn ln_target(k: usize, ln_psi_u: f64) -> f64 {
    let kf = k as f64;
    let k2 = kf * kf;
    kf.ln() + k2 * kf.ln() + k2 * ln_psi_u
}

/// Builds `u_2 < … < u_{n_max}` and the piecewise affine `Ψ` following `Φ'`.
///
/// `u_2` is the smallest point (doubling from 1, then bisection) with `Φ(u) > 1`,
/// `Φ'(u+) > 1/u` and `Φ'(u+) u + 1 > 32`. Each later `u_{n+1} > n u_n` is the first point
/// past `n u_n` where `Φ'(u_{n+1}+)` beats the polynomial
/// `(n+1)^{1+(n+1)²} (Φ'(u_n+)(u_{n+1} − u_n) + Ψ(u_n))^{(n+1)²} + Φ'(u_n+)`.
pub fn build_counterexample(phi: &OrliczFunction, n_max: usize) -> Result<Counterexample> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("n_max = {n_max} must be at least 2")));
    }
    if !phi.is_superpolynomial() {
        return Err(Error::InvalidParameter(format!("Φ = {phi} is not superpolynomial")));
    }

    let first = |u: f64| {
        let ln_d = phi.ln_right_derivative(u);
        phi.ln_psi(u) > 0.0 && ln_d > -u.ln() && ln_add_exp(ln_d + u.ln(), 0.0) > 32f64.ln()
    };
    let u2 = if first(1.0) {
        1.0 + 1e-12
    } else {
        let b = bracket_upward(first, 1.0, SEARCH_CAP)
            .ok_or_else(|| Error::Range(format!("no u_2 below {SEARCH_CAP:e} for Φ = {phi}")))?;
        bisect_boundary(first, b.lo, b.hi, 1e-12, 200).hi
    };

    let mut breakpoints = vec![0.0, u2];
    let mut knots = vec![Knot { x: 0.0, ln_value: None, ln_slope: -u2.ln() }];
    let mut ln_psi_un = 0.0;
    let mut truncated = None;

    while breakpoints.len() < n_max {
        let n = breakpoints.len();
        let un = breakpoints[n - 1];
        let ln_slope = phi.ln_right_derivative(un);
        knots.push(Knot { x: un, ln_value: Some(ln_psi_un), ln_slope });

        let m = (n + 1) as f64;
        let ln_poly = |x: f64| {
            let ln_val = ln_add_exp(ln_slope + (x - un).ln(), ln_psi_un);
            ln_add_exp(m.ln() * (1.0 + m * m) + m * m * ln_val, ln_slope)
        };
        let cond = |x: f64| phi.ln_right_derivative(x) > ln_poly(x);
        let start = n as f64 * un;
        let next = if cond(start * (1.0 + 1e-12)) {
            Some(start * (1.0 + 1e-12))
        } else {
            bracket_upward(cond, start, SEARCH_CAP).map(|b| bisect_boundary(cond, b.lo, b.hi, 1e-12, 200).hi)
        };
        let Some(next) = next.filter(|x| phi.ln_right_derivative(*x).is_finite()) else {
            knots.pop();
            truncated = Some(format!(
                "search for u_{} exceeded the representable range; stopped at depth {n}",
                n + 1
            ));
            break;
        };
        ln_psi_un = ln_add_exp(ln_slope + (next - un).ln(), ln_psi_un);
        breakpoints.push(next);
    }
    let last = *breakpoints.last().expect("u_2 exists");
    knots.push(Knot { x: last, ln_value: Some(ln_psi_un), ln_slope: phi.ln_right_derivative(last) });

    let psi = OrliczFunction::piecewise(knots)?;
    let report = validate(&psi, &default_grid(&psi));
    if !report.passed() {
        return Err(Error::Range(format!(
            "constructed Ψ failed validation: {}",
            report.failure().unwrap_or_default()
        )));
    }

    let mut result = Counterexample {
        psi,
        phi: phi.clone(),
        depth: breakpoints.len(),
        breakpoints,
        requested_depth: n_max,
        margins: Vec::new(),
        audit_excess: f64::NEG_INFINITY,
        audit_points: 0,
        truncated,
    };
    result.margins = verify_margins(&result);
    let (excess, points) = audit(&result);
    result.audit_excess = excess;
    result.audit_points = points;
    Ok(result)
}

/// Recomputes the per-step log-margins from the stored `Ψ`, `Φ` and breakpoints.
pub fn verify_margins(result: &Counterexample) -> Vec<Margin> {
    let (psi, phi, u) = (&result.psi, &result.phi, &result.breakpoints);
    (2..=u.len())
        .map(|k| {
            let uk = u[k - 1];
            let kf = k as f64;
            let ln_psi_u = psi.ln_psi(uk);
            let target = ln_target(k, ln_psi_u);
            let ln_dphi = phi.ln_right_derivative(uk);
            let ln_dpsi_left = psi.ln_right_derivative(uk * (1.0 - 1e-12));
            Margin {
                k,
                spacing: u.get(k).map(|&next| next - kf * uk),
                growth: psi.ln_psi(kf * uk) - target,
                slope: ln_dphi - ln_dpsi_left,
                tangent: ln_add_exp(ln_dphi + ((kf - 1.0) * uk).ln(), ln_psi_u) - target,
            }
        })
        .collect()
}

/// Largest `ln Ψ − ln Φ` over knots and a log grid on `[u_2, 2 n u_n]`.
fn audit(result: &Counterexample) -> (f64, usize) {
    let u = &result.breakpoints;
    let lo = u[1];
    let hi = 2.0 * u.len() as f64 * u[u.len() - 1];
    let mut points = log_grid(lo, hi.max(lo * 2.0), 400);
    points.extend(u.iter().skip(1));
    let excess = points
        .iter()
        .map(|&x| {
            let (a, b) = (result.psi.ln_psi(x), result.phi.ln_psi(x));
            a - b - 16.0 * f64::EPSILON * b.abs()
        })
        .fold(f64::NEG_INFINITY, f64::max);
    (excess, points.len())
}
