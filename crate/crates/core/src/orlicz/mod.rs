//! Orlicz functions `Ψ = e^ψ − 1` with log-domain evaluation.
//!
//! Every family is evaluated through `ln Ψ(x)`, so values like `Ψ(x) = e^{10^6}`
//! stay usable: `ψ(x) = ln(1 + Ψ(x))` and comparisons are carried out on the
//! log scale, and the linear value is only materialised when it fits in an `f64`.

mod counterexample;
mod hj;
mod validate;

pub use counterexample::{build_counterexample, verify_margins, Counterexample, Margin};
pub use hj::{check_hj, check_hj_along, hj_ratio, HjPoint, HjReport, HjVerdict, SubChecks};
pub use validate::{default_grid, l1_embedding_constant, validate, ValidationReport, VALIDATION_TOL};

use crate::error::{Error, Result};
use crate::numeric::{
    bisect_boundary, ln_add_exp, ln_expm1, ln_sub_exp, softplus, BISECTION_MAX_ITER,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;

/// Serializable description of an Orlicz function.
///
/// ```toml
/// family = "exp-power"
/// alpha = 0.5
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OrliczSpec {
    /// `Ψ(x) = x^p`.
    PowerLaw { p: f64 },
    /// `Ψ(x) = e^{x^α} − 1`, `α ∈ (0, 1]`; convexified near zero when `α < 1`.
    ExpPower { alpha: f64 },
    /// `Ψ(x) = e^{ln^β(1+x)} − 1`, `β ≥ 1`.
    HeavyTailLog { beta: f64 },
    /// `Ψ(x) = e^{x²} − 1`.
    ExpSquare,
    /// Piecewise affine `Ψ` stored by logarithms of knot values and segment slopes.
    PiecewiseAffineLog { knots: Vec<Knot> },
    /// `Φ(x) = Ψ(x²)`.
    SquareComposed { inner: Box<OrliczSpec> },
}

/// One knot of a piecewise affine Orlicz function.
///
/// `ln_value` is `ln Ψ(x)`, serialized as `null` for the origin where `Ψ = 0`;
/// `ln_slope` is the logarithm of the slope of the segment starting at `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Knot {
    pub x: f64,
    pub ln_value: Option<f64>,
    pub ln_slope: f64,
}

impl Knot {
    pub fn ln_value(&self) -> f64 {
        self.ln_value.unwrap_or(f64::NEG_INFINITY)
    }
}

/// Scale on which `invert` interprets its argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    /// `y = Ψ(x)`.
    Linear,
    /// `y = ψ(x) = ln(1 + Ψ(x))`.
    Psi,
    /// `y = ln Ψ(x)`.
    LnPsi,
}

/// Result of evaluating `Ψ` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    /// `Ψ(x)`, or `None` when it overflows `f64`.
    pub value: Option<f64>,
    /// `ψ(x) = ln(1 + Ψ(x))`.
    pub psi: f64,
    /// `ln Ψ(x)` (`-inf` at zero).
    pub ln_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    PowerLaw {
        p: f64,
    },
    /// `threshold` is where the linear piece through the origin touches `e^{x^α} − 1`.
    ExpPower {
        alpha: f64,
        threshold: f64,
        ln_slope: f64,
    },
    HeavyTailLog {
        beta: f64,
    },
    ExpSquare,
    Piecewise {
        knots: Vec<Knot>,
    },
    SquareComposed(Box<OrliczFunction>),
}

/// A validated-parameter Orlicz function. Immutable and cheap to share between threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OrliczSpec", into = "OrliczSpec")]
pub struct OrliczFunction {
    spec: OrliczSpec,
    kind: Kind,
}

impl TryFrom<OrliczSpec> for OrliczFunction {
    type Error = Error;

    fn try_from(spec: OrliczSpec) -> Result<Self> {
        OrliczFunction::new(spec)
    }
}

impl From<OrliczFunction> for OrliczSpec {
    fn from(f: OrliczFunction) -> Self {
        f.spec
    }
}

impl fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spec {
            OrliczSpec::PowerLaw { p } => write!(f, "x^{p}"),
            OrliczSpec::ExpPower { alpha } => write!(f, "exp(x^{alpha})-1"),
            OrliczSpec::HeavyTailLog { beta } => write!(f, "exp(ln^{beta}(1+x))-1"),
            OrliczSpec::ExpSquare => write!(f, "exp(x^2)-1"),
            OrliczSpec::PiecewiseAffineLog { knots } => {
                write!(f, "piecewise-affine[{} knots]", knots.len())
            }
            OrliczSpec::SquareComposed { inner } => write!(
                f,
                "({})∘x^2",
                OrliczFunction::new((**inner).clone()).map_err(|_| fmt::Error)?
            ),
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

impl OrliczFunction {
    /// Checks family parameters and precomputes the convexification of `Ψ_α`.
    ///
    /// Axioms (convexity, monotonicity) are checked separately by [`validate`].
    pub fn new(spec: OrliczSpec) -> Result<Self> {
        let kind = match &spec {
            OrliczSpec::PowerLaw { p } => {
                ensure(p.is_finite() && *p > 0.0, || format!("power-law exponent p = {p} must be > 0"))?;
                Kind::PowerLaw { p: *p }
            }
            OrliczSpec::ExpPower { alpha } => {
                ensure(alpha.is_finite() && *alpha > 0.0 && *alpha <= 1.0, || {
                    format!("exp-power alpha = {alpha} must lie in (0, 1]")
                })?;
                let (threshold, ln_slope) = convexification(*alpha);
                Kind::ExpPower { alpha: *alpha, threshold, ln_slope }
            }
            OrliczSpec::HeavyTailLog { beta } => {
                ensure(beta.is_finite() && *beta >= 1.0, || format!("heavy-tail beta = {beta} must be >= 1"))?;
                Kind::HeavyTailLog { beta: *beta }
            }
            OrliczSpec::ExpSquare => Kind::ExpSquare,
            OrliczSpec::PiecewiseAffineLog { knots } => {
                check_knots(knots)?;
                Kind::Piecewise { knots: knots.clone() }
            }
            OrliczSpec::SquareComposed { inner } => {
                Kind::SquareComposed(Box::new(OrliczFunction::new((**inner).clone())?))
            }
        };
        Ok(Self { spec, kind })
    }

    pub fn power_law(p: f64) -> Result<Self> {
        Self::new(OrliczSpec::PowerLaw { p })
    }

    pub fn exp_power(alpha: f64) -> Result<Self> {
        Self::new(OrliczSpec::ExpPower { alpha })
    }

    pub fn heavy_tail_log(beta: f64) -> Result<Self> {
        Self::new(OrliczSpec::HeavyTailLog { beta })
    }

    pub fn exp_square() -> Self {
        Self::new(OrliczSpec::ExpSquare).expect("exp-square has no parameters")
    }

    /// `Ψ₁(x) = e^x − 1`.
    pub fn psi1() -> Self {
        Self::exp_power(1.0).expect("alpha = 1 is valid")
    }

    pub fn piecewise(knots: Vec<Knot>) -> Result<Self> {
        Self::new(OrliczSpec::PiecewiseAffineLog { knots })
    }

    /// `Φ(x) = Ψ(x²)`.
    pub fn square_composed(inner: &OrliczFunction) -> Self {
        Self {
            spec: OrliczSpec::SquareComposed { inner: Box::new(inner.spec.clone()) },
            kind: Kind::SquareComposed(Box::new(inner.clone())),
        }
    }

    pub fn spec(&self) -> &OrliczSpec {
        &self.spec
    }

    /// Knots of a piecewise function, empty for the analytic families.
    pub fn knots(&self) -> &[Knot] {
        match &self.kind {
            Kind::Piecewise { knots } => knots,
            _ => &[],
        }
    }

    /// Point below which `Ψ_α` (`α < 1`) is replaced by its tangent through the origin.
    pub fn convexification_threshold(&self) -> f64 {
        match &self.kind {
            Kind::ExpPower { threshold, .. } => *threshold,
            _ => 0.0,
        }
    }

    /// Short stable hash of the serialized spec, echoed in reports.
    pub fn spec_hash(&self) -> String {
        let text = serde_json::to_string(&self.spec).expect("spec serializes");
        let digest = Sha256::digest(text.as_bytes());
        hex::encode(&digest[..8])
    }

    /// Whether `Ψ(x)/x^p` is unbounded for every `p`. Decided per family.
    pub fn is_superpolynomial(&self) -> bool {
        match &self.kind {
            Kind::PowerLaw { .. } | Kind::Piecewise { .. } => false,
            Kind::ExpPower { .. } | Kind::ExpSquare => true,
            Kind::HeavyTailLog { beta } => *beta > 1.0,
            Kind::SquareComposed(inner) => inner.is_superpolynomial(),
        }
    }

    /// `ln Ψ(x)` for `x ≥ 0` (`-inf` at zero). Panics in debug builds on negative input.
    pub fn ln_psi(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0, "ln_psi at negative x = {x}");
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        match &self.kind {
            Kind::PowerLaw { p } => p * x.ln(),
            Kind::ExpPower { alpha, threshold, ln_slope } => {
                if x < *threshold {
                    ln_slope + x.ln()
                } else {
                    ln_expm1(x.powf(*alpha))
                }
            }
            Kind::HeavyTailLog { beta } => ln_expm1(x.ln_1p().powf(*beta)),
            Kind::ExpSquare => ln_expm1(x * x),
            Kind::Piecewise { knots } => {
                let k = &knots[segment_index(knots, x)];
                if x == k.x {
                    k.ln_value()
                } else {
                    ln_add_exp(k.ln_value(), k.ln_slope + (x - k.x).ln())
                }
            }
            Kind::SquareComposed(inner) => inner.ln_psi(x * x),
        }
    }

    /// `ψ(x) = ln(1 + Ψ(x))`.
    pub fn psi(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            Kind::ExpPower { alpha, threshold, .. } if x >= *threshold => x.powf(*alpha),
            Kind::HeavyTailLog { beta } => x.ln_1p().powf(*beta),
            Kind::ExpSquare => x * x,
            Kind::SquareComposed(inner) => inner.psi(x * x),
            _ => softplus(self.ln_psi(x)),
        }
    }

    /// Evaluates `Ψ`, `ψ` and `ln Ψ` at `x`.
    pub fn eval(&self, x: f64) -> Result<Evaluation> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("Orlicz function evaluated at x = {x}")));
        }
        let ln_value = self.ln_psi(x);
        let psi = self.psi(x);
        let value = if ln_value < 709.0 {
            Some(match &self.kind {
                Kind::PowerLaw { p } => x.powf(*p),
                Kind::ExpPower { alpha, threshold, .. } if x >= *threshold => x.powf(*alpha).exp_m1(),
                Kind::HeavyTailLog { beta } => x.ln_1p().powf(*beta).exp_m1(),
                Kind::ExpSquare => (x * x).exp_m1(),
                _ => ln_value.exp(),
            })
        } else {
            None
        };
        Ok(Evaluation { value, psi, ln_value })
    }

    /// Logarithm of the right derivative `Ψ'(x+)`.
    pub fn ln_right_derivative(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0);
        match &self.kind {
            Kind::PowerLaw { p } => {
                if x == 0.0 {
                    if *p < 1.0 {
                        f64::INFINITY
                    } else if *p == 1.0 {
                        0.0
                    } else {
                        f64::NEG_INFINITY
                    }
                } else {
                    p.ln() + (p - 1.0) * x.ln()
                }
            }
            Kind::ExpPower { alpha, threshold, ln_slope } => {
                if x < *threshold {
                    *ln_slope
                } else if x == 0.0 {
                    // alpha = 1 at the origin.
                    0.0
                } else {
                    alpha.ln() + (alpha - 1.0) * x.ln() + x.powf(*alpha)
                }
            }
            Kind::HeavyTailLog { beta } => {
                let l = x.ln_1p();
                if *beta == 1.0 {
                    0.0
                } else if x == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    beta.ln() + (beta - 1.0) * l.ln() + l.powf(*beta) - l
                }
            }
            Kind::ExpSquare => {
                if x == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    (2.0 * x).ln() + x * x
                }
            }
            Kind::Piecewise { knots } => knots[segment_index(knots, x)].ln_slope,
            Kind::SquareComposed(inner) => {
                if x == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    (2.0 * x).ln() + inner.ln_right_derivative(x * x)
                }
            }
        }
    }

    /// Solves `Ψ(x) = y` on the requested scale by doubling then bisecting.
    pub fn invert(&self, y: f64, scale: Scale) -> Result<f64> {
        let target = match scale {
            Scale::Linear => {
                if !(y >= 0.0) || y.is_infinite() {
                    return Err(Error::Range(format!("cannot invert Ψ at y = {y} on the linear scale")));
                }
                y.ln()
            }
            Scale::Psi => {
                if !(y >= 0.0) || y.is_infinite() {
                    return Err(Error::Range(format!("cannot invert ψ at y = {y}")));
                }
                ln_expm1(y)
            }
            Scale::LnPsi => {
                if y.is_nan() || y == f64::INFINITY {
                    return Err(Error::Range(format!("cannot invert ln Ψ at {y}")));
                }
                y
            }
        };
        self.invert_ln(target)
    }

    /// Solves `ln Ψ(x) = target`.
    pub fn invert_ln(&self, target: f64) -> Result<f64> {
        if target == f64::NEG_INFINITY {
            return Ok(0.0);
        }
        let pred = |x: f64| self.ln_psi(x) >= target;
        let (mut lo, mut hi) = (0.5, 1.0);
        if pred(hi) {
            while pred(lo) {
                hi = lo;
                lo *= 0.5;
                if lo < 1e-300 {
                    return Err(Error::Range(format!("ln Ψ target {target} below representable x")));
                }
            }
        } else {
            lo = 1.0;
            hi = 2.0;
            while !pred(hi) {
                lo = hi;
                hi *= 2.0;
                if !hi.is_finite() || hi > 1e300 {
                    return Err(Error::Range(format!("ln Ψ target {target} beyond representable x")));
                }
            }
        }
        let b = bisect_boundary(pred, lo, hi, 4.0 * f64::EPSILON, BISECTION_MAX_ITER);
        // Pick the endpoint whose image is closer to the target.
        let (el, eh) = ((self.ln_psi(b.lo) - target).abs(), (self.ln_psi(b.hi) - target).abs());
        Ok(if el < eh { b.lo } else { b.hi })
    }
}

/// Index of the segment `[x_i, x_{i+1})` that contains `x` (the last one is unbounded).
fn segment_index(knots: &[Knot], x: f64) -> usize {
    match knots.binary_search_by(|k| k.x.partial_cmp(&x).expect("finite knots")) {
        Ok(i) => i,
        Err(i) => i.saturating_sub(1),
    }
}

fn check_knots(knots: &[Knot]) -> Result<()> {
    ensure(!knots.is_empty(), || "piecewise function needs at least one knot".into())?;
    ensure(knots[0].x == 0.0, || "first knot must sit at x = 0".into())?;
    ensure(knots[0].ln_value.is_none(), || "Ψ(0) must be 0 (ln_value = null at the origin)".into())?;
    for w in knots.windows(2) {
        ensure(w[1].x > w[0].x && w[1].x.is_finite(), || {
            format!("knots must be strictly ascending ({} then {})", w[0].x, w[1].x)
        })?;
        ensure(w[1].ln_value.is_some_and(|v| !v.is_nan()), || format!("knot at {} lacks ln_value", w[1].x))?;
    }
    for k in knots {
        ensure(!k.ln_slope.is_nan() && k.ln_slope < f64::INFINITY, || format!("bad ln_slope at {}", k.x))?;
    }
    Ok(())
}

/// Reconstructed log-slope of segment `i` from consecutive knot values.
pub(crate) fn reconstructed_ln_slope(knots: &[Knot], i: usize) -> f64 {
    let (a, b) = (&knots[i], &knots[i + 1]);
    ln_sub_exp(b.ln_value(), a.ln_value()) - (b.x - a.x).ln()
}

/// Tangent point and log-slope of the line through the origin touching `e^{x^α} − 1`.
///
/// In `z = x^α` the tangency condition `x Ψ'(x) = Ψ(x)` reads `e^z (αz − 1) + 1 = 0`,
/// whose unique positive root lies in `((1−α)/α, 1/α)`.
fn convexification(alpha: f64) -> (f64, f64) {
    if alpha >= 1.0 {
        return (0.0, 0.0);
    }
    let h = |z: f64| z.exp() * (alpha * z - 1.0) + 1.0;
    let b = bisect_boundary(|z| h(z) >= 0.0, (1.0 - alpha) / alpha, 1.0 / alpha, 1e-15, 400);
    let z = b.hi;
    let x = z.powf(1.0 / alpha);
    (x, ln_expm1(z) - x.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn eval_examples() {
        let e = OrliczFunction::psi1().eval(LN_2).unwrap();
        assert!(rel(e.value.unwrap(), 1.0) < 1e-15);
        assert!(rel(e.psi, LN_2) < 1e-15);

        let e = OrliczFunction::power_law(2.0).unwrap().eval(3.0).unwrap();
        assert_eq!(e.value, Some(9.0));
        assert!(rel(e.psi, 10f64.ln()) < 1e-15);

        let e = OrliczFunction::heavy_tail_log(1.0).unwrap().eval(7.0).unwrap();
        assert!(rel(e.value.unwrap(), 7.0) < 1e-14);
    }

    #[test]
    fn eval_rejects_negative_and_zero_is_zero() {
        let f = OrliczFunction::psi1();
        assert!(matches!(f.eval(-1.0), Err(Error::Domain(_))));
        let e = f.eval(0.0).unwrap();
        assert_eq!(e.value, Some(0.0));
        assert_eq!(e.psi, 0.0);
        assert_eq!(e.ln_value, f64::NEG_INFINITY);
    }

    #[test]
    fn value_consistent_with_log_value() {
        let fams = [
            OrliczFunction::psi1(),
            OrliczFunction::exp_power(0.5).unwrap(),
            OrliczFunction::heavy_tail_log(2.0).unwrap(),
            OrliczFunction::exp_square(),
            OrliczFunction::power_law(3.0).unwrap(),
        ];
        for f in &fams {
            for &x in &[1e-3, 0.1, 0.9, 2.0, 7.5, 20.0] {
                let e = f.eval(x).unwrap();
                if let Some(v) = e.value {
                    assert!(rel(v.ln(), e.ln_value) < 1e-12 || (v.ln() - e.ln_value).abs() < 1e-12, "{f} at {x}");
                }
            }
        }
    }

    #[test]
    fn huge_log_values_do_not_overflow() {
        let f = OrliczFunction::exp_square();
        let e = f.eval(1000.0).unwrap();
        assert_eq!(e.value, None);
        assert_eq!(e.psi, 1e6);
        assert!(rel(e.ln_value, 1e6) < 1e-15);
    }

    #[test]
    fn invert_examples() {
        let f = OrliczFunction::psi1();
        assert!(rel(f.invert(1.0, Scale::Linear).unwrap(), LN_2) < 1e-12);
        assert!(rel(f.invert(5.0, Scale::Psi).unwrap(), 5.0) < 1e-12);
        let p = OrliczFunction::power_law(2.0).unwrap();
        assert!(rel(p.invert(9.0, Scale::Linear).unwrap(), 3.0) < 1e-12);
        assert_eq!(p.invert(0.0, Scale::Linear).unwrap(), 0.0);
        assert!(matches!(p.invert(f64::INFINITY, Scale::Linear), Err(Error::Range(_))));
    }

    #[test]
    fn convexified_exp_power_matches_above_threshold() {
        let f = OrliczFunction::exp_power(0.5).unwrap();
        let t = f.convexification_threshold();
        // inflection point is ((1-α)/α)^{1/α} = 1; the tangent point lies beyond it
        assert!(t > 1.0 && t < 4.0, "{t}");
        for &x in &[t, 2.0 * t, 10.0 * t] {
            assert!(rel(f.psi(x), x.sqrt()) < 1e-12);
        }
        // continuity and C1 at the junction
        let below = f.ln_psi(t * (1.0 - 1e-9));
        assert!((below - f.ln_psi(t)).abs() < 1e-8);
        let d_lin = f.ln_right_derivative(t * 0.999);
        let d_exp = f.ln_right_derivative(t);
        assert!((d_lin - d_exp).abs() < 1e-9);
    }

    #[test]
    fn piecewise_evaluation_in_log_domain() {
        // Ψ(x) = x/2 on [0,2], then slope e^{1000}
        let knots = vec![
            Knot { x: 0.0, ln_value: None, ln_slope: -LN_2 },
            Knot { x: 2.0, ln_value: Some(0.0), ln_slope: 1000.0 },
        ];
        let f = OrliczFunction::piecewise(knots).unwrap();
        assert!(rel(f.eval(1.0).unwrap().value.unwrap(), 0.5) < 1e-15);
        assert!(rel(f.ln_psi(3.0), 1000.0) < 1e-12);
        assert_eq!(f.ln_right_derivative(2.0), 1000.0);
        assert!(rel(f.invert_ln(1000.0 + (0.5f64).ln()).unwrap(), 2.5) < 1e-12);
    }

    #[test]
    fn parameter_checks() {
        assert!(OrliczFunction::exp_power(1.5).is_err());
        assert!(OrliczFunction::exp_power(0.0).is_err());
        assert!(OrliczFunction::power_law(-1.0).is_err());
        assert!(OrliczFunction::heavy_tail_log(0.5).is_err());
        let bad = vec![Knot { x: 1.0, ln_value: None, ln_slope: 0.0 }];
        assert!(OrliczFunction::piecewise(bad).is_err());
    }

    #[test]
    fn serde_round_trip_and_hash() {
        let f = OrliczFunction::exp_power(0.5).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"family":"exp-power","alpha":0.5}"#);
        let g: OrliczFunction = serde_json::from_str(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.spec_hash(), g.spec_hash());
        assert_ne!(f.spec_hash(), OrliczFunction::psi1().spec_hash());
        let bad: std::result::Result<OrliczFunction, _> =
            serde_json::from_str(r#"{"family":"exp-power","alpha":1.5}"#);
        assert!(bad.is_err());
        let knots = r#"{"family":"piecewise-affine-log","knots":[{"x":0.0,"ln_value":null,"ln_slope":-1.0},{"x":1.0,"ln_value":-1.0,"ln_slope":2.0}]}"#;
        let p: OrliczFunction = serde_json::from_str(knots).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), knots);
    }

    #[test]
    fn square_composition() {
        let phi = OrliczFunction::square_composed(&OrliczFunction::psi1());
        assert!(rel(phi.psi(3.0), 9.0) < 1e-15);
        assert!(rel(phi.ln_psi(1.0), (std::f64::consts::E - 1.0).ln()) < 1e-14);
        assert!(phi.is_superpolynomial());
    }
}
