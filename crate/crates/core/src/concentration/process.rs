//! `S = sup_{f∈A} Σ_i f(X_i)` over a finite class on a finite base space.

use super::{
    bennett_rhs, bernstein_equivalent_rhs, bernstein_rhs, convex_phi, convex_rhs, BoundId, BoundValue,
};
use crate::dist::{
    max_distribution, merge_sorted, sum_distribution_general, Family, FiniteDist, NormTag, DEFAULT_ATOM_BUDGET,
    MAX_DIM,
};
use crate::error::{Error, Result};
use crate::norm::{functional_samples, l1_exact, norm_exact, Functional, Method, NormEstimate, SECTIONS};
use crate::numeric::section_interval;
use crate::orlicz::OrliczFunction;
use serde::Serialize;

/// Cap on `|A| · N · n` function evaluations for one simulation.
pub const MC_WORK_BUDGET: f64 = 2e10;

/// Base space `{0, …, points − 1}`, a class of value tables, and independent index laws.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalProcessSpec {
    class: Vec<Vec<f64>>,
    family: Family,
    symmetric: bool,
}

impl EmpiricalProcessSpec {
    /// `family` members are scalar laws whose atoms are indices into every table. With
    /// `symmetric`, the supremum runs over `A ∪ (−A)`.
    pub fn new(class: Vec<Vec<f64>>, family: Family, symmetric: bool) -> Result<Self> {
        let points = class.first().map(Vec::len).unwrap_or(0);
        if points == 0 {
            return Err(Error::InvalidParameter("the class needs at least one nonempty table".into()));
        }
        if let Some(j) = class.iter().position(|f| f.len() != points) {
            return Err(Error::InvalidParameter(format!("table {j} has {} values, expected {points}", class[j].len())));
        }
        if class.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("class values must be finite".into()));
        }
        if family.dim() != 1 {
            return Err(Error::InvalidParameter("index laws must be scalar".into()));
        }
        for (i, m) in family.members().enumerate() {
            if let Some(&x) = m.values().iter().find(|&&x| x < 0.0 || x.fract() != 0.0 || x >= points as f64) {
                return Err(Error::InvalidParameter(format!("member {i} has atom {x}, not an index below {points}")));
            }
        }
        Ok(Self { class, family, symmetric })
    }

    /// `X_i` uniform on `{−1, 1}^d`, `A` the coordinate projections. With `symmetric`,
    /// `S = ‖Σ X_i‖_∞`.
    pub fn rademacher_projections(d: usize, n: usize, symmetric: bool) -> Result<Self> {
        if d == 0 || d > 20 {
            return Err(Error::InvalidParameter(format!("dimension {d} outside 1..=20")));
        }
        let points = 1usize << d;
        let class = (0..d)
            .map(|j| (0..points).map(|x| if x >> j & 1 == 1 { 1.0 } else { -1.0 }).collect())
            .collect();
        let idx: Vec<f64> = (0..points).map(|x| x as f64).collect();
        let law = FiniteDist::scalar(&idx, &vec![1.0 / points as f64; points])?;
        Self::new(class, Family::iid(law, n)?, symmetric)
    }

    pub fn points(&self) -> usize {
        self.class[0].len()
    }

    pub fn class(&self) -> &[Vec<f64>] {
        &self.class
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    /// `A`, or `A ∪ (−A)` for a symmetric spec.
    pub fn effective_class(&self) -> Vec<Vec<f64>> {
        let mut out = self.class.clone();
        if self.symmetric {
            out.extend(self.class.iter().map(|f| f.iter().map(|v| -v).collect::<Vec<f64>>()));
        }
        out
    }

    /// `F(x) = sup_{f∈A} |f(x)|`.
    pub fn envelope(&self) -> Vec<f64> {
        (0..self.points()).map(|x| self.class.iter().map(|f| f[x].abs()).fold(0.0, f64::max)).collect()
    }

    /// Law of `(g(X_i))_{g ∈ tables}` for member `i`.
    fn image(&self, member: &FiniteDist, tables: &[Vec<f64>]) -> FiniteDist {
        let values = (0..member.len())
            .flat_map(|i| {
                let x = member.atom(i)[0] as usize;
                tables.iter().map(move |g| g[x])
            })
            .collect();
        merge_sorted(tables.len(), values, member.ln_probs().to_vec(), NormTag::Sup)
    }

    fn envelope_family(&self) -> Result<Family> {
        let env = vec![self.envelope()];
        Family::independent(self.family.members().map(|m| self.image(m, &env).with_tag(NormTag::Abs)).collect())
    }

    /// Exact law of `sup_g Σ_i g(X_i)` (or of `sup_g |Σ_i g(X_i)|`), or `None` when the
    /// joint law does not fit the atom budget.
    fn exact_sup_law(&self, tables: &[Vec<f64>], absolute: bool) -> Result<Option<FiniteDist>> {
        if tables.len() > MAX_DIM {
            return Ok(None);
        }
        let images = Family::independent(self.family.members().map(|m| self.image(m, tables)).collect())?;
        let joint = match sum_distribution_general(&images, DEFAULT_ATOM_BUDGET) {
            Ok(j) => j,
            Err(Error::Resource(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let sup: Vec<f64> = (0..joint.len())
            .map(|i| {
                let a = joint.atom(i).iter();
                if absolute {
                    a.map(|v| v.abs()).fold(0.0, f64::max)
                } else {
                    a.copied().fold(f64::NEG_INFINITY, f64::max)
                }
            })
            .collect();
        Ok(Some(merge_sorted(1, sup, joint.ln_probs().to_vec(), NormTag::Abs)))
    }

    fn check_work(&self, n: usize) -> Result<()> {
        let work = self.effective_class().len() as f64 * self.family.len() as f64 * n as f64;
        if work > MC_WORK_BUDGET {
            return Err(Error::Resource(format!(
                "|A|·N·n = {work:.3e} exceeds {MC_WORK_BUDGET:.0e}; lower n or the class size"
            )));
        }
        if n < SECTIONS * 64 {
            return Err(Error::InvalidParameter(format!("need n ≥ {}, got {n}", SECTIONS * 64)));
        }
        Ok(())
    }
}

fn squared(tables: &[Vec<f64>]) -> Vec<Vec<f64>> {
    tables.iter().map(|f| f.iter().map(|v| v * v).collect()).collect()
}

/// Signed sample mean with a 16-section interval.
fn signed_mean(ys: &[f64]) -> NormEstimate {
    let len = ys.len() / SECTIONS;
    let value = ys.iter().sum::<f64>() / ys.len() as f64;
    let means: Vec<f64> = ys.chunks_exact(len).take(SECTIONS).map(|c| c.iter().sum::<f64>() / len as f64).collect();
    let (_, hw) = section_interval(&means);
    NormEstimate { value, method: Method::MonteCarlo, lo: value - hw, hi: value + hw, samples: ys.len() }
}

fn exact_mean(law: &FiniteDist) -> NormEstimate {
    NormEstimate::exact(law.mean()[0])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProcessStats {
    /// `‖max_i F(X_i)‖_Ψ`.
    pub u: NormEstimate,
    /// `E sup_f Σ_i f²(X_i)`.
    pub sigma2: NormEstimate,
    pub es: NormEstimate,
    /// `E max_i F(X_i)`.
    pub mean_max: NormEstimate,
    /// `‖max_i F(X_i)‖_Φ` with `Φ = Ψ(x²)`, when `Φ` validates.
    pub u_phi: Option<NormEstimate>,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailPoint {
    pub t: f64,
    /// Empirical `P(|S − ES| ≥ t)`.
    pub survival: f64,
    pub lo: f64,
    pub hi: f64,
    /// Exact value when the joint law fits the atom budget.
    pub exact: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCurve {
    pub bound: BoundId,
    pub c: f64,
    pub values: Vec<BoundValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailCurve {
    pub points: Vec<TailPoint>,
    pub bounds: Vec<BoundCurve>,
}

/// `sqrt(Σ²) · k/4` for `k = 1..=24`.
pub fn default_t_grid(stats: &ProcessStats) -> Vec<f64> {
    let s = stats.sigma2.value.sqrt();
    (1..=24).map(|k| s * k as f64 / 4.0).collect()
}

/// `2^j` for `j = −10..=4`.
pub fn default_c_grid() -> Vec<f64> {
    (-10..=4).map(|j| 2f64.powi(j)).collect()
}

/// Simulates `S` and computes `U`, `Σ²` and `ES` (exactly where the joint law fits the
/// atom budget). The survival curve is always empirical, with an exact column when
/// available; `ts` defaults to [`default_t_grid`].
pub fn empirical_process_tail(
    spec: &EmpiricalProcessSpec,
    psi: &OrliczFunction,
    ts: Option<&[f64]>,
    n: usize,
    seed: u64,
) -> Result<(ProcessStats, TailCurve)> {
    spec.check_work(n)?;
    let max_law = max_distribution(&spec.envelope_family()?, DEFAULT_ATOM_BUDGET)?;
    let u = norm_exact(&max_law, psi)?;
    let mean_max = NormEstimate::exact(l1_exact(&max_law));
    let u_phi = match convex_phi(psi) {
        Ok(phi) => Some(norm_exact(&max_law, &phi)?),
        Err(_) => None,
    };

    let exact = spec.exact_sup_law(spec.class(), spec.symmetric)?;
    let s = functional_samples(spec.family(), &Functional::SupOverClass(spec.effective_class()), n, seed);
    let es = exact.as_ref().map_or_else(|| signed_mean(&s), exact_mean);
    let sigma2 = match spec.exact_sup_law(&squared(spec.class()), false)? {
        Some(law) => exact_mean(&law),
        None => signed_mean(&functional_samples(
            spec.family(),
            &Functional::SupOverClass(squared(spec.class())),
            n,
            seed,
        )),
    };

    let stats = ProcessStats { u, sigma2, es, mean_max, u_phi, samples: n, seed };
    let ts = ts.map_or_else(|| default_t_grid(&stats), <[f64]>::to_vec);
    let es = &stats.es;
    let dev: Vec<f64> = s.iter().map(|x| (x - es.value).abs()).collect();
    let len = n / SECTIONS;
    let points = ts
        .iter()
        .map(|&t| {
            let frac = |c: &[f64]| c.iter().filter(|&&d| d >= t).count() as f64 / c.len() as f64;
            let survival = frac(&dev);
            let sections: Vec<f64> = dev.chunks_exact(len).take(SECTIONS).map(frac).collect();
            let (_, hw) = section_interval(&sections);
            let exact = exact.as_ref().map(|law| {
                (0..law.len()).filter(|&i| (law.atom(i)[0] - es.value).abs() >= t).fold(0.0, |a, i| a + law.prob(i))
            });
            TailPoint { t, survival, lo: (survival - hw).max(0.0), hi: (survival + hw).min(1.0), exact }
        })
        .collect();
    Ok((stats, TailCurve { points, bounds: Vec::new() }))
}

fn bound_values(
    bound: BoundId,
    ts: &[f64],
    stats: &ProcessStats,
    psi: &OrliczFunction,
    c: f64,
) -> Result<Vec<BoundValue>> {
    let (u, s2) = (stats.u.value, stats.sigma2.value);
    match bound {
        BoundId::Convex => {
            let phi = convex_phi(psi)?;
            let u_phi = stats.u_phi.as_ref().ok_or_else(|| Error::Domain("‖max F‖_Φ unavailable".into()))?;
            ts.iter().map(|&t| convex_rhs(t, stats.mean_max.value, u_phi.value, c, &phi)).collect()
        }
        BoundId::Bennett => ts.iter().map(|&t| bennett_rhs(t, u, s2, c, psi, true)).collect(),
        BoundId::Talagrand => ts.iter().map(|&t| bennett_rhs(t, u, s2, c, psi, false)).collect(),
        BoundId::Bernstein => ts.iter().map(|&t| bernstein_rhs(t, u, s2, c, psi)).collect(),
        BoundId::BernsteinEquivalent => ts.iter().map(|&t| bernstein_equivalent_rhs(t, u, s2, c, psi)).collect(),
    }
}

/// Evaluates `bound` at constant `c` on the curve's grid and stores it.
pub fn attach_bound(
    curve: &mut TailCurve,
    bound: BoundId,
    stats: &ProcessStats,
    psi: &OrliczFunction,
    c: f64,
) -> Result<()> {
    let ts: Vec<f64> = curve.points.iter().map(|p| p.t).collect();
    let values = bound_values(bound, &ts, stats, psi, c)?;
    curve.bounds.push(BoundCurve { bound, c, values });
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub bound: BoundId,
    /// Largest `c` on the grid whose bound dominates the upper interval end at every `t`.
    pub c: Option<f64>,
    /// `(c, feasible)` in increasing `c`.
    pub feasible: Vec<(f64, bool)>,
    /// Feasibility holds on an initial segment of the grid.
    pub monotone: bool,
}

/// Every bound decreases in `c`, so the feasible set is an initial segment of the grid;
/// the reported constant is its largest element.
pub fn calibrate_c(
    curve: &TailCurve,
    bound: BoundId,
    stats: &ProcessStats,
    psi: &OrliczFunction,
    c_grid: &[f64],
) -> Result<Calibration> {
    if c_grid.is_empty() {
        return Err(Error::InvalidParameter("empty c grid".into()));
    }
    let mut grid = c_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let ts: Vec<f64> = curve.points.iter().map(|p| p.t).collect();
    let feasible = grid
        .iter()
        .map(|&c| {
            let v = bound_values(bound, &ts, stats, psi, c)?;
            Ok((c, v.iter().zip(&curve.points).all(|(b, p)| b.raw >= p.hi)))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = feasible.iter().rev().find(|f| f.1).map(|f| f.0);
    let monotone = feasible.windows(2).all(|w| w[0].1 || !w[1].1);
    Ok(Calibration { bound, c, feasible, monotone })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakVarianceReport {
    /// `sup_f Σ_i E f(X_i)²`.
    pub term1: f64,
    /// `32 sqrt(E max_i F(X_i)²) · E sup_f |Σ_i f(X_i)|`.
    pub term2: f64,
    /// `8 E max_i F(X_i)²`.
    pub term3: f64,
    pub sigma2: NormEstimate,
    pub mean_sup_abs: NormEstimate,
    /// `Σ² ≤ term1 + term2 + term3`.
    pub holds: bool,
}

/// The three terms bounding the strong variance by the weak one, for a centered class.
pub fn weak_variance_terms(spec: &EmpiricalProcessSpec, n: usize, seed: u64) -> Result<WeakVarianceReport> {
    spec.check_work(n)?;
    for (i, m) in spec.family().members().enumerate() {
        for (j, f) in spec.class().iter().enumerate() {
            let scale = f.iter().fold(1.0f64, |a, v| a.max(v.abs()));
            let mean: f64 = (0..m.len()).map(|k| m.prob(k) * f[m.atom(k)[0] as usize]).sum();
            if mean.abs() > 1e-12 * scale {
                return Err(Error::Domain(format!("E f_{j}(X_{i}) = {mean:e}; the class must be centered")));
            }
        }
    }
    let mut term1 = 0.0f64;
    for f in spec.class() {
        let s: f64 = spec
            .family()
            .members()
            .map(|m| (0..m.len()).map(|k| m.prob(k) * f[m.atom(k)[0] as usize].powi(2)).sum::<f64>())
            .sum();
        term1 = term1.max(s);
    }
    let max_law = max_distribution(&spec.envelope_family()?, DEFAULT_ATOM_BUDGET)?;
    let e_max_sq: f64 = (0..max_law.len()).map(|i| max_law.prob(i) * max_law.atom(i)[0].powi(2)).sum();

    let sq = squared(spec.class());
    let sigma2 = match spec.exact_sup_law(&sq, false)? {
        Some(law) => exact_mean(&law),
        None => signed_mean(&functional_samples(spec.family(), &Functional::SupOverClass(sq), n, seed)),
    };
    let mean_sup_abs = match spec.exact_sup_law(spec.class(), true)? {
        Some(law) => exact_mean(&law),
        None => {
            let both = EmpiricalProcessSpec { symmetric: true, ..spec.clone() }.effective_class();
            signed_mean(&functional_samples(spec.family(), &Functional::SupOverClass(both), n, seed))
        }
    };
    let term2 = 32.0 * e_max_sq.sqrt() * mean_sup_abs.value;
    let term3 = 8.0 * e_max_sq;
    let holds = sigma2.value <= term1 + term2 + term3;
    Ok(WeakVarianceReport { term1, term2, term3, sigma2, mean_sup_abs, holds })
}
