//! `P(‖Σ ε_i X_i‖ ≥ q²M + u + u′) ≤ exp(−u²/(16q³M²)) + 4/q^{k+1} + P(Σ_{r≤k} Y_r ≥ u′)`.

use crate::dist::{sample_rows, sum_distribution_general, Family, DEFAULT_ATOM_BUDGET};
use crate::error::{Error, Result};
use crate::norm::{l1_exact, Method};
use serde::{Deserialize, Serialize};

/// Largest family enumerated exactly.
pub const EXACT_MAX_MEMBERS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrucialLemmaParams {
    pub q: u32,
    pub k: usize,
    pub u: f64,
    pub u_prime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrucialOutcome {
    pub params: CrucialLemmaParams,
    /// `M = E‖Σ ε_i X_i‖`.
    pub m: f64,
    pub lhs: f64,
    pub lhs_se: f64,
    /// `P(Σ_{r≤k} Y_r ≥ u′)`.
    pub order_tail: f64,
    pub order_se: f64,
    pub rhs: f64,
    /// `(rhs − lhs)/se`, infinite on the exact path.
    pub margin_se: f64,
    pub method: Method,
    /// `lhs ≤ rhs + 3 se`.
    pub passed: bool,
}

fn top_k_sum(norms: &mut [f64], k: usize) -> f64 {
    let k = k.min(norms.len());
    if k < norms.len() {
        norms.select_nth_unstable_by(k, |a, b| b.total_cmp(a));
    }
    norms[..k].iter().sum()
}

/// Exact `P(Σ_{r≤k} Y_r ≥ u′)` by enumerating the joint law of `(‖X_i‖)_i`.
fn exact_order_tail(family: &Family, k: usize, u_prime: f64) -> f64 {
    let laws: Vec<_> = family.members().map(|m| m.norm_dist()).collect();
    let mut idx = vec![0usize; laws.len()];
    let mut norms = vec![0.0; laws.len()];
    let mut total = 0.0;
    loop {
        let mut ln_p = 0.0;
        for (j, (law, &i)) in laws.iter().zip(&idx).enumerate() {
            norms[j] = law.atom(i)[0];
            ln_p += law.ln_prob(i);
        }
        if top_k_sum(&mut norms, k) >= u_prime {
            total += ln_p.exp();
        }
        let mut j = 0;
        loop {
            if j == laws.len() {
                return total.min(1.0);
            }
            idx[j] += 1;
            if idx[j] < laws[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

fn rhs_value(p: &CrucialLemmaParams, m: f64, order_tail: f64) -> f64 {
    let q = f64::from(p.q);
    let gauss = if m > 0.0 { (-(p.u * p.u) / (16.0 * q.powi(3) * m * m)).exp() } else { 0.0 };
    gauss + 4.0 / q.powi(p.k as i32 + 1) + order_tail
}

/// Exact for scalar families with at most [`EXACT_MAX_MEMBERS`] members whose joint norm
/// law fits the atom budget; Monte Carlo with `n` rows otherwise, passing when
/// `lhs ≤ rhs + 3 se`.
pub fn crucial_lemma_check(
    family: &Family,
    params: CrucialLemmaParams,
    n: usize,
    seed: u64,
) -> Result<CrucialOutcome> {
    if params.q < 2 || params.k == 0 || !(params.u > 0.0) || !(params.u_prime > 0.0) {
        return Err(Error::InvalidParameter(format!("need q ≥ 2, k ≥ 1, u, u′ > 0; got {params:?}")));
    }
    let q2 = f64::from(params.q).powi(2);
    let sym = family.symmetrized();
    let exact = family.dim() == 1
        && family.len() <= EXACT_MAX_MEMBERS
        && family.members().map(|m| m.norm_dist().len()).product::<usize>() <= DEFAULT_ATOM_BUDGET;
    if exact {
        let sum = sum_distribution_general(&sym, DEFAULT_ATOM_BUDGET)?;
        let m = l1_exact(&sum);
        let lhs = sum.tail(q2 * m + params.u + params.u_prime);
        let order_tail = exact_order_tail(family, params.k, params.u_prime);
        let rhs = rhs_value(&params, m, order_tail);
        return Ok(CrucialOutcome {
            params,
            m,
            lhs,
            lhs_se: 0.0,
            order_tail,
            order_se: 0.0,
            rhs,
            margin_se: if lhs <= rhs { f64::INFINITY } else { f64::NEG_INFINITY },
            method: Method::Exact,
            passed: lhs <= rhs,
        });
    }
    if n < 1000 {
        return Err(Error::InvalidParameter(format!("Monte Carlo check needs n ≥ 1000, got {n}")));
    }
    let dim = family.dim();
    let tag = family.tag();
    let norms = sample_rows(&sym, n, seed, |row| {
        let mut s = [0.0f64; crate::dist::MAX_DIM];
        for x in row.chunks(dim) {
            for (a, v) in s.iter_mut().zip(x) {
                *a += v;
            }
        }
        tag.apply(&s[..dim])
    });
    let k = params.k;
    let tops = sample_rows(&sym, n, seed, |row| {
        let mut ns: Vec<f64> = row.chunks(dim).map(|x| tag.apply(x)).collect();
        top_k_sum(&mut ns, k)
    });
    let nf = n as f64;
    let m = norms.iter().sum::<f64>() / nf;
    let thr = q2 * m + params.u + params.u_prime;
    let lhs = norms.iter().filter(|&&y| y >= thr).count() as f64 / nf;
    let order_tail = tops.iter().filter(|&&y| y >= params.u_prime).count() as f64 / nf;
    let lhs_se = (lhs * (1.0 - lhs) / nf).sqrt();
    let order_se = (order_tail * (1.0 - order_tail) / nf).sqrt();
    let rhs = rhs_value(&params, m, order_tail);
    let se = lhs_se.hypot(order_se);
    let margin_se = if se > 0.0 {
        (rhs - lhs) / se
    } else if lhs <= rhs {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    };
    Ok(CrucialOutcome {
        params,
        m,
        lhs,
        lhs_se,
        order_tail,
        order_se,
        rhs,
        margin_se,
        method: Method::MonteCarlo,
        passed: lhs <= rhs + 3.0 * se,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{make_three_point, FiniteDist};
    use crate::orlicz::OrliczFunction;

    fn params(q: u32, k: usize, u: f64) -> CrucialLemmaParams {
        CrucialLemmaParams { q, k, u, u_prime: u }
    }

    #[test]
    fn rademacher_exact_against_enumeration() {
        let fam = Family::iid(FiniteDist::rademacher(), 8).unwrap();
        let out = crucial_lemma_check(&fam, params(2, 3, 1.0), 0, 0).unwrap();
        // E|Σ_{i≤8} ε_i| = Σ_j |2j − 8| C(8, j)/256.
        let binom = [1., 8., 28., 56., 70., 56., 28., 8., 1.];
        let m: f64 = (0..=8).map(|j| (2.0 * j as f64 - 8.0).abs() * binom[j] / 256.0).sum();
        assert!((out.m - m).abs() < 1e-12);
        let thr = 4.0 * m + 2.0;
        let lhs: f64 = (0..=8).filter(|&j| (2.0 * j as f64 - 8.0).abs() >= thr).map(|j| binom[j] / 256.0).sum();
        assert!((out.lhs - lhs).abs() < 1e-12);
        // Every |ε_i| is one, so the top three always sum to 3 ≥ u′.
        assert_eq!(out.order_tail, 1.0);
        assert_eq!(out.method, Method::Exact);
        assert!(out.passed);
    }

    #[test]
    fn large_u_has_vanishing_lhs() {
        let fam = Family::iid(FiniteDist::scalar(&[-1.0, 0.5, 2.0], &[0.3, 0.5, 0.2]).unwrap(), 6).unwrap();
        let out = crucial_lemma_check(&fam, params(2, 1, 1e3), 0, 0).unwrap();
        assert_eq!(out.lhs, 0.0);
        assert!(out.passed);
    }

    #[test]
    fn three_point_mc_passes() {
        let psi = OrliczFunction::psi1();
        let fam = Family::iid(make_three_point(&psi, 3.0, 32).unwrap(), 32).unwrap();
        let out = crucial_lemma_check(&fam, params(3, 4, 1.0), 100_000, 9).unwrap();
        assert_eq!(out.method, Method::MonteCarlo);
        assert!(out.passed, "{out:?}");
        assert_eq!(out, crucial_lemma_check(&fam, params(3, 4, 1.0), 100_000, 9).unwrap());
    }

    #[test]
    fn order_tail_by_brute_force() {
        let d = FiniteDist::scalar(&[0.0, 1.0, 3.0], &[0.5, 0.3, 0.2]).unwrap();
        let fam = Family::iid(d.clone(), 3).unwrap();
        let mut want = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let mut v = [d.atom(a)[0], d.atom(b)[0], d.atom(c)[0]];
                    v.sort_by(|x, y| y.total_cmp(x));
                    if v[0] + v[1] >= 4.0 {
                        want += d.prob(a) * d.prob(b) * d.prob(c);
                    }
                }
            }
        }
        assert!((exact_order_tail(&fam, 2, 4.0) - want).abs() < 1e-12);
    }
}
