//! Log-domain arithmetic and monotone bracketing.

use std::f64::consts::LN_2;

/// `ln(e^a + e^b)` without overflow.
#[inline]
pub fn ln_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ e^{x_i}`; the empty sum is `-inf`.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    log_sum_exp_slice(&xs)
}

pub fn log_sum_exp_slice(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let sum: f64 = xs.iter().map(|&x| (x - max).exp()).sum();
    max + sum.ln()
}

/// `ln(1 - e^x)` for `x <= 0`.
#[inline]
pub fn log1m_exp(x: f64) -> f64 {
    if x > 0.0 {
        return f64::NAN;
    }
    if x > -LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `ln(e^a - e^b)` for `a >= b`.
#[inline]
pub fn ln_sub_exp(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    a + log1m_exp(b - a)
}

/// `ln(e^z - 1)` for `z >= 0`.
#[inline]
pub fn ln_expm1(z: f64) -> f64 {
    if z <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if z > 40.0 {
        z + (-(-z).exp()).ln_1p()
    } else {
        z.exp_m1().ln()
    }
}

/// `ln(1 + e^l)`.
#[inline]
pub fn softplus(l: f64) -> f64 {
    if l > 35.0 {
        l + (-l).exp()
    } else {
        l.exp().ln_1p()
    }
}

/// Table of `ln k!` for `k = 0..=n`.
#[derive(Debug, Clone)]
pub struct LnFactorial {
    table: Vec<f64>,
}

impl LnFactorial {
    pub fn new(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(0.0);
        let mut acc = 0.0;
        for k in 1..=n {
            acc += (k as f64).ln();
            table.push(acc);
        }
        Self { table }
    }

    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        self.table[k]
    }

    #[inline]
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        self.table[n] - self.table[k] - self.table[n - k]
    }
}

/// Final bracket of a monotone predicate search: `pred(lo)` is false, `pred(hi)` true.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn rel_width(&self) -> f64 {
        (self.hi - self.lo) / self.hi.abs().max(f64::MIN_POSITIVE)
    }
}

pub const BISECTION_REL_TOL: f64 = 1e-10;
pub const BISECTION_MAX_ITER: usize = 200;

/// Bisects a monotone predicate on `[lo, hi]` until the relative width drops to `rel_tol`.
///
/// Uses the geometric midpoint while the bracket spans more than a factor of four, so
/// brackets like `[1e-300, 1e300]` close in a few hundred steps.
pub fn bisect_boundary<F: FnMut(f64) -> bool>(
    mut pred: F,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Bracket {
    for _ in 0..max_iter {
        if hi - lo <= rel_tol * hi.abs() {
            break;
        }
        let mid = if lo > 0.0 && hi / lo > 4.0 {
            (lo.ln() * 0.5 + hi.ln() * 0.5).exp()
        } else {
            0.5 * (lo + hi)
        };
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Bracket { lo, hi }
}

/// Doubles `start` until `pred` holds. Returns the bracket `(last failing, first passing)`,
/// or `None` once `cap` is exceeded.
pub fn bracket_upward<F: FnMut(f64) -> bool>(mut pred: F, start: f64, cap: f64) -> Option<Bracket> {
    let mut lo = start;
    let mut hi = start * 2.0;
    loop {
        if !hi.is_finite() || hi > cap {
            return None;
        }
        if pred(hi) {
            return Some(Bracket { lo, hi });
        }
        lo = hi;
        hi *= 2.0;
    }
}

/// Evenly spaced points on a log scale, endpoints included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Two-sided 97.5% Student-t quantile with 15 degrees of freedom (16 sections).
pub const T_975_DF15: f64 = 2.131_449_545_559_323;

/// Mean, and half-width of the 95% t-interval, of per-section estimates (16 sections).
pub fn section_interval(sections: &[f64]) -> (f64, f64) {
    let k = sections.len() as f64;
    let mean = sections.iter().sum::<f64>() / k;
    let var = sections.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, T_975_DF15 * (var / k).sqrt())
}
