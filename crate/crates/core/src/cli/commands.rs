//! One function per subcommand, each producing report tables.

use super::config::{Command, FunctionalChoice, MethodChoice, ProcessSection, RunConfig};
use super::report::Table;
use super::Outcome;
use crate::concentration::{
    attach_bound, bennett_bernstein_equivalence, calibrate_c, crucial_lemma_check, empirical_process_tail,
    poisson_check, poisson_discrepancy, CrucialLemmaParams, EmpiricalProcessSpec,
};
use crate::dist::{
    make_three_point, max_distribution, sum_distribution_general, Family, FiniteDist, DEFAULT_ATOM_BUDGET,
};
use crate::error::{Error, Result};
use crate::lab::{
    lemma_case, lemma_suite, ratio_sweep, schedule_ratios, series_experiment, series_spec_from_counterexample,
    Lemma, Mode, SeriesReport,
};
use crate::norm::{l1_exact, l1_mc, norm_exact, norm_mc, Functional, Method};
use crate::orlicz::{build_counterexample, check_hj, check_hj_along, HjVerdict, OrliczFunction};
use crate::row;

pub(super) fn dispatch(command: Command, c: &RunConfig) -> Result<Outcome> {
    match command {
        Command::Norm => norm(c),
        Command::CheckHj => check(c),
        Command::Counterexample => counterexample(c),
        Command::RatioSweep => sweep(c),
        Command::Series => series(c),
        Command::Tails => tails(c),
        Command::Calibrate => calibrate(c),
        Command::VerifyLemmas => lemmas(c),
        Command::CrucialCheck => crucial(c),
        Command::PoissonCheck => poisson(c),
    }
}

fn passed(tables: Vec<Table>) -> Result<Outcome> {
    Ok(Outcome { tables, verification_failed: false })
}

fn seed_for(c: &RunConfig, what: &str) -> Result<u64> {
    c.seed.ok_or_else(|| Error::Config(format!("{what} uses Monte Carlo and needs a seed (`seed` or --seed)")))
}

fn verdict(v: HjVerdict) -> &'static str {
    match v {
        HjVerdict::BoundedOnGrid => "bounded-on-grid",
        HjVerdict::Diverging => "diverging",
    }
}

fn positive_grid(name: &str, g: &[f64]) -> Result<()> {
    if g.is_empty() || g.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
        return Err(Error::Config(format!("`{name}` must be a nonempty list of positive numbers")));
    }
    if g.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!("`{name}` must be strictly increasing")));
    }
    Ok(())
}

fn norm(c: &RunConfig) -> Result<Outcome> {
    let s = &c.norm;
    let family = match &s.members {
        Some(m) => Family::independent(m.clone())?,
        None => Family::iid(s.dist.clone(), s.count)?,
    };
    let (name, functional) = match s.functional {
        FunctionalChoice::Sum => ("sum", Functional::SumNorm),
        FunctionalChoice::Max => ("max", Functional::MaxNorm),
    };
    let (est, l1) = match s.method {
        MethodChoice::Exact => {
            let law = match s.functional {
                FunctionalChoice::Sum => sum_distribution_general(&family, DEFAULT_ATOM_BUDGET)?,
                FunctionalChoice::Max => max_distribution(&family, DEFAULT_ATOM_BUDGET)?,
            };
            (norm_exact(&law, &c.psi)?, l1_exact(&law))
        }
        MethodChoice::MonteCarlo => {
            let seed = seed_for(c, "norm")?;
            let e = norm_mc(&family, &functional, &c.psi, s.samples, seed)?;
            (e, l1_mc(&family, &functional, s.samples, seed)?.value)
        }
    };
    let mut t = Table::new("norm", "norm", c.seed, &["functional", "members", "value", "lo", "hi", "samples", "l1"]);
    t.push(&c.psi.spec_hash(), est.method.as_str(), row![name, family.len(), est.value, est.lo, est.hi, est.samples, l1]);
    passed(vec![t])
}

fn check(c: &RunConfig) -> Result<Outcome> {
    let s = &c.check_hj;
    let report = match &s.path {
        Some(p) if p.is_empty() => return Err(Error::Config("`check_hj.path` is empty".into())),
        Some(p) => check_hj_along(&c.psi, &p.iter().map(|x| (x[0], x[1])).collect::<Vec<_>>()),
        None => {
            positive_grid("check_hj.s_grid", &s.s_grid)?;
            positive_grid("check_hj.u_grid", &s.u_grid)?;
            check_hj(&c.psi, &s.s_grid, &s.u_grid)
        }
    };
    let h = c.psi.spec_hash();
    let sc = &report.sub_checks;
    let mut summary = Table::new(
        "check_hj",
        "check-hj",
        c.seed,
        &[
            "verdict",
            "grid_k",
            "trend",
            "hj_prime_max",
            "hj_prime_consistent",
            "inverse_bound_max",
            "delta2_bounded",
            "poly_k",
            "poly_p",
            "poly_slope_growing",
        ],
    );
    summary.push(
        &h,
        "exact",
        row![
            verdict(report.verdict),
            report.grid_k,
            report.trend,
            sc.hj_prime_max,
            sc.hj_prime_consistent,
            sc.inverse_bound_max,
            sc.delta2_bounded,
            sc.poly_envelope.0,
            sc.poly_envelope.1,
            sc.poly_slope_growing,
        ],
    );
    let mut grid = Table::new("check_hj_grid", "check-hj", c.seed, &["s", "u", "ratio", "hj_prime", "inverse_bound"]);
    for p in &report.grid {
        grid.push(&h, "exact", row![p.s, p.u, p.ratio, p.hj_prime, p.inverse_bound]);
    }
    passed(vec![summary, grid])
}

fn counterexample(c: &RunConfig) -> Result<Outcome> {
    let phi = c.counterexample.phi.as_ref().unwrap_or(&c.psi);
    let cx = build_counterexample(phi, c.counterexample.n_max)?;
    let h = cx.psi.spec_hash();
    let path: Vec<(f64, f64)> = cx.schedule().into_iter().map(|(k, u)| (k as f64, u)).collect();
    let along = check_hj_along(&cx.psi, &path);
    let mut summary = Table::new(
        "counterexample",
        "counterexample",
        c.seed,
        &[
            "phi_hash",
            "requested_depth",
            "depth",
            "margins_positive",
            "dominated",
            "audit_excess",
            "audit_points",
            "hj_verdict_along_schedule",
            "truncated",
        ],
    );
    summary.push(
        &h,
        "exact",
        row![
            phi.spec_hash(),
            cx.requested_depth,
            cx.depth,
            cx.margins_positive(),
            cx.dominated(),
            cx.audit_excess,
            cx.audit_points,
            verdict(along.verdict),
            cx.truncated.clone(),
        ],
    );
    let mut sched = Table::new(
        "counterexample_schedule",
        "counterexample",
        c.seed,
        &["k", "u_k", "ln_psi_u_k", "hj_ratio", "spacing", "growth", "slope", "tangent"],
    );
    for ((k, u), p) in cx.schedule().into_iter().zip(&along.grid) {
        let m = cx.margins.iter().find(|m| m.k == k);
        sched.push(
            &h,
            "exact",
            row![
                k,
                u,
                cx.psi.ln_psi(u),
                p.ratio,
                m.and_then(|m| m.spacing),
                m.map(|m| m.growth),
                m.map(|m| m.slope),
                m.map(|m| m.tangent),
            ],
        );
    }
    let mut knots = Table::new("counterexample_knots", "counterexample", c.seed, &["x", "ln_value", "ln_slope"]);
    for k in cx.psi.knots() {
        knots.push(&h, "exact", row![k.x, k.ln_value, k.ln_slope]);
    }
    passed(vec![summary, sched, knots])
}

fn sweep(c: &RunConfig) -> Result<Outcome> {
    let s = &c.ratio_sweep;
    positive_grid("ratio_sweep.u_grid", &s.u_grid)?;
    if s.n_grid.is_empty() || s.n_grid.contains(&0) {
        return Err(Error::Config("`ratio_sweep.n_grid` must list positive sizes".into()));
    }
    let mode = match s.method {
        MethodChoice::Exact => Mode::Exact,
        MethodChoice::MonteCarlo => Mode::MonteCarlo { samples: s.samples, seed: seed_for(c, "ratio-sweep")? },
    };
    let report = ratio_sweep(&c.psi, &s.u_grid, &s.n_grid, mode)?;
    let cols = ["u", "n", "sum_norm", "sum_lo", "sum_hi", "l1", "max_norm", "ratio", "a_low", "certified_ratio"];
    let mut t = Table::new("ratio_sweep", "ratio-sweep", c.seed, &cols);
    for r in &report.records {
        t.push(
            &r.psi_hash,
            r.sum_norm.method.as_str(),
            row![r.u, r.n, r.sum_norm.value, r.sum_norm.lo, r.sum_norm.hi, r.l1.value, r.max_norm.value, r.ratio, r.a_low, r.certified_ratio],
        );
    }
    let method = match mode {
        Mode::Exact => Method::Exact,
        Mode::MonteCarlo { .. } => Method::MonteCarlo,
    };
    let mut summary = Table::new("ratio_sweep_summary", "ratio-sweep", c.seed, &["empirical_d", "cells", "skipped"]);
    summary.push(&report.psi_hash, method.as_str(), row![report.empirical_d, report.records.len(), report.skipped.len()]);
    let mut tables = vec![t, summary];
    if let Some(depth) = s.schedule_depth {
        let cx = build_counterexample(&c.psi, depth)?;
        let mut sched = Table::new(
            "ratio_schedule",
            "ratio-sweep",
            c.seed,
            &["k", "u", "n", "ratio", "a_low", "certified_ratio", "step_factor"],
        );
        let mut prev: Option<f64> = None;
        for r in schedule_ratios(&cx)? {
            let cr = r.record.certified_ratio;
            let step = prev.zip(cr).map(|(p, x)| x / p);
            sched.push(&r.record.psi_hash, "exact", row![r.k, r.u, r.n, r.record.ratio, r.record.a_low, cr, step]);
            prev = cr;
        }
        tables.push(sched);
    }
    passed(tables)
}

fn series_table(name: &str, seed: Option<u64>, r: &SeriesReport) -> Table {
    let cols = [
        "k",
        "u",
        "n",
        "m_next",
        "a_low",
        "block_norm_lo",
        "block_norm_hi",
        "lower_bound",
        "sum_upper",
        "block_max_norm",
        "sup_upper",
    ];
    let mut t = Table::new(name, "series", seed, &cols);
    for x in &r.records {
        t.push(
            &r.psi_hash,
            "exact",
            row![x.k, x.u, x.n, x.m_next, x.a_low, x.block_norm_lo, x.block_norm_hi, x.lower_bound, x.sum_upper, x.block_max_norm, x.sup_upper],
        );
    }
    t
}

fn series(c: &RunConfig) -> Result<Outcome> {
    let s = &c.series;
    let cx = build_counterexample(&c.psi, s.depth)?;
    let spec = series_spec_from_counterexample(&cx, s.k_max)?;
    let report = series_experiment(&cx.psi, &spec)?;
    let mut tables = vec![series_table("series", c.seed, &report)];
    let psi1 = if s.compare_psi1 { Some(series_experiment(&OrliczFunction::psi1(), &spec)?) } else { None };
    let mut summary = Table::new(
        "series_summary",
        "series",
        c.seed,
        &[
            "lower_bounds_reach_k",
            "lower_bounds_nondecreasing",
            "sup_upper",
            "sup_below_zeta2",
            "psi1_max_sum_upper",
            "truncated",
        ],
    );
    summary.push(
        &report.psi_hash,
        "exact",
        row![
            report.lower_bounds_reach_k,
            report.lower_bounds_nondecreasing,
            report.sup_upper(),
            report.sup_below_zeta2,
            psi1.as_ref().map(SeriesReport::max_sum_upper),
            report.truncated.clone(),
        ],
    );
    tables.push(summary);
    if let Some(p) = &psi1 {
        tables.push(series_table("series_psi1", c.seed, p));
    }
    passed(tables)
}

fn process_spec(p: &ProcessSection) -> Result<EmpiricalProcessSpec> {
    match (&p.class, &p.index_dist) {
        (Some(class), Some(law)) => EmpiricalProcessSpec::new(class.clone(), Family::iid(law.clone(), p.n)?, p.symmetric),
        (None, None) => EmpiricalProcessSpec::rademacher_projections(p.d, p.n, p.symmetric),
        _ => Err(Error::Config("`process.class` and `process.index_dist` go together".into())),
    }
}

fn tails(c: &RunConfig) -> Result<Outcome> {
    let seed = seed_for(c, "tails")?;
    let spec = process_spec(&c.process)?;
    let s = &c.tails;
    let (stats, mut curve) = empirical_process_tail(&spec, &c.psi, s.t_grid.as_deref(), s.samples, seed)?;
    for &b in &s.bounds {
        attach_bound(&mut curve, b, &stats, &c.psi, s.c)?;
    }
    let h = c.psi.spec_hash();
    let mut st = Table::new(
        "tails_stats",
        "tails",
        Some(seed),
        &["u", "sigma2", "sigma2_method", "es", "es_lo", "es_hi", "mean_max", "u_phi", "samples"],
    );
    st.push(
        &h,
        stats.es.method.as_str(),
        row![
            stats.u.value,
            stats.sigma2.value,
            stats.sigma2.method.as_str(),
            stats.es.value,
            stats.es.lo,
            stats.es.hi,
            stats.mean_max.value,
            stats.u_phi.as_ref().map(|e| e.value),
            stats.samples,
        ],
    );
    let mut cv = Table::new("tails_curve", "tails", Some(seed), &["t", "survival", "lo", "hi", "exact"]);
    for p in &curve.points {
        cv.push(&h, "monte-carlo", row![p.t, p.survival, p.lo, p.hi, p.exact]);
    }
    let mut bd = Table::new("tails_bounds", "tails", Some(seed), &["bound", "c", "t", "raw", "capped"]);
    for b in &curve.bounds {
        for (p, v) in curve.points.iter().zip(&b.values) {
            bd.push(&h, "exact", row![b.bound.as_str(), b.c, p.t, v.raw, v.capped]);
        }
    }
    passed(vec![st, cv, bd])
}

fn calibrate(c: &RunConfig) -> Result<Outcome> {
    let seed = seed_for(c, "calibrate")?;
    let spec = process_spec(&c.process)?;
    let (stats, curve) = empirical_process_tail(&spec, &c.psi, c.tails.t_grid.as_deref(), c.tails.samples, seed)?;
    let h = c.psi.spec_hash();
    let s = &c.calibrate;
    let mut t = Table::new("calibrate", "calibrate", Some(seed), &["bound", "c", "feasible_count", "grid_size", "monotone"]);
    for &b in &s.bounds {
        let cal = calibrate_c(&curve, b, &stats, &c.psi, &s.c_grid)?;
        let n_ok = cal.feasible.iter().filter(|f| f.1).count();
        t.push(&h, "monte-carlo", row![b.as_str(), cal.c, n_ok, cal.feasible.len(), cal.monotone]);
    }
    let ts: Vec<f64> = curve.points.iter().map(|p| p.t).collect();
    let mut eq = Table::new(
        "calibrate_equivalence",
        "calibrate",
        Some(seed),
        &["c", "applicable", "growth_c", "kappa", "max_ratio", "min_ratio", "note"],
    );
    match bennett_bernstein_equivalence(&c.psi, &ts, stats.u.value, stats.sigma2.value, s.equivalence_c) {
        Ok(r) => eq.push(&h, "exact", row![s.equivalence_c, true, r.growth_c, r.kappa, r.max_ratio, r.min_ratio, None::<String>]),
        Err(Error::Domain(why)) => {
            eq.push(&h, "exact", row![s.equivalence_c, false, None::<f64>, None::<f64>, None::<f64>, None::<f64>, why])
        }
        Err(e) => return Err(e),
    }
    passed(vec![t, eq])
}

fn lemmas(c: &RunConfig) -> Result<Outcome> {
    let seed = seed_for(c, "verify-lemmas")?;
    let report = lemma_suite(seed, c.verify_lemmas.cases)?;
    let mut summary =
        Table::new("lemmas", "verify-lemmas", Some(seed), &["lemma", "cases", "comparisons", "violations"]);
    for lemma in Lemma::ALL {
        let v = report.violations.iter().filter(|v| v.lemma == lemma).count();
        let n = report.comparisons.get(&lemma).copied().unwrap_or(0);
        summary.push("pool", "exact", row![lemma.id(), report.cases, n, v]);
    }
    let mut viol =
        Table::new("lemma_violations", "verify-lemmas", Some(seed), &["case", "lemma", "lhs", "rhs", "detail"]);
    for v in &report.violations {
        let h = lemma_case(seed, v.case).psi.spec_hash();
        viol.push(&h, "exact", row![v.case, v.lemma.id(), v.lhs, v.rhs, v.detail.clone()]);
    }
    Ok(Outcome { tables: vec![summary, viol], verification_failed: !report.passed() })
}

fn crucial(c: &RunConfig) -> Result<Outcome> {
    let seed = seed_for(c, "crucial-check")?;
    let s = &c.crucial_check;
    let law = match (s.three_point_u, &s.dist) {
        (Some(u), None) => make_three_point(&c.psi, u, s.count)?,
        (None, Some(d)) => d.clone(),
        (None, None) => FiniteDist::rademacher(),
        (Some(_), Some(_)) => return Err(Error::Config("set either `three_point_u` or `dist`, not both".into())),
    };
    let family = Family::iid(law, s.count)?;
    let cols = [
        "q", "k", "u", "u_prime", "m", "lhs", "lhs_se", "order_tail", "order_se", "rhs", "margin_se", "passed",
    ];
    let mut t = Table::new("crucial", "crucial-check", Some(seed), &cols);
    let h = c.psi.spec_hash();
    let mut failed = false;
    for &q in &s.q_grid {
        for &k in &s.k_grid {
            for &u in &s.u_grid {
                let o = crucial_lemma_check(&family, CrucialLemmaParams { q, k, u, u_prime: u }, s.samples, seed)?;
                failed |= !o.passed;
                t.push(
                    &h,
                    o.method.as_str(),
                    row![q, k, u, u, o.m, o.lhs, o.lhs_se, o.order_tail, o.order_se, o.rhs, o.margin_se, o.passed],
                );
            }
        }
    }
    Ok(Outcome { tables: vec![t], verification_failed: failed })
}

fn poisson(c: &RunConfig) -> Result<Outcome> {
    let s = &c.poisson_check;
    let u_grid = match &s.u_grid {
        Some(g) => g.clone(),
        None => (1..=4).map(|j| c.psi.invert_ln(f64::from(j) * std::f64::consts::LN_2)).collect::<Result<_>>()?,
    };
    positive_grid("poisson_check.u_grid", &u_grid)?;
    positive_grid("poisson_check.s_grid", &s.s_grid)?;
    let report = poisson_check(&c.psi, &u_grid, &s.s_grid, s.n)?;
    let disc = poisson_discrepancy(&c.psi, &u_grid, &s.s_grid, &s.n_grid)?;
    let h = c.psi.spec_hash();
    let mut t = Table::new(
        "poisson",
        "poisson-check",
        c.seed,
        &["u", "s", "n", "ln_binomial_tail", "ln_poisson_tail", "exponent_scale", "c_needed"],
    );
    for r in &report.rows {
        t.push(&h, "exact", row![r.u, r.s, r.n, r.ln_binomial_tail, r.ln_poisson_tail, r.exponent_scale, r.c_needed]);
    }
    let mut d = Table::new("poisson_discrepancy", "poisson-check", c.seed, &["n", "max_abs", "le_cam"]);
    for r in &disc {
        d.push(&h, "exact", row![r.n, r.max_abs, r.le_cam]);
    }
    let nonincreasing = disc.windows(2).all(|w| w[1].max_abs <= w[0].max_abs);
    let mut summary = Table::new(
        "poisson_summary",
        "poisson-check",
        c.seed,
        &["fitted_c", "dominates_poisson", "discrepancy_nonincreasing"],
    );
    summary.push(&h, "exact", row![report.fitted_c, report.dominates_poisson, nonincreasing]);
    passed(vec![t, summary, d])
}
