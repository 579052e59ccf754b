//! Exit criteria. Each check prints one `PASS`/`FAIL` line with its measurements; the
//! test fails if any criterion fails.

use orlicz_hj::cli::{self, Command, Format, Overrides, RunConfig};
use orlicz_hj::concentration::{
    bennett_bernstein_equivalence, calibrate_c, crucial_lemma_check, empirical_process_tail, poisson_check,
    poisson_discrepancy, BoundId, CrucialLemmaParams, EmpiricalProcessSpec,
};
use orlicz_hj::dist::{make_three_point, sum_distribution_general, DEFAULT_ATOM_BUDGET};
use orlicz_hj::lab::{lemma_suite, ratio_sweep, schedule_ratios, series_experiment, series_spec_from_counterexample, Mode};
use orlicz_hj::norm::{norm_exact, norm_mc, Functional};
use orlicz_hj::numeric::log_grid;
use orlicz_hj::orlicz::{build_counterexample, check_hj, check_hj_along, hj_ratio, HjVerdict};
use orlicz_hj::{Family, FiniteDist, Method, OrliczFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

struct Outcome {
    ok: bool,
    detail: String,
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn outcome(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

fn psi_pool() -> Vec<OrliczFunction> {
    vec![
        OrliczFunction::psi1(),
        OrliczFunction::power_law(2.0).unwrap(),
        OrliczFunction::exp_power(0.5).unwrap(),
        OrliczFunction::heavy_tail_log(2.0).unwrap(),
    ]
}

fn norm_engine() -> Outcome {
    let p1 = norm_exact(&FiniteDist::point_mass(1.0), &OrliczFunction::psi1()).unwrap().value;
    let point_ok = (p1 - 1.0 / std::f64::consts::LN_2).abs() < 1e-9;

    let mut worst_atom = 0.0f64;
    for psi in psi_pool() {
        for level in [1.5f64, 2.0, 10.0, 1e3, 1e6] {
            let u = psi.invert_ln(level.ln()).unwrap();
            let p = (-psi.ln_psi(u)).exp();
            let law = FiniteDist::scalar(&[0.0, u], &[1.0 - p, p]).unwrap();
            worst_atom = worst_atom.max((norm_exact(&law, &psi).unwrap().value - 1.0).abs());
        }
    }

    let pool = psi_pool();
    let mut covered = 0;
    for cfg in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + cfg);
        let psi = &pool[cfg as usize % pool.len()];
        let atoms = rng.random_range(2..=4);
        let values: Vec<f64> = (0..atoms).map(|_| rng.random_range(-3.0..3.0)).collect();
        let weights: Vec<f64> = (0..atoms).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let fam = Family::iid(FiniteDist::scalar(&values, &probs).unwrap(), rng.random_range(2..=6)).unwrap();
        let exact = norm_exact(&sum_distribution_general(&fam, DEFAULT_ATOM_BUDGET).unwrap(), psi).unwrap().value;
        let mc = norm_mc(&fam, &Functional::SumNorm, psi, 100_000, cfg).unwrap();
        if mc.contains(exact) {
            covered += 1;
        }
    }
    outcome(
        point_ok && worst_atom < 1e-9 && covered == 50,
        format!("point mass {p1:.12}, max single-atom error {worst_atom:.2e}, MC intervals covering exact {covered}/50"),
    )
}

fn lemma_suite_clean() -> Outcome {
    let r = lemma_suite(7, 1000).unwrap();
    let comparisons: usize = r.comparisons.values().sum();
    outcome(r.passed(), format!("{} cases, {comparisons} comparisons, {} violations", r.cases, r.violations.len()))
}

fn hj_checker() -> Outcome {
    let grid = log_grid(2.0, 1e6, 25);
    let bounded: Vec<(String, OrliczFunction)> = [1.0, 2.0, 4.0]
        .iter()
        .map(|&p| (format!("power {p}"), OrliczFunction::power_law(p).unwrap()))
        .chain([0.5, 1.0].iter().map(|&a| (format!("exp-power {a}"), OrliczFunction::exp_power(a).unwrap())))
        .chain([1.0, 2.0, 3.0].iter().map(|&b| (format!("heavy-tail {b}"), OrliczFunction::heavy_tail_log(b).unwrap())))
        .collect();
    let mut wrong = Vec::new();
    for (name, psi) in &bounded {
        if check_hj(psi, &grid, &grid).verdict != HjVerdict::BoundedOnGrid {
            wrong.push(name.clone());
        }
    }
    if check_hj(&OrliczFunction::exp_square(), &grid, &grid).verdict != HjVerdict::Diverging {
        wrong.push("exp-square".into());
    }
    for depth in 3..=6 {
        let cx = build_counterexample(&OrliczFunction::psi1(), depth).unwrap();
        let path: Vec<(f64, f64)> = cx.schedule().into_iter().map(|(k, u)| (k as f64, u)).collect();
        if check_hj_along(&cx.psi, &path).verdict != HjVerdict::Diverging {
            wrong.push(format!("counterexample depth {depth}"));
        }
    }
    let ratio = hj_ratio(&OrliczFunction::exp_square(), 1e3, 1e3);
    // s²u²/(s(ln(1+s) + u²)), with ψ(x) = ln(e^{x²} − 1) = x² to double precision here.
    let formula = 1e12 / (1e3 * (1001f64.ln() + 1e6));
    let ratio_ok = ratio > 1e4;
    outcome(
        wrong.is_empty() && ratio_ok,
        format!(
            "wrong verdicts {wrong:?}; exp-square ratio at s = u = 1e3 is {ratio:.4} (closed form {formula:.4}), needs > 1e4"
        ),
    )
}

fn counterexample_margins() -> Outcome {
    let cx = build_counterexample(&OrliczFunction::psi1(), 4).unwrap();
    let least = cx.margins.iter().map(|m| m.growth.min(m.slope).min(m.tangent)).fold(f64::INFINITY, f64::min);
    outcome(
        cx.is_complete() && cx.margins_positive() && cx.dominated(),
        format!(
            "depth {}/{}, {} margin rows, least margin {least:.3e}, audit excess {:.3} over {} points",
            cx.depth,
            cx.requested_depth,
            cx.margins.len(),
            cx.audit_excess,
            cx.audit_points
        ),
    )
}

fn ratio_dichotomy() -> Outcome {
    let psi = OrliczFunction::psi1();
    let u: Vec<f64> = (2..=10).map(f64::from).collect();
    let n: Vec<usize> = (1..=10).map(|j| 1usize << j).collect();
    let sweep = ratio_sweep(&psi, &u, &n, Mode::Exact).unwrap();
    let cx = build_counterexample(&psi, 4).unwrap();
    let certified: Vec<f64> =
        schedule_ratios(&cx).unwrap().iter().map(|r| r.record.certified_ratio.unwrap_or(f64::NAN)).collect();
    let grows = certified.len() == 3 && certified.windows(2).all(|w| w[1] >= 1.5 * w[0]);
    outcome(
        sweep.empirical_d <= 20.0 && sweep.skipped.is_empty() && grows,
        format!(
            "empirical D {:.4} over {} cells; certified schedule ratios {certified:.4?}",
            sweep.empirical_d,
            sweep.records.len()
        ),
    )
}

fn series_divergence() -> Outcome {
    let cx = build_counterexample(&OrliczFunction::psi1(), 10).unwrap();
    let spec = series_spec_from_counterexample(&cx, 4).unwrap();
    let r = series_experiment(&cx.psi, &spec).unwrap();
    let psi1 = series_experiment(&OrliczFunction::psi1(), &spec).unwrap();
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    let lows: Vec<f64> = r.records.iter().map(|x| x.lower_bound).collect();
    let reach = r.records.len() == 4 && r.records.iter().all(|x| x.lower_bound >= x.k as f64);
    outcome(
        r.sup_upper() < zeta2 && reach && psi1.max_sum_upper() <= 20.0,
        format!(
            "sup upper {:.4} (< {zeta2:.4}); lower bounds {lows:.4?}; Ψ₁ max per-k {:.4}",
            r.sup_upper(),
            psi1.max_sum_upper()
        ),
    )
}

fn crucial_lemma() -> Outcome {
    let psi = OrliczFunction::psi1();
    let exact_fam = Family::iid(make_three_point(&psi, 2.0, 12).unwrap(), 12).unwrap();
    let mc_fam = Family::iid(make_three_point(&psi, 2.0, 64).unwrap(), 64).unwrap();
    let (mut exact_ok, mut mc_ok, mut worst) = (0, 0, f64::INFINITY);
    for q in [2, 3, 4] {
        for k in [1, 2, 4] {
            for u in [0.5, 1.0, 2.0] {
                let p = CrucialLemmaParams { q, k, u, u_prime: u };
                let e = crucial_lemma_check(&exact_fam, p, 0, 0).unwrap();
                if e.method == Method::Exact && e.lhs <= e.rhs {
                    exact_ok += 1;
                }
                let m = crucial_lemma_check(&mc_fam, p, 100_000, 11).unwrap();
                if m.method == Method::MonteCarlo && m.passed {
                    mc_ok += 1;
                }
                worst = worst.min(m.margin_se);
            }
        }
    }
    outcome(
        exact_ok == 27 && mc_ok == 27,
        format!("exact {exact_ok}/27, Monte Carlo {mc_ok}/27, least MC margin {worst:.2} se"),
    )
}

fn concentration_calibration() -> Outcome {
    let psi = OrliczFunction::psi1();
    let spec = EmpiricalProcessSpec::rademacher_projections(4, 16, true).unwrap();
    let (stats, curve) = empirical_process_tail(&spec, &psi, None, 100_000, 3).unwrap();
    let grid = orlicz_hj::concentration::default_c_grid();
    let mut found = Vec::new();
    for b in [BoundId::Bennett, BoundId::Bernstein] {
        found.push(calibrate_c(&curve, b, &stats, &psi, &grid).unwrap().c);
    }
    let ts: Vec<f64> = curve.points.iter().map(|p| p.t).collect();
    let eq = bennett_bernstein_equivalence(&psi, &ts, stats.u.value, stats.sigma2.value, 1.0).unwrap();
    outcome(
        found.iter().all(Option::is_some) && eq.max_ratio <= 10.0,
        format!(
            "c (bennett, bernstein) = {found:?}; equivalence ratio max {:.4} (κ = {})",
            eq.max_ratio, eq.kappa
        ),
    )
}

fn poisson() -> Outcome {
    let psi = OrliczFunction::psi1();
    let u: Vec<f64> = (1..=4).map(|j| psi.invert_ln(f64::from(j) * std::f64::consts::LN_2).unwrap()).collect();
    let s = [4.0, 8.0, 16.0];
    let r = poisson_check(&psi, &u, &s, 1000).unwrap();
    let holds = r.rows.iter().all(|row| row.ln_binomial_tail >= -r.fitted_c.powi(2) * row.exponent_scale - 1e-9);
    let d = poisson_discrepancy(&psi, &u, &s, &[100, 1000, 10_000]).unwrap();
    let gaps: Vec<f64> = d.iter().map(|x| x.max_abs).collect();
    let shown: Vec<String> = gaps.iter().map(|g| format!("{g:.3e}")).collect();
    let nonincreasing = gaps.windows(2).all(|w| w[1] <= w[0]);
    outcome(
        r.fitted_c <= 20.0 && holds && nonincreasing,
        format!("fitted C {:.4}; discrepancy by N {shown:?}", r.fitted_c),
    )
}

fn determinism() -> Outcome {
    let mut differing = Vec::new();
    let mut config = RunConfig { seed: Some(5), ..RunConfig::default() };
    config.norm.method = cli::MethodChoice::MonteCarlo;
    config.norm.dist = FiniteDist::scalar(&[-1.0, 0.5, 2.0], &[0.3, 0.5, 0.2]).unwrap();
    config.norm.count = 8;
    config.ratio_sweep.method = cli::MethodChoice::MonteCarlo;
    config.ratio_sweep.samples = 20_000;
    config.ratio_sweep.n_grid = vec![4, 16];
    config.ratio_sweep.u_grid = vec![2.0, 3.0];
    config.tails.samples = 50_000;
    config.tails.bounds = vec![BoundId::Bennett, BoundId::Bernstein, BoundId::Talagrand];
    config.crucial_check.count = 40;
    config.crucial_check.three_point_u = Some(2.0);
    config.crucial_check.samples = 20_000;
    config.verify_lemmas.cases = 100;
    let commands = [
        Command::Norm,
        Command::RatioSweep,
        Command::Tails,
        Command::Calibrate,
        Command::CrucialCheck,
        Command::VerifyLemmas,
    ];
    for command in commands {
        for format in [Format::Csv, Format::Json] {
            let render = |threads| {
                let o = Overrides { threads: Some(threads), ..Overrides::default() };
                let outcome = cli::run(command, config.clone(), &o).unwrap();
                let mut buf = Vec::new();
                cli::emit(&outcome.tables, None, format, &mut buf).unwrap();
                buf
            };
            if render(1) != render(4) || render(4) != render(3) {
                differing.push(format!("{}/{format:?}", command.as_str()));
            }
        }
    }
    outcome(
        differing.is_empty(),
        format!("{} commands x 2 formats at 1, 3, 4 threads; differing {differing:?}", commands.len()),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("norm engine exactness", 60, norm_engine),
        ("lemma suite", 120, lemma_suite_clean),
        ("growth condition checker", 10, hj_checker),
        ("counterexample construction", 5, counterexample_margins),
        ("ratio dichotomy", 120, ratio_dichotomy),
        ("series experiment", 60, series_divergence),
        ("crucial lemma", 300, crucial_lemma),
        ("concentration calibration", 300, concentration_calibration),
        ("poisson check", 60, poisson),
        ("determinism", 60, determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*limit);
        let ok = o.ok && in_time;
        println!(
            "{} {:>2} {name}: {} [{:.2}s, limit {limit}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            elapsed.as_secs_f64()
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
