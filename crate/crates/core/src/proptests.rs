use crate::concentration::{bennett_rhs, bernstein_rhs};
use crate::dist::{max_distribution, sum_distribution_general, Family, FiniteDist, DEFAULT_ATOM_BUDGET};
use crate::lab::{hj_ratio, Mode};
use crate::norm::norm_exact;
use crate::orlicz::{OrliczFunction, Scale};
use proptest::prelude::*;

fn any_psi() -> impl Strategy<Value = OrliczFunction> {
    prop_oneof![
        (1.0f64..5.0).prop_map(|p| OrliczFunction::power_law(p).unwrap()),
        (0.1f64..=1.0).prop_map(|a| OrliczFunction::exp_power(a).unwrap()),
        (1.0f64..3.0).prop_map(|b| OrliczFunction::heavy_tail_log(b).unwrap()),
        Just(OrliczFunction::exp_square()),
    ]
}

fn scalar_law() -> impl Strategy<Value = FiniteDist> {
    prop::collection::vec((-4.0f64..4.0, 0.05f64..1.0), 1..5).prop_map(|atoms| {
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        let values: Vec<f64> = atoms.iter().map(|a| a.0).collect();
        let probs: Vec<f64> = atoms.iter().map(|a| a.1 / total).collect();
        FiniteDist::scalar(&values, &probs).unwrap()
    })
}

fn nonzero_family() -> impl Strategy<Value = Family> {
    prop::collection::vec(scalar_law(), 1..5)
        .prop_filter("some mass off zero", |m| m.iter().any(|d| !d.is_zero()))
        .prop_map(|m| Family::independent(m).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inversion_round_trips(psi in any_psi(), ln_x in -3.0f64..4.0) {
        let x = ln_x.exp();
        for scale in [Scale::LnPsi, Scale::Psi] {
            let y = match scale {
                Scale::LnPsi => psi.ln_psi(x),
                _ => psi.psi(x),
            };
            if y.is_finite() {
                prop_assert!(rel(psi.invert(y, scale).unwrap(), x) < 1e-9, "{scale:?} at {x}");
            }
        }
        let y = psi.eval(x).unwrap();
        if let Some(v) = y.value {
            let back = psi.invert(v, Scale::Linear).unwrap();
            prop_assert!(rel(psi.ln_psi(back), y.ln_value) < 1e-9 || rel(back, x) < 1e-9);
        }
    }

    #[test]
    fn laws_are_normalized(family in nonzero_family()) {
        for law in [
            sum_distribution_general(&family, DEFAULT_ATOM_BUDGET).unwrap(),
            max_distribution(&family, DEFAULT_ATOM_BUDGET).unwrap(),
        ] {
            let total: f64 = (0..law.len()).map(|i| law.prob(i)).sum();
            prop_assert!((total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn norm_is_homogeneous(law in scalar_law(), psi in any_psi(), c in 0.05f64..20.0) {
        prop_assume!(!law.is_zero());
        let a = norm_exact(&law, &psi).unwrap().value;
        let b = norm_exact(&law.scaled(c).unwrap(), &psi).unwrap().value;
        prop_assert!(rel(b, c * a) < 1e-9, "{b} vs {}", c * a);
    }

    #[test]
    fn triangle_inequality(x in scalar_law(), y in scalar_law(), psi in any_psi()) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let sum = sum_distribution_general(&Family::independent(vec![x.clone(), y.clone()]).unwrap(), DEFAULT_ATOM_BUDGET)
            .unwrap();
        let lhs = norm_exact(&sum, &psi).unwrap().value;
        let rhs = norm_exact(&x, &psi).unwrap().value + norm_exact(&y, &psi).unwrap().value;
        prop_assert!(lhs <= rhs * (1.0 + 1e-9));
    }

    #[test]
    fn hj_ratio_is_scale_free(family in nonzero_family(), psi in any_psi(), c in 0.1f64..10.0) {
        let a = hj_ratio(&family, &psi, Mode::Exact).unwrap().ratio.unwrap();
        let b = hj_ratio(&family.scaled(c).unwrap(), &psi, Mode::Exact).unwrap().ratio.unwrap();
        prop_assert!(rel(a, b) < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn bounds_decrease_in_t_and_ignore_units(
        t in 0.01f64..20.0,
        dt in 0.0f64..5.0,
        u in 0.1f64..5.0,
        sigma2 in 0.1f64..50.0,
        c in 0.01f64..4.0,
        lambda in 0.1f64..10.0,
    ) {
        let psi = OrliczFunction::psi1();
        let bennett = |t, u, s2| bennett_rhs(t, u, s2, c, &psi, true).unwrap().raw;
        let bernstein = |t, u, s2| bernstein_rhs(t, u, s2, c, &psi).unwrap().raw;
        prop_assert!(bennett(t + dt, u, sigma2) <= bennett(t, u, sigma2) * (1.0 + 1e-12));
        prop_assert!(bernstein(t + dt, u, sigma2) <= bernstein(t, u, sigma2) * (1.0 + 1e-12));
        let l2 = lambda * lambda;
        prop_assert!(rel(bennett(lambda * t, lambda * u, l2 * sigma2), bennett(t, u, sigma2)) < 1e-9);
        prop_assert!(rel(bernstein(lambda * t, lambda * u, l2 * sigma2), bernstein(t, u, sigma2)) < 1e-9);
        let bare = |t, u, s2| bennett_rhs(t, u, s2, c, &psi, false).unwrap().raw;
        prop_assert!(rel(bare(lambda * t, lambda * u, l2 * sigma2), bare(t, u, sigma2)) < 1e-9);
    }
}
