use approx::assert_relative_eq;
use proptest::prelude::*;

use super::*;
use crate::families::{make_family, FamilyDescriptor, FamilyKind};
use crate::numerics::{integrate_adaptive, minimize_unimodal, ToleranceConfig};

fn fam(spec: &str) -> FamilyDescriptor<f64> {
    make_family(spec.parse().unwrap()).unwrap()
}

fn cfg() -> ToleranceConfig<f64> {
    ToleranceConfig::default()
}

#[test]
fn plan_examples() {
    let p = build_plan(&fam("normal:1"), 0.0, 0.5, 0.0).unwrap();
    assert_relative_eq!(p.p, 0.5, max_relative = 1e-15);

    let p = build_plan(&fam("gamma:2"), 1.5, 0.5, 0.0).unwrap();
    assert_eq!((p.lambda1, p.lambda2), (1.0, 2.0));
    assert_relative_eq!(p.p, 0.8, max_relative = 1e-14);

    let p = build_plan(&fam("hc:2"), 0.0, 1.0, 0.0).unwrap();
    let cos2 = 1f64.cos().powi(2);
    assert_relative_eq!(p.p, 0.5, max_relative = 1e-14);
    assert_relative_eq!(p.p1, 0.5 * cos2, max_relative = 1e-13);
    assert_relative_eq!(p.p2, 0.5 * cos2, max_relative = 1e-13);
    assert!((p.p1 - 0.145963).abs() < 1e-6);
}

#[test]
fn plan_endpoints_must_lie_in_domain() {
    // HC α = 1 would need λ₂ = λ₁ + π
    let err = build_plan(&fam("hc:1"), 0.0, std::f64::consts::FRAC_PI_2, 0.0).unwrap_err();
    assert!(matches!(err, crate::Error::EndpointsOutsideDomain { .. }));
    assert!(build_plan(&fam("gamma:2"), 0.4, 0.5, 0.0).is_err());
    assert!(build_plan(&fam("gamma:2"), 1.0, -0.5, 0.0).is_err());
    assert!(from_components(&fam("gamma:2"), 2.0, 1.0, 0.5).is_err());
    assert!(from_components(&fam("gamma:2"), 1.0, 2.0, 1.0).is_err());
}

#[test]
fn from_components_matches_build_plan() {
    let fd = fam("gamma:2");
    let a = from_components(&fd, 1.0, 2.0, 0.8).unwrap();
    assert_relative_eq!(a.c, 0.5);
    // p/(1−p) = 4 and L(1)/L(2) = 4, so p₁ = p₂
    assert!(a.d.abs() < 1e-14);
    let b = build_plan(&fd, a.lambda_mid(), a.c, a.d).unwrap();
    assert_relative_eq!(a.p, b.p, max_relative = 1e-14);
}

proptest! {
    #[test]
    fn plan_round_trip(mid in -1.0f64..1.0, c in 0.05f64..0.5, d in -2.0f64..2.0, which in 0usize..4) {
        let (spec, shift) = [("normal:1.3", 0.0), ("hc:2", 0.0), ("gamma:2.5", 2.0), ("kummer:1:-2", 2.0)][which];
        let plan = build_plan(&fam(spec), mid + shift, c, d).unwrap();
        let (c2, d2) = plan.rederive_shape();
        prop_assert!((c2 - c).abs() <= 1e-12 * c.max(1.0));
        prop_assert!((d2 - d).abs() <= 1e-12 * d.abs().max(1.0));
        // p from the closed expression e^d L₁ / (e^d L₁ + e^{−d} L₂)
        let l1 = plan.family.laplace(plan.lambda1).unwrap();
        let l2 = plan.family.laplace(plan.lambda2).unwrap();
        let direct = d.exp() * l1 / (d.exp() * l1 + (-d).exp() * l2);
        prop_assert!((plan.p - direct).abs() <= 1e-12);
    }
}

#[test]
fn density_examples() {
    let plan = build_plan(&fam("gamma:2"), 1.5, 0.5, 0.0).unwrap();
    // Gamma(2, λ) density is λ² x e^{−λx}
    let expect = 0.8 * (-1f64).exp() + 0.2 * 4.0 * (-2f64).exp();
    assert_relative_eq!(mixture_density(&plan, 1.0).unwrap(), expect, max_relative = 1e-13);
    assert!((expect - 0.402572).abs() < 1e-6);
    for &x in &[0.01, 0.5, 3.0, 20.0] {
        let a = mixture_density(&plan, x).unwrap();
        let b = mixture_density_via_r(&plan, x).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }
    assert!(mixture_density(&plan, -1.0).is_err());
}

#[test]
fn density_via_r_matches_for_all_families() {
    let cases = [("normal:1", 0.0), ("hc:2", 0.0), ("ressel:1", 1.0), ("kummer:1:-2", 1.0), ("ig:1", 1.0)];
    for (spec, mid) in cases {
        let plan = build_plan(&fam(spec), mid, 0.4, 0.2).unwrap();
        for &x in &[0.3, 1.0, 2.5, 7.0] {
            let a = mixture_density(&plan, x).unwrap();
            let b = mixture_density_via_r(&plan, x).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }
}

#[test]
fn hc2_density_integrates_to_one() {
    let plan = build_plan(&fam("hc:2"), 0.0, 0.9, 0.0).unwrap();
    let c = ToleranceConfig { rel_tol: 1e-12, ..cfg() };
    let total = integrate_adaptive(|x| mixture_density(&plan, x).unwrap(), f64::NEG_INFINITY, f64::INFINITY, &c)
        .unwrap()
        .value;
    assert!((total - 1.0).abs() < 1e-8, "{total}");
}

#[test]
fn single_member_limits() {
    // with p → 1 the plan is the λ₁ member: Gamma(2, 1) has hazard x/(1+x)
    let plan = from_components(&fam("gamma:2"), 1.0, 2.0, 1.0 - 1e-15).unwrap();
    assert_relative_eq!(hazard(&plan, 1.0).unwrap(), 0.5, max_relative = 1e-12);
    assert_relative_eq!(hazard(&plan, 5.0).unwrap(), 5.0 / 6.0, max_relative = 1e-12);
    let fd = fam("gamma:2");
    let ls = member_log_survival(&fd, 1.0, 1.0, &cfg()).unwrap();
    assert_relative_eq!(ls.exp(), 2.0 * (-1f64).exp(), max_relative = 1e-13);
}

#[test]
fn gamma_plan_hazard_tends_to_smaller_rate() {
    let plan = from_components(&fam("gamma:2"), 1.0, 2.0, 0.8).unwrap();
    let h = hazard(&plan, 30.0).unwrap();
    assert!(h > 0.95 && h < 1.0, "{h}");
    for &x in &[0.001, 0.5, 2.0, 10.0] {
        assert!(hazard(&plan, x).unwrap() >= 0.0);
    }
}

#[test]
fn generic_survival_matches_closed_forms() {
    // normal: S(x) = ½ erfc(x/√2) from statrs; the generic path never uses it
    let fd = fam("normal:1");
    for &x in &[-3.0, 0.0, 1.0, 5.0, 20.0] {
        let ls = member_log_survival(&fd, 0.0, x, &cfg()).unwrap();
        let expect = 0.5 * statrs::function::erf::erfc(x / std::f64::consts::SQRT_2);
        assert_relative_eq!(ls.exp(), expect, max_relative = 1e-9);
    }
    // HC α = 1 member at λ = 0 is the hyperbolic secant law: S(x) = 1 − (2/π) atan(e^{πx/2})
    let fd = fam("hc:1");
    for &x in &[-2.0, 0.0, 1.5, 8.0] {
        let ls = member_log_survival(&fd, 0.0, x, &cfg()).unwrap();
        let expect = (2.0 / std::f64::consts::PI) * (-(std::f64::consts::FRAC_PI_2 * x)).exp().atan();
        assert_relative_eq!(ls.exp(), expect, max_relative = 1e-9);
    }
    // Kummer(1, −2) member: density (1+x)e^{−λx}/C, survival e^{−λx}(1 + x + 1/λ)/(λC)
    let fd = fam("kummer:1:-2");
    let l: f64 = 0.7;
    let c = (1.0 + l) / (l * l);
    for &x in &[0.01, 1.0, 10.0, 60.0] {
        let ls = member_log_survival(&fd, l, x, &cfg()).unwrap();
        let expect = (-l * x).exp() * (1.0 + x + 1.0 / l) / (l * c);
        assert_relative_eq!(ls.exp(), expect, max_relative = 1e-9);
    }
}

#[test]
fn survival_underflow_is_reported() {
    let plan = build_plan(&fam("normal:1"), 0.0, 0.5, 0.0).unwrap();
    assert!(matches!(evaluate(&plan, 40.0, &cfg()), Err(crate::Error::SurvivalUnderflow { .. })));
}

#[test]
fn glaser_slack_matches_direct_second_derivative() {
    let plan = build_plan(&fam("hc:2"), 0.2, 0.7, 0.1).unwrap();
    let h = 1e-4;
    let lf = |x: f64| log_mixture_density(&plan, x).unwrap();
    for &x in &[-3.0, -0.5, 0.4, 2.0] {
        let fd2 = -(lf(x + h) - 2.0 * lf(x) + lf(x - h)) / (h * h);
        assert!((glaser_slack(&plan, x).unwrap() - fd2).abs() < 1e-5);
        let fd1 = (lf(x + h) - lf(x - h)) / (2.0 * h);
        assert!((log_density_slope(&plan, x).unwrap() - fd1).abs() < 1e-7);
    }
}

#[test]
fn analytic_examples() {
    let r = feasibility_analytic(&fam("normal:1"), 0.9, 3.0).unwrap();
    assert_eq!(r.verdict, Verdict::Feasible);
    for (cs, v) in [(0.99, Verdict::Feasible), (1.0, Verdict::Feasible), (1.01, Verdict::Infeasible)] {
        assert_eq!(feasibility_analytic(&fam("normal:1"), cs, 0.2).unwrap().verdict, v);
    }
    let r = feasibility_analytic(&fam("hc:1"), 1.0, 0.0).unwrap();
    assert_eq!(r.verdict, Verdict::Infeasible);
    assert!(r.min_slack < 0.0);

    // Kummer B = 1: minimum of 2cosh(x/2) − x − 1
    let r = feasibility_analytic(&fam("kummer:1:-2"), 0.5, 0.0).unwrap();
    assert_eq!(r.verdict, Verdict::Feasible);
    assert_relative_eq!(r.witness_x, 2.0 * (1.0 + 2f64.sqrt()).ln(), max_relative = 1e-13);
    let (xm, fm) = minimize_unimodal(|x: f64| 2.0 * (0.5 * x).cosh() - x - 1.0, 0.0, 10.0, &cfg()).unwrap();
    assert!((xm - r.witness_x).abs() < 1e-6);
    assert!((fm - 0.065680).abs() < 1e-6);
    assert!(r.notes.iter().any(|n| n.starts_with("ERRATUM 3")));
}

#[test]
fn ressel_printed_criterion_values() {
    let (x0, phi0, ok) = ressel_phi_criterion(0.5f64, 0.0);
    assert!((x0 - 0.481212).abs() < 1e-6);
    // grid oracle for cosh²(x/2)/0.25 − x − 2
    let m = (0..=100_000)
        .map(|i| i as f64 * 1e-4)
        .map(|x| (0.5 * x).cosh().powi(2) / 0.25 - x - 2.0)
        .fold(f64::INFINITY, f64::min);
    assert!((phi0 - m).abs() < 1e-6 && (phi0 - 1.755).abs() < 2e-3);
    assert!(ok);
    // the true curvature is negative, so the verdict follows the oracle
    let r = feasibility_analytic(&fam("ressel:1"), 0.5, 0.0).unwrap();
    assert_eq!(r.verdict, Verdict::Infeasible);
    assert!(r.notes.iter().any(|n| n.contains("satisfied")));
    assert!(r.notes.iter().any(|n| n.starts_with("ERRATUM 2")));
}

#[test]
fn gamma_tangency_shift() {
    let d0 = 1f64.asinh() - 2f64.sqrt();
    assert!((d0 + 0.53284).abs() < 1e-5);
    let fd = fam("gamma:2");
    assert_eq!(feasibility_analytic(&fd, 0.7, d0 + 1e-9).unwrap().verdict, Verdict::Feasible);
    assert_eq!(feasibility_analytic(&fd, 0.7, d0 - 1e-6).unwrap().verdict, Verdict::Infeasible);
    // the printed shift log 2 − 2 lies below d₀
    assert_eq!(feasibility_analytic(&fd, 0.7, 2f64.ln() - 2.0).unwrap().verdict, Verdict::Infeasible);
    // tangency: minimum of cosh(t + d₀) − t over t > 0 is zero at t = √2
    let r = feasibility_analytic(&fd, 1.0, d0).unwrap();
    assert!(r.min_slack.abs() < 1e-12);
    assert_relative_eq!(r.witness_x, 2f64.sqrt(), max_relative = 1e-12);
}

#[test]
fn hc2_envelope_criterion() {
    let fd = fam("hc:2");
    let c_max = std::f64::consts::PI / (2.0 * 3f64.sqrt());
    assert_eq!(feasibility_analytic(&fd, 0.9, 0.0).unwrap().verdict, Verdict::Feasible);
    assert_eq!(feasibility_analytic(&fd, c_max * (1.0 - 1e-12), 0.0).unwrap().verdict, Verdict::Feasible);
    let r = feasibility_analytic(&fd, 1.0, 0.0).unwrap();
    assert_eq!(r.verdict, Verdict::Infeasible);
    assert_eq!(r.witness_x, 0.0);
    // the bound printed as c ≤ (π/2)√(2/3)
    let printed = std::f64::consts::FRAC_PI_2 * (2.0f64 / 3.0).sqrt();
    assert_eq!(feasibility_analytic(&fd, printed, 0.0).unwrap().verdict, Verdict::Infeasible);
    assert!(r.notes.iter().any(|n| n.starts_with("ERRATUM 1")));
}

#[test]
fn numeric_examples() {
    let r = feasibility_numeric(&fam("hc:1"), 1.0, 0.0, &cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Infeasible);
    assert!(r.min_slack < 0.0 && r.notes.iter().any(|n| n.contains("tail witness")));

    let r = feasibility_numeric(&fam("hc:2"), 1.6, 0.0, &cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Infeasible);
    assert!(r.witness_x.abs() < 1e-6);
    assert_relative_eq!(r.min_slack, 1.0 - 1.6 * 2.0 * 3f64.sqrt() / std::f64::consts::PI, max_relative = 1e-6);

    let r = feasibility_numeric(&fam("normal:1"), 1.0, 0.0, &cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Feasible);
    assert_eq!(r.min_slack, 0.0);
    assert!(r.witness_x.abs() < 1e-6);

    let r = feasibility_numeric(&fam("ig:1"), 0.5, 0.0, &cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Infeasible);
    assert!(r.notes[0].contains("log-concavity fails"));
}

#[test]
fn numeric_and_analytic_agree_on_grids() {
    let families = ["normal:1", "gamma:2", "gamma:3.5", "hc:1", "hc:2", "kummer:1:-2", "kummer:1:-3.5"];
    for spec in families {
        let fd = fam(spec);
        for i in 0..20 {
            for j in 0..20 {
                let c = 0.1 + 1.4 * i as f64 / 19.0;
                let d = -2.0 + 4.0 * j as f64 / 19.0;
                let a = feasibility_analytic(&fd, c, d).unwrap();
                let n = feasibility_numeric(&fd, c, d, &cfg()).unwrap();
                let clash = matches!(
                    (a.verdict, n.verdict),
                    (Verdict::Feasible, Verdict::Infeasible) | (Verdict::Infeasible, Verdict::Feasible)
                );
                assert!(!clash, "{spec} c={c} d={d}: {a:?} vs {n:?}");
                if a.verdict == Verdict::Feasible {
                    assert_eq!(n.verdict, Verdict::Feasible, "{spec} c={c} d={d}: {n:?}");
                }
            }
        }
    }
}

#[test]
fn feasible_plans_satisfy_glaser() {
    let cases = [("normal:1", 0.0, 0.9, 0.3), ("gamma:2", 2.0, 0.5, 0.0), ("hc:2", 0.0, 0.9, 0.0), ("kummer:1:-2", 1.0, 0.5, 0.0)];
    for (spec, mid, c, d) in cases {
        let fd = fam(spec);
        assert_eq!(feasibility_numeric(&fd, c, d, &cfg()).unwrap().verdict, Verdict::Feasible);
        let plan = build_plan(&fd, mid, c, d).unwrap();
        let (lo, hi) = fd.default_window();
        for i in 0..500 {
            let x = lo + (hi - lo) * i as f64 / 499.0;
            assert!(glaser_slack(&plan, x).unwrap() >= -1e-10, "{spec} x={x}");
        }
    }
}

#[test]
fn single_precision_plan() {
    let fd = make_family(FamilyKind::HyperbolicCosine { alpha: 2.0f32 }).unwrap();
    let plan = build_plan(&fd, 0.0, 0.9, 0.0).unwrap();
    assert!((plan.p - 0.5).abs() < 1e-6);
    let c = ToleranceConfig { rel_tol: 1e-5f32, abs_tol: 1e-7, ..ToleranceConfig::default() };
    let v = evaluate(&plan, 1.0, &c).unwrap();
    assert!(v.hazard > 0.0 && v.hazard.is_finite());
}
