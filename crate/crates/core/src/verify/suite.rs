use std::fmt;
use std::str::FromStr;

use super::*;
use crate::families::{make_family, FamilyKind};
use crate::mixture::{
    build_plan, feasibility_analytic, from_components, Verdict, ERRATUM_GAMMA_D0, ERRATUM_HC2_K_BOUND,
    ERRATUM_KUMMER_X0, ERRATUM_RESSEL_CURVATURE, ERRATUM_RESSEL_PHI,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Family,
    Lemmas,
    Errata,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "family" => Ok(Suite::Family),
            "lemmas" => Ok(Suite::Lemmas),
            "errata" => Ok(Suite::Errata),
            _ => Err(Error::InvalidParameter(format!("unknown suite '{s}' (all, family, lemmas, errata)"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Family => "family",
            Suite::Lemmas => "lemmas",
            Suite::Errata => "errata",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Runner {
    suite: &'static str,
    out: Vec<CheckOutcome>,
}

impl Runner {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.out.push(CheckOutcome { suite: self.suite, name: name.into(), passed, detail });
    }
}

fn fam(kind: FamilyKind<f64>) -> Result<crate::families::FamilyDescriptor<f64>> {
    make_family(kind)
}

/// Runs the named group of checks in `f64`.
pub fn run_suite(suite: Suite, cfg: &ToleranceConfig<f64>) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    if matches!(suite, Suite::All | Suite::Family) {
        out.extend(family_checks(cfg));
    }
    if matches!(suite, Suite::All | Suite::Lemmas) {
        out.extend(lemma_checks(cfg));
    }
    if matches!(suite, Suite::All | Suite::Errata) {
        out.extend(errata_checks(cfg));
    }
    out
}

fn monotone_detail(r: &HazardReport<f64>) -> String {
    format!(
        "monotone = {}, max drop {:.3e}, min (log f)' + h = {:.3e} at x = {}",
        r.monotone, r.max_drop, r.functional_min, r.functional_location
    )
}

fn family_checks(cfg: &ToleranceConfig<f64>) -> Vec<CheckOutcome> {
    use FamilyKind::*;
    let mut r = Runner { suite: "family", out: Vec::new() };
    let laplace_cases = [
        (Ressel { alpha: 1.0 }, 1.0, 1e-6),
        (HyperbolicCosine { alpha: 2.0 }, 0.7, 1e-7),
        (Gamma { alpha: 3.0 }, 2.0, 1e-10),
        (Normal { sigma: 1.5 }, 0.4, 1e-10),
        (InverseGaussian { alpha: 1.0 }, 0.5, 1e-8),
        (Kummer { a: 1.0, b: -2.0 }, 1.0, 1e-10),
    ];
    for (kind, lambda, tol) in laplace_cases {
        r.check(&format!("laplace quadrature {kind} at lambda = {lambda}"), || {
            let e = crosscheck_laplace(&fam(kind)?, lambda, cfg)?;
            Ok((e <= tol, format!("relative error {e:.3e} (tolerance {tol:e})")))
        });
    }
    for (a, b, l) in [(1.5, 0.7, 1.0), (2.0, -0.5, 0.5), (0.5, 0.5, 2.0)] {
        r.check(&format!("kummer 1F1 decomposition ({a}, {b}, {l})"), || {
            let e = dyson_residual(a, b, l)?;
            Ok((e <= 1e-8, format!("relative residual {e:.3e}")))
        });
    }
    for alpha in [1.0, 2.0] {
        r.check(&format!("ig:{alpha} curvature changes sign at 2 alpha^2/3"), || {
            let s = sign_scan_b2(&fam(InverseGaussian { alpha })?, 0.01, 5.0 * alpha * alpha, 2000)?;
            let target = 2.0 * alpha * alpha / 3.0;
            let ok = s.sign_changes.len() == 1 && (s.sign_changes[0].0 - target).abs() <= 1e-6;
            Ok((ok, format!("changes {:?}", s.sign_changes)))
        });
    }
    r.check("hc:0.5 curvature negative inside (0.6455, 1.4434)", || {
        let s = sign_scan_b2(&fam(HyperbolicCosine { alpha: 0.5 })?, 0.6455, 1.4434, 400)?;
        Ok((s.min_value < 0.0, format!("min b'' = {:.4e} at x = {:.4}", s.min_value, s.argmin)))
    });
    r.check("ressel:2 is not log-concave", || {
        let s = sign_scan_b2(&fam(Ressel { alpha: 2.0 })?, 0.01, 50.0, 2000)?;
        Ok((s.min_value < 0.0, format!("min b'' = {:.4e} at x = {:.4}", s.min_value, s.argmin)))
    });
    for (a, b, expect) in [(1.0, -2.0, true), (2.0, -1.5, true), (1.0, -1.0, false), (0.5, -2.0, false), (2.0, -0.5, false)] {
        r.check(&format!("kummer:{a}:{b} log-concave = {expect}"), || {
            let s = sign_scan_b2(&fam(Kummer { a, b })?, 1e-3, 200.0, 4000)?;
            Ok((s.all_positive == expect, format!("min b'' = {:.4e} at x = {:.4}", s.min_value, s.argmin)))
        });
    }
    r.check("ressel printed curvature within its bounds", || {
        let xs: Vec<f64> = (1..=200).map(|i| 0.05 * i as f64).collect();
        let mut worst = 0.0f64;
        for alpha in [1.0, 1.5, 1.77] {
            worst = worst.max(ressel_sandwich(alpha, &xs, ResselCurvature::Printed)?.max_violation);
        }
        Ok((worst <= 1e-9, format!("max violation {worst:.3e}")))
    });
    // name, family, lambda_mid, c, d, x_lo, x_hi, expected
    type PlanCase = (&'static str, FamilyKind<f64>, f64, f64, f64, f64, f64, bool);
    let plans: [PlanCase; 4] = [
        ("hc:2 plan c = 0.9, d = 0", HyperbolicCosine { alpha: 2.0 }, 0.0, 0.9, 0.0, -15.0, 15.0, true),
        ("normal:1 plan c = 0.9, d = 0.3", Normal { sigma: 1.0 }, 0.0, 0.9, 0.3, -8.0, 8.0, true),
        ("kummer:1:-2 plan c = 0.5, d = 0", Kummer { a: 1.0, b: -2.0 }, 1.0, 0.5, 0.0, 1e-3, 40.0, true),
        ("gamma:2 plan c = 0.5, d = 0", Gamma { alpha: 2.0 }, 2.0, 0.5, 0.0, 1e-3, 40.0, true),
    ];
    for (name, kind, mid, c, d, lo, hi, expect) in plans {
        r.check(&format!("{name} has increasing hazard"), || {
            let plan = build_plan(&fam(kind)?, mid, c, d)?;
            let rep = check_hazard_monotone(&plan, lo, hi, 400, cfg)?;
            Ok((rep.monotone == expect, monotone_detail(&rep)))
        });
    }
    r.check("gamma:2 components (1, 2) with p = 0.8 have increasing hazard", || {
        let plan = from_components(&fam(Gamma { alpha: 2.0 })?, 1.0, 2.0, 0.8)?;
        let rep = check_hazard_monotone(&plan, 1e-3, 40.0, 400, cfg)?;
        Ok((rep.monotone, monotone_detail(&rep)))
    });
    r.check("mixture of exponentials has decreasing hazard", || {
        let plan = from_components(&fam(Gamma { alpha: 1.0 })?, 1.0, 2.0, 0.5)?;
        let rep = check_hazard_monotone(&plan, 1e-3, 20.0, 200, cfg)?;
        Ok((!rep.monotone && rep.drop_location.is_some(), monotone_detail(&rep)))
    });
    r.out
}

fn lemma_checks(cfg: &ToleranceConfig<f64>) -> Vec<CheckOutcome> {
    let mut r = Runner { suite: "lemmas", out: Vec::new() };
    r.check("hc2 shift bound d0 = sqrt 2 - log(1 + sqrt 2)", || {
        let d0: f64 = hc2_d0();
        Ok(((d0 * 1000.0).floor() == 532.0, format!("d0 = {d0:.12}")))
    });
    r.check("hc2 k_max(0) = 1/sqrt 3", || {
        let k = hc2_k_max(0.0f64)?;
        Ok(((k - 3f64.sqrt().recip()).abs() <= 1e-12, format!("k_max = {k:.12}")))
    });
    r.check("hc2 k_max(d0) = 0", || {
        let k = hc2_k_max(hc2_d0::<f64>())?;
        Ok((k <= 1e-6, format!("k_max = {k:.3e}")))
    });
    r.check("hc2 k_max agrees with a grid oracle", || {
        let mut worst = 0.0f64;
        for d in [0.0, 0.2, -0.2, 0.5, -0.5] {
            let k = hc2_k_max(d)?;
            // max k with 3k² ≤ cosh²u − (u−d)² on a fine grid
            let m = (0..=400_000)
                .map(|i| -4.0 + 8.0 * i as f64 / 400_000.0)
                .map(|u: f64| u.cosh().powi(2) - (u - d).powi(2))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max((k - (m.max(0.0) / 3.0).sqrt()).abs());
        }
        Ok((worst <= 1e-6, format!("max difference {worst:.3e}")))
    });
    for (a, u, expect) in [(1.0, 1.0, Some(0.0)), (0.5, 1.0, Some(2f64.ln())), (0.5, 2.0, None), (0.3, 3.5, None)] {
        r.check(&format!("cosh tangency shift a = {a}, u = {u}"), || {
            let v = cosh_tangency_shift(a, u)?;
            let res = tangency_residual(a, u, v, cfg)?;
            let value_ok = expect.is_none_or(|e| (v - e).abs() <= 1e-12);
            Ok((value_ok && (-1e-9..=1e-6).contains(&res), format!("v0 = {v:.9}, residual {res:.3e}")))
        });
    }
    r.check("sinh^2 t - t^2 - t^4/3 >= 0 on [-20, 20]", || {
        let (m, t) = sinh_quartic_gap(-20.0, 20.0, 4001);
        Ok((m >= 0.0, format!("min {m:.3e} at t = {t}")))
    });
    r.out
}

fn errata_checks(cfg: &ToleranceConfig<f64>) -> Vec<CheckOutcome> {
    use FamilyKind::*;
    let mut r = Runner { suite: "errata", out: Vec::new() };
    r.check("ERRATUM 1: hc2 k-bound", || {
        // k = √(2/3) gives c·T(0) = √2 > cosh 0 at the origin
        let k = (2.0f64 / 3.0).sqrt();
        let c = std::f64::consts::FRAC_PI_2 * k;
        let fd = fam(HyperbolicCosine { alpha: 2.0 })?;
        let at_zero = 1.0 - c * fd.t_value(0.0)?;
        let rep = feasibility_analytic(&fd, c, 0.0)?;
        let ok = at_zero < 0.0 && rep.verdict == Verdict::Infeasible && (hc2_k_max(0.0)? - 3f64.sqrt().recip()).abs() < 1e-12;
        Ok((ok, format!("{ERRATUM_HC2_K_BOUND}; slack at 0 for k = sqrt(2/3): {at_zero:.6}")))
    });
    r.check("ERRATUM 2: ressel phi constant", || {
        // φ at its minimiser u = cx₀+d (sinh 2u = c): cosh²u/c² − (u−d)/c − 2
        let (c, d) = (0.5f64, 0.1f64);
        let (x0, phi0, _) = crate::mixture::ressel_phi_criterion(c, d);
        let u = 0.5 * c.asinh();
        let closed = u.cosh().powi(2) / (c * c) - (u - d) / c - 2.0;
        let grid = (0..=200_000)
            .map(|i| x0 - 1.0 + 2.0 * i as f64 / 200_000.0)
            .map(|x| (c * x + d).cosh().powi(2) / (c * c) - x - 2.0)
            .fold(f64::INFINITY, f64::min);
        let ok = (phi0 - closed).abs() < 1e-12 && (phi0 - grid).abs() < 1e-8;
        Ok((ok, format!("{ERRATUM_RESSEL_PHI}; phi(x0) = {phi0:.9}")))
    });
    r.check("ERRATUM 3: kummer minimiser condition", || {
        // B = 1: φ(x₀) ≥ 0 ⇔ x₀ ≤ √2/c − 1; compare with the slack minimum
        let fd = fam(Kummer { a: 1.0, b: -2.0 })?;
        let mut agree = true;
        for c in [0.3, 0.5, 0.7, 0.9] {
            let x0 = 1f64.asinh() / c;
            let proof_form = x0 <= 2f64.sqrt() / c - 1.0;
            let rep = crate::mixture::feasibility_numeric(&fd, c, 0.0, cfg)?;
            agree &= proof_form == (rep.verdict == Verdict::Feasible);
        }
        Ok((agree, ERRATUM_KUMMER_X0.to_string()))
    });
    r.check("ERRATUM: gamma tangency shift", || {
        let d0 = 1f64.asinh() - 2f64.sqrt();
        let fd = fam(Gamma { alpha: 2.0 })?;
        let tangent = crate::mixture::feasibility_numeric(&fd, 1.0, d0 + 1e-9, cfg)?;
        let printed = crate::mixture::feasibility_numeric(&fd, 1.0, 2f64.ln() - 2.0, cfg)?;
        let ok = tangent.verdict == Verdict::Feasible && printed.verdict == Verdict::Infeasible;
        Ok((ok, format!("{ERRATUM_GAMMA_D0}; printed shift slack {:.4}", printed.min_slack)))
    });
    r.check("ERRATUM: ressel curvature", || {
        // second difference of −log s₁ against both closed forms
        let fd = fam(Ressel { alpha: 1.5 })?;
        let b = |x: f64| -fd.log_s(x).unwrap_or(f64::NAN);
        let (x, h) = (3.0, 1e-3);
        let fd2 = (b(x + h) - 2.0 * b(x) + b(x - h)) / (h * h);
        let derived = fd.b_second(x)?;
        let printed = ressel_stated_b_second(1.5, x)?;
        let scan = sign_scan_b2(&fam(Ressel { alpha: 1.0 })?, 0.01, 50.0, 1000)?;
        let ok = (fd2 - derived).abs() < 1e-6 && (fd2 - printed).abs() > 1e-2 && scan.min_value < 0.0;
        Ok((ok, format!("{ERRATUM_RESSEL_CURVATURE}; at x = 3: differenced {fd2:.6}, derived {derived:.6}, printed {printed:.6}")))
    });
    r.out
}
