use std::fmt;

use crate::families::{FamilyDescriptor, FamilyKind};
use crate::numerics::{find_root_newton, minimize_unimodal, ToleranceConfig};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible,
    Unknown,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Analytic => "analytic",
            Method::Numeric => "numeric",
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Outcome of testing `c·T(x) ≤ cosh(cx + d)` for all `x` in the support.
///
/// `min_slack` is the smallest `cosh(cx+d) − c·T(x)` found and `witness_x`
/// where it occurs; for an infeasible verdict the slack there is negative
/// (or `T` is undefined because `b″ ≤ 0`, in which case `min_slack = −∞`).
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport<T> {
    pub method: Method,
    pub verdict: Verdict,
    pub min_slack: T,
    pub witness_x: T,
    pub notes: Vec<String>,
}

pub const ERRATUM_HC2_K_BOUND: &str = "ERRATUM 1: HC alpha=2 k-bound; at d = 0 the envelope criterion gives \
     k <= 1/sqrt(3) (c <= pi/(2 sqrt 3) = 0.9069), not k <= sqrt(2/3): the point x = 0 alone forces \
     c*2*sqrt(3)/pi <= cosh d";
pub const ERRATUM_RESSEL_PHI: &str = "ERRATUM 2: Ressel phi criterion; phi(x) = cosh^2(cx+d)/c^2 - x - 2 gives the \
     constant -2 at its minimiser, not -7/4, and the stated bound c <= sqrt(8/7) does not follow";
pub const ERRATUM_KUMMER_X0: &str = "ERRATUM 3: Kummer minimiser condition; phi(x0) >= 0 reads \
     x0 <= sqrt(B+1)/c - 1, not x0 <= 1 - sqrt(B+1)/c";
pub const ERRATUM_GAMMA_D0: &str = "ERRATUM: Gamma tangency shift; the tangency of x/sqrt(alpha-1) with cosh(x+d) \
     is at cosh = sqrt(alpha/(alpha-1)), so d0 = asinh(1/sqrt(alpha-1)) - sqrt(alpha) (alpha = 2: -0.53284, \
     not log 2 - 2)";
pub const ERRATUM_RESSEL_CURVATURE: &str = "ERRATUM: Ressel curvature; differentiating -log s_alpha gives \
     b'' = psi'(x+alpha+1) - 1/x + (alpha-1)/x^2, which is negative near infinity for every alpha, so the \
     sufficient condition never applies; criteria built on the printed curvature are excluded from certification";

/// `cosh(cx + d) − c·T(x)`.
pub fn slack<T: Real>(fd: &FamilyDescriptor<T>, c: T, d: T, x: T) -> Result<T> {
    Ok((c * x + d).cosh() - c * fd.t_value(x)?)
}

/// Largest `|d|` for which some `k > 0` satisfies `3k² + (u − d)² ≤ cosh²u`
/// for all `u`: `√2 − log(1 + √2)`.
pub fn hc2_d_max<T: Real>() -> T {
    let r2 = T::SQRT_2();
    r2 - (T::one() + r2).ln()
}

/// Root `u_d` of `sinh 2u = 2(u − d)`, the minimiser of `cosh²u − (u − d)²`.
pub fn hc2_tangent_u<T: Real>(d: T) -> Result<T> {
    if d == T::zero() {
        return Ok(T::zero());
    }
    let two = T::lit(2.0);
    // sinh 2u − 2u ≥ (2u)³/6, so |u_d| ≤ (3|d|/2)^{1/3}
    let bound = (T::lit(1.5) * d.abs()).cbrt() * T::lit(1.01) + T::lit(1e-3);
    let cfg = ToleranceConfig {
        rel_tol: T::epsilon() * T::lit(8.0),
        abs_tol: T::min_positive_value(),
        ..ToleranceConfig::default()
    };
    find_root_newton(
        |u: T| ((two * u).sinh() - two * (u - d), two * (two * u).cosh() - two),
        -bound,
        bound,
        &cfg,
    )
}

/// `min_u [cosh²u − (u − d)²] = (2 − cosh²u_d)·cosh²u_d`.
pub fn hc2_gap_minimum<T: Real>(d: T) -> Result<T> {
    let ch = hc2_tangent_u(d)?.cosh();
    let ch2 = ch * ch;
    Ok((T::lit(2.0) - ch2) * ch2)
}

/// `(x₀, φ(x₀))` for `φ(x) = cosh²(cx+d)/c² − x − 2`, the criterion built
/// on the printed Ressel curvature at `α = 1`; `x₀` is the unconstrained
/// minimiser, and the criterion requires `φ ≥ 0` on `[0, ∞)`.
pub fn ressel_phi_criterion<T: Real>(c: T, d: T) -> (T, T, bool) {
    let two = T::lit(2.0);
    let phi = |x: T| {
        let ch = (c * x + d).cosh();
        ch * ch / (c * c) - x - two
    };
    let x0 = (T::lit(0.5) * c.asinh() - d) / c;
    let ok = if x0 <= T::zero() { phi(T::zero()) >= T::zero() } else { phi(x0) >= T::zero() };
    (x0, phi(x0), ok)
}

fn report<T: Real>(verdict: Verdict, min_slack: T, witness_x: T, notes: Vec<String>) -> FeasibilityReport<T> {
    FeasibilityReport { method: Method::Analytic, verdict, min_slack, witness_x, notes }
}

fn check_shape<T: Real>(c: T, d: T) -> Result<()> {
    if c > T::zero() && c.is_finite() && d.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("need c > 0 and finite d, got c = {c}, d = {d}")))
    }
}

/// Closed-form feasibility where the family admits one.
///
/// Normal and Kummer `a = 1` are exact. Gamma uses the tangency shift `d₀`.
/// HC `α = 1` is decided from the exponential growth of `T`; HC `α = 2`
/// uses the envelope `T ≤ (2/π)√(3 + (πx/2)²)` and is only sufficient, with
/// `x = 0` as a necessary check. Families known not to be log-concave are
/// infeasible; other cases are `unknown`.
pub fn feasibility_analytic<T: Real>(fd: &FamilyDescriptor<T>, c: T, d: T) -> Result<FeasibilityReport<T>> {
    check_shape(c, d)?;
    let one = T::one();
    let two = T::lit(2.0);
    let zero = T::zero();
    let neg_inf = T::neg_infinity();
    let r = match fd.kind {
        FamilyKind::Normal { sigma } => {
            let m = one - c * sigma;
            let v = if m >= zero { Verdict::Feasible } else { Verdict::Infeasible };
            report(v, m, -d / c, vec![format!("c*sigma = {} (feasible iff <= 1)", c * sigma)])
        }
        FamilyKind::Gamma { alpha } if alpha > one => {
            let k = (alpha - one).sqrt();
            let d0 = k.recip().asinh() - alpha.sqrt();
            // minimise cosh(t + d) − t/k over t = cx > 0
            let t_star = k.recip().asinh() - d;
            let (x, m) = if t_star > zero {
                (t_star / c, alpha.sqrt() / k - t_star / k)
            } else {
                (zero, d.cosh())
            };
            let v = if d >= d0 { Verdict::Feasible } else { Verdict::Infeasible };
            report(v, m, x, vec![format!("tangency shift d0 = {d0} (feasible iff d >= d0)"), ERRATUM_GAMMA_D0.into()])
        }
        FamilyKind::Gamma { alpha } => report(
            Verdict::Infeasible,
            neg_inf,
            one,
            vec![format!("log-concavity fails at x = 1: b'' = {} <= 0", alpha - one)],
        ),
        FamilyKind::InverseGaussian { alpha } => {
            let x = alpha * alpha;
            report(
                Verdict::Infeasible,
                neg_inf,
                x,
                vec![format!(
                    "log-concavity fails at x = {x}: b'' < 0 beyond 2 alpha^2/3; the sufficient condition is not applicable"
                )],
            )
        }
        FamilyKind::HyperbolicCosine { alpha } if alpha == one => hc1_analytic(c, d),
        FamilyKind::HyperbolicCosine { alpha } if alpha == two => {
            let k = two * c / T::PI();
            let t0 = two * T::lit(3.0).sqrt() / T::PI();
            let at_zero = d.cosh() - c * t0;
            let mut notes = vec![ERRATUM_HC2_K_BOUND.to_string()];
            if d.abs() <= hc2_d_max::<T>() {
                let gap = hc2_gap_minimum(d)?;
                notes.push(format!("envelope criterion: 3k^2 = {} vs (2 - cosh^2 u_d) cosh^2 u_d = {gap}", T::lit(3.0) * k * k));
                if T::lit(3.0) * k * k <= gap {
                    // the envelope bound is only sufficient; report the slack at x = 0
                    return Ok(report(Verdict::Feasible, at_zero.max(zero), zero, notes));
                }
            } else {
                notes.push(format!("|d| > {} leaves no k for the envelope criterion", hc2_d_max::<T>()));
            }
            if at_zero < zero {
                notes.push("x = 0 violates c*T(0) <= cosh d".into());
                report(Verdict::Infeasible, at_zero, zero, notes)
            } else {
                report(Verdict::Unknown, at_zero, zero, notes)
            }
        }
        FamilyKind::HyperbolicCosine { alpha } if alpha < one => {
            let x = (alpha * ((two + alpha) / (two - alpha)).sqrt() + (two + alpha) / T::lit(3.0).sqrt()) / two;
            report(
                Verdict::Infeasible,
                neg_inf,
                x,
                vec![format!("log-concavity fails at x = {x} (alpha < 1)")],
            )
        }
        FamilyKind::Ressel { alpha } => {
            let mut notes = vec![ERRATUM_RESSEL_CURVATURE.to_string()];
            if alpha == one {
                let (x0, phi0, ok) = ressel_phi_criterion(c, d);
                notes.push(ERRATUM_RESSEL_PHI.into());
                notes.push(format!(
                    "printed-curvature criterion: x0 = {x0}, phi(x0) = {phi0}, {}",
                    if ok { "satisfied" } else { "violated" }
                ));
            }
            match fd.curvature_witness() {
                Some((x, b2)) => {
                    notes.push(format!("log-concavity fails at x = {x}: b'' = {b2}"));
                    report(Verdict::Infeasible, neg_inf, x, notes)
                }
                None => report(Verdict::Unknown, T::nan(), T::nan(), notes),
            }
        }
        FamilyKind::Kummer { a, b } if a == one && -b - one > zero => {
            let big_b = -b - one;
            let rb = big_b.sqrt();
            // φ(x) = (√B/c)·cosh(cx+d) − 1 − x = slack·√B/c
            let x0 = ((rb.recip()).asinh() - d) / c;
            let (x, phi) = if x0 > zero {
                (x0, (big_b + one).sqrt() / c - one - x0)
            } else {
                (zero, rb / c * d.cosh() - one)
            };
            let v = if phi >= zero { Verdict::Feasible } else { Verdict::Infeasible };
            report(
                v,
                phi * c / rb,
                x,
                vec![format!("x0 = {x0}, phi = {phi} (feasible iff phi >= 0)"), ERRATUM_KUMMER_X0.into()],
            )
        }
        FamilyKind::Kummer { .. } if !fd.log_concave() => match fd.curvature_witness() {
            Some((x, b2)) => report(
                Verdict::Infeasible,
                neg_inf,
                x,
                vec![format!("log-concavity fails at x = {x}: b'' = {b2}")],
            ),
            None => report(Verdict::Unknown, T::nan(), T::nan(), vec!["no closed-form criterion".into()]),
        },
        _ => report(Verdict::Unknown, T::nan(), T::nan(), vec!["no closed-form criterion for this family".into()]),
    };
    Ok(r)
}

/// `T(x) = (2/π)cosh(πx/2)`, so with `u = 2c/π` the condition reads
/// `u·cosh(πx/2) ≤ cosh(cx + d)`.
fn hc1_analytic<T: Real>(c: T, d: T) -> FeasibilityReport<T> {
    let u = T::lit(2.0) * c / T::PI();
    let s = |x: T| (c * x + d).cosh() - u * (T::FRAC_PI_2() * x).cosh();
    let notes = vec![format!("T grows like e^(pi|x|/2); u = 2c/pi = {u}")];
    if u < T::one() {
        // the right-hand side grows more slowly; walk out until it loses
        let mut x = T::one();
        while s(x) >= T::zero() && x.is_finite() {
            x = x + x;
        }
        let mut notes = notes;
        notes.push(format!("tail witness at x = {x}"));
        FeasibilityReport { method: Method::Analytic, verdict: Verdict::Infeasible, min_slack: s(x), witness_x: x, notes }
    } else {
        let x = -d / c;
        let m = s(x);
        let verdict = if m >= T::zero() { Verdict::Feasible } else { Verdict::Infeasible };
        let mut notes = notes;
        notes.push("c >= pi/2 admits no pair of natural parameters in (-pi/2, pi/2)".into());
        FeasibilityReport { method: Method::Analytic, verdict, min_slack: m, witness_x: x, notes }
    }
}

const GRID_POINTS: usize = 4001;
const LOG_POINTS: usize = 400;
const LEFT_EPS: f64 = 1e-6;

/// Result of trying to certify one tail.
enum Tail<T> {
    /// Slack is positive beyond this point.
    Certified { from: T, note: String },
    /// Explicit violation at this point.
    Violated { x: T, slack: T },
    Uncertified { from: T, note: String },
}

/// Feasibility by evaluating the slack on a window and certifying the tails.
///
/// Beyond the window the bound `cosh(cx + d) ≥ ½e^{|cx + d|}` is compared
/// with the family's envelope of `T`: once the log-slope of the envelope is
/// at most `c` and the log-margin is at least `log 10`, the margin can only
/// grow. Tails whose `T` grows exponentially faster than `e^{c|x|}` are
/// walked out until an explicit violation appears.
pub fn feasibility_numeric<T: Real>(
    fd: &FamilyDescriptor<T>,
    c: T,
    d: T,
    cfg: &ToleranceConfig<T>,
) -> Result<FeasibilityReport<T>> {
    check_shape(c, d)?;
    cfg.validate()?;
    let zero = T::zero();
    let mut notes = Vec::new();
    let numeric = |verdict, min_slack, witness_x, notes| FeasibilityReport {
        method: Method::Numeric,
        verdict,
        min_slack,
        witness_x,
        notes,
    };

    if let Some((x, b2)) = fd.curvature_witness() {
        notes.push(format!("log-concavity fails at x = {x}: b'' = {b2}; the sufficient condition is not applicable"));
        return Ok(numeric(Verdict::Infeasible, T::neg_infinity(), x, notes));
    }

    let whole_line = fd.support_left.is_infinite();
    let (_, win_hi) = fd.default_window();
    let start = win_hi.max(T::one()).max(T::lit(2.0) * (d / c).abs());
    let right = certify_tail(fd, c, d, start, true);
    let left = if whole_line { Some(certify_tail(fd, c, d, start, false)) } else { None };

    let mut hi = start;
    let mut lo = if whole_line { -start } else { fd.support_left + T::lit(LEFT_EPS) };
    let mut tails_ok = true;
    for (tail, is_right) in std::iter::once((&right, true)).chain(left.iter().map(|t| (t, false))) {
        match tail {
            Tail::Certified { from, note } | Tail::Uncertified { from, note } => {
                if is_right {
                    hi = hi.max(*from);
                } else {
                    lo = lo.min(-*from);
                }
                notes.push(note.clone());
                if matches!(tail, Tail::Uncertified { .. }) {
                    tails_ok = false;
                }
            }
            Tail::Violated { x, slack } => {
                notes.push(format!("tail witness at x = {x}: slack {slack}"));
                return Ok(numeric(Verdict::Infeasible, *slack, *x, notes));
            }
        }
    }

    let mut xs = grid(fd, c, d, lo, hi);
    let mut vals = Vec::with_capacity(xs.len());
    for &x in &xs {
        vals.push(slack(fd, c, d, x)?);
    }
    let (mut min_x, mut min_v) = (xs[0], vals[0]);
    for (&x, &v) in xs.iter().zip(&vals) {
        if v < min_v {
            min_v = v;
            min_x = x;
        }
    }
    // refine every local minimum of the sampled slack
    let mut minima: Vec<usize> = (1..xs.len() - 1)
        .filter(|&i| vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1])
        .collect();
    minima.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap_or(std::cmp::Ordering::Equal));
    minima.truncate(32);
    for i in minima {
        let (a, b) = (xs[i - 1], xs[i + 1]);
        let f = |x: T| slack(fd, c, d, x).unwrap_or(T::nan());
        if let Ok((x, v)) = minimize_unimodal(f, a, b, cfg) {
            if v < min_v || (v == min_v && x < min_x) {
                min_v = v;
                min_x = x;
            }
        }
    }
    xs.clear();

    let scale = T::one().max((c * min_x + d).cosh());
    let tol = cfg.abs_tol.max(T::lit(64.0) * T::epsilon() * scale);
    if min_v < -tol {
        notes.push(format!("grid violation at x = {min_x}"));
        return Ok(numeric(Verdict::Infeasible, min_v, min_x, notes));
    }
    if min_v < zero {
        notes.push(format!("min slack {min_v} within tolerance {tol}; reported as 0"));
        min_v = zero;
    }
    if !whole_line {
        match left_end_certificate(fd, c, d) {
            Some(note) => notes.push(note),
            None => {
                tails_ok = false;
                notes.push(format!("interval (0, {LEFT_EPS}] not certified"));
            }
        }
    }
    notes.push(format!("window [{lo}, {hi}] checked on {} grid points", GRID_POINTS + LOG_POINTS));
    let verdict = if tails_ok { Verdict::Feasible } else { Verdict::Unknown };
    Ok(numeric(verdict, min_v, min_x, notes))
}

fn grid<T: Real>(fd: &FamilyDescriptor<T>, c: T, d: T, lo: T, hi: T) -> Vec<T> {
    let n = GRID_POINTS - 1;
    let mut xs: Vec<T> = (0..=n).map(|i| lo + (hi - lo) * T::lit(i as f64 / n as f64)).collect();
    if fd.support_left.is_finite() {
        // log-spaced points resolve the region next to the support edge
        let (a, b) = ((lo - fd.support_left).ln(), (hi - fd.support_left).ln());
        xs.extend((0..LOG_POINTS).map(|i| fd.support_left + (a + (b - a) * T::lit(i as f64 / LOG_POINTS as f64)).exp()));
    }
    let centre = -d / c;
    for x in [centre, T::zero()] {
        if x > lo && x < hi && fd.in_support(x) {
            xs.push(x);
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    xs.dedup();
    xs
}

/// Tail certificate on `[X, ∞)` (or `(−∞, −X]` when `right` is false).
fn certify_tail<T: Real>(fd: &FamilyDescriptor<T>, c: T, d: T, start: T, right: bool) -> Tail<T> {
    let sign = if right { T::one() } else { -T::one() };
    let tail = fd.t_tail;
    if tail.certified && tail.exp_rate > c {
        let mut y = start;
        for _ in 0..64 {
            let x = sign * y;
            if let Ok(s) = slack(fd, c, d, x) {
                if s < T::zero() {
                    return Tail::Violated { x, slack: s };
                }
            }
            y = y + y;
        }
        return Tail::Uncertified { from: start, note: "tail grows faster than cosh but no violation was located".into() };
    }
    if !tail.certified {
        return Tail::Uncertified { from: start, note: format!("tail beyond |x| = {start} not certified (no envelope for T)") };
    }
    // margin q(y) = log(½e^{cy ± d}) − log(c·envelope(±y))
    let margin = |y: T| -> Option<T> {
        let env = fd.t_envelope(sign * y)?;
        Some(c * y + sign * d - T::LN_2() - (c * env).ln())
    };
    let mut y = start;
    for _ in 0..64 {
        if let (Some(q), Some(slope)) = (margin(y), fd.envelope_log_slope_bound(sign * y)) {
            if slope <= c && q >= T::LN_10() {
                return Tail::Certified {
                    from: y,
                    note: format!(
                        "{} tail certified beyond |x| = {y}: envelope log-slope <= {slope} <= c, log-margin {q}",
                        if right { "right" } else { "left" }
                    ),
                };
            }
        }
        y = y + y;
    }
    Tail::Uncertified { from: start, note: "tail margin did not become positive".into() }
}

/// Certificate for `(a, a + ε]` on half-line families whose envelope of `T`
/// is nondecreasing there: `c·env(a + ε)` against the minimum of `cosh`.
fn left_end_certificate<T: Real>(fd: &FamilyDescriptor<T>, c: T, d: T) -> Option<String> {
    let eps = T::lit(LEFT_EPS);
    let monotone_envelope = matches!(fd.kind, FamilyKind::Gamma { .. } | FamilyKind::Kummer { .. });
    if !monotone_envelope {
        return None;
    }
    let env = fd.t_envelope(fd.support_left + eps)?;
    let (u0, u1) = (c * fd.support_left + d, c * (fd.support_left + eps) + d);
    let min_cosh = if u0 <= T::zero() && u1 >= T::zero() { T::one() } else { u0.cosh().min(u1.cosh()) };
    let m = min_cosh - c * env;
    if m >= T::zero() {
        Some(format!("interval (0, {eps}] certified: cosh >= {min_cosh} > c*T <= {}", c * env))
    } else {
        None
    }
}
