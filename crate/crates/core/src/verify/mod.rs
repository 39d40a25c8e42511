//! Independent checks: hazard monotonicity on grids, Laplace transforms
//! against quadrature, the constants of the hyperbolic-cosine envelope
//! argument, the Ressel curvature bounds, sign scans of `b″` and the ₁F₁
//! decomposition of the Kummer normalizer.

mod suite;

pub use suite::{run_suite, CheckOutcome, Suite};

use crate::families::{dyson_rhs, kummer_laplace_quadrature, ressel_bounds, ressel_stated_b_second, FamilyDescriptor};
use crate::mixture::{evaluate, hc2_d_max, hc2_gap_minimum, log_density_slope, HazardReport, MixturePlan};
use crate::numerics::{minimize_unimodal, ToleranceConfig};
use crate::{Error, Real, Result};

/// Relative size of the hazard decrease tolerated between grid neighbours.
pub const DROP_TOLERANCE: f64 = 1e-8;

fn linspace<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let m = (n - 1) as f64;
    (0..n).map(|i| lo + (hi - lo) * T::lit(i as f64 / m)).collect()
}

/// Hazard on `n` equally spaced points of `[x_lo, x_hi]`.
///
/// Monotone means both: no neighbour-to-neighbour decrease larger than
/// `1e-8·max h`, and `(log f)′ + h ≥ −1e-8·max h` at every point, the
/// latter having the sign of `h′` because `h′ = h·((log f)′ + h)`.
pub fn check_hazard_monotone<T: Real>(
    plan: &MixturePlan<T>,
    x_lo: T,
    x_hi: T,
    n: usize,
    cfg: &ToleranceConfig<T>,
) -> Result<HazardReport<T>> {
    if n < 100 {
        return Err(Error::InvalidParameter(format!("need at least 100 grid points, got {n}")));
    }
    if !(x_lo < x_hi) || !plan.family.in_support(x_lo) || !plan.family.in_support(x_hi) {
        return Err(Error::InvalidParameter(format!("[{x_lo}, {x_hi}] is not an interval inside the support")));
    }
    let xs = linspace(x_lo, x_hi, n);
    let mut hazard = Vec::with_capacity(n);
    let mut functional = Vec::with_capacity(n);
    for &x in &xs {
        let v = evaluate(plan, x, cfg)?;
        hazard.push(v.hazard);
        functional.push(log_density_slope(plan, x)? + v.hazard);
    }
    let h_max = hazard.iter().fold(T::zero(), |m, &h| m.max(h));
    let tol = T::lit(DROP_TOLERANCE) * h_max;

    let mut max_drop = T::zero();
    let mut drop_location = None;
    for i in 1..n {
        let drop = hazard[i - 1] - hazard[i];
        if drop > max_drop {
            max_drop = drop;
            drop_location = Some(xs[i - 1]);
        }
    }
    let (mut functional_min, mut functional_location) = (functional[0], xs[0]);
    for (&x, &g) in xs.iter().zip(&functional) {
        if g < functional_min {
            functional_min = g;
            functional_location = x;
        }
    }
    let monotone = max_drop <= tol && functional_min >= -tol;
    Ok(HazardReport { xs, hazard, monotone, max_drop, drop_location, functional_min, functional_location })
}

/// `|quadrature − closed form| / closed form` for `L(λ)`.
pub fn crosscheck_laplace<T: Real>(fd: &FamilyDescriptor<T>, lambda: T, cfg: &ToleranceConfig<T>) -> Result<T> {
    let closed = fd.laplace(lambda)?;
    let quad = fd.laplace_quadrature(lambda, cfg)?.value;
    Ok(((quad - closed) / closed).abs())
}

/// Largest shift `v₀` such that `a·cosh x ≤ cosh(ux + v)` for all `x`
/// whenever `|v| ≤ v₀`, for `0 < a ≤ 1 ≤ u`.
///
/// `v₀ = u·log(A/a + uB/a) − log(A + B)` with `A = √((u²−a²)/(u²−1))`,
/// `B = √((1−a²)/(u²−1))`; for `u = 1` it is `−log a`.
pub fn cosh_tangency_shift<T: Real>(a: T, u: T) -> Result<T> {
    let one = T::one();
    if !(a > T::zero() && a <= one && u >= one && u.is_finite()) {
        return Err(Error::InvalidParameter(format!("need 0 < a <= 1 <= u, got a = {a}, u = {u}")));
    }
    if u == one {
        return Ok(-a.ln());
    }
    let den = u * u - one;
    let big_a = ((u * u - a * a) / den).sqrt();
    let big_b = ((one - a * a) / den).sqrt();
    Ok(u * ((big_a + u * big_b) / a).ln() - (big_a + big_b).ln())
}

/// `inf_x [cosh(ux + v) − a·cosh x]`, located on a grid and refined.
///
/// For `u = 1` the difference is `½eˣ(eᵛ − a) + ½e⁻ˣ(e⁻ᵛ − a)`, whose
/// infimum is `√((eᵛ − a)(e⁻ᵛ − a))` when both brackets are non-negative and
/// `−∞` otherwise.
pub fn tangency_residual<T: Real>(a: T, u: T, v: T, cfg: &ToleranceConfig<T>) -> Result<T> {
    if u == T::one() {
        let (ep, em) = (v.exp() - a, (-v).exp() - a);
        return Ok(if ep >= T::zero() && em >= T::zero() { (ep * em).sqrt() } else { T::neg_infinity() });
    }
    let f = |x: T| (u * x + v).cosh() - a * x.cosh();
    // beyond |x| = 40/u the first term dominates by many orders
    let span = T::lit(40.0) / u;
    let xs = linspace(-span, span, 8001);
    let step = xs[1] - xs[0];
    let (mut bx, mut bv) = (xs[0], f(xs[0]));
    for &x in &xs {
        let y = f(x);
        if y < bv {
            bv = y;
            bx = x;
        }
    }
    let (_, m) = minimize_unimodal(f, (bx - step).max(-span), (bx + step).min(span), cfg)?;
    Ok(m.min(bv))
}

/// `√2 − log(1 + √2)`: the largest `|d|` admitting a positive `k`.
pub fn hc2_d0<T: Real>() -> T {
    hc2_d_max()
}

/// Largest `k` with `3k² + (u − d)² ≤ cosh²u` for all `u`:
/// `√((2 − cosh²u_d)·cosh²u_d / 3)` where `sinh 2u_d = 2(u_d − d)`.
pub fn hc2_k_max<T: Real>(d: T) -> Result<T> {
    let d0 = hc2_d0::<T>();
    if !(d.abs() <= d0) {
        return Err(Error::NoFeasibleK { d: d.as_f64(), d0: d0.as_f64() });
    }
    let gap = hc2_gap_minimum(d)?.max(T::zero());
    Ok((gap / T::lit(3.0)).sqrt())
}

/// `min_t [sinh²t − t² − t⁴/3]` on an `n`-point grid of `[lo, hi]`, with its location.
pub fn sinh_quartic_gap<T: Real>(lo: T, hi: T, n: usize) -> (T, T) {
    let three = T::lit(3.0);
    let mut best = (T::infinity(), lo);
    for t in linspace(lo, hi, n.max(2)) {
        let sh = t.sinh();
        let t2 = t * t;
        // leading terms of the series of sinh² past t⁴, free of cancellation near 0
        let v = if t.abs() < T::lit(0.1) {
            let t6 = t2 * t2 * t2;
            T::lit(2.0) * t6 / T::lit(45.0) + t6 * t2 / T::lit(315.0)
        } else {
            sh * sh - t2 - t2 * t2 / three
        };
        if v < best.0 {
            best = (v, t);
        }
    }
    best
}

/// Worst violation of the Ressel bounds `h(x) ≤ b″(x) ≤ g(x)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport<T> {
    pub alpha: T,
    /// `max(h − b″, b″ − g, 0)` over the grid.
    pub max_violation: T,
    pub worst_x: T,
    /// Grid points where `b″ < 0`.
    pub negative_curvature: usize,
}

/// Which curvature the Ressel bounds are compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResselCurvature {
    /// `−(log s_α)″`, differentiated directly.
    Derived,
    /// The printed form `−(α−1)/x + (α−1)/x² + ψ′(x+α+1)`.
    Printed,
}

/// Compares the Ressel curvature with its bounds on `xs`.
pub fn ressel_sandwich<T: Real>(alpha: T, xs: &[T], which: ResselCurvature) -> Result<SandwichReport<T>> {
    let fd = crate::families::make_family(crate::families::FamilyKind::Ressel { alpha })?;
    let mut r = SandwichReport { alpha, max_violation: T::zero(), worst_x: T::nan(), negative_curvature: 0 };
    for &x in xs {
        let b2 = match which {
            ResselCurvature::Derived => fd.b_second(x)?,
            ResselCurvature::Printed => ressel_stated_b_second(alpha, x)?,
        };
        let (h, g) = ressel_bounds(alpha, x);
        let v = (h - b2).max(b2 - g);
        if v > r.max_violation {
            r.max_violation = v;
            r.worst_x = x;
        }
        if b2 < T::zero() {
            r.negative_curvature += 1;
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignDirection {
    PositiveToNegative,
    NegativeToPositive,
}

/// Sign structure of `b″` on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct SignScanReport<T> {
    pub interval: (T, T),
    pub sign_changes: Vec<(T, SignDirection)>,
    pub all_positive: bool,
    pub min_value: T,
    pub argmin: T,
}

/// Scans `b″` on `n` equally spaced points of `[lo, hi]`; each bracketed sign
/// change is bisected to width `1e-8`.
pub fn sign_scan_b2<T: Real>(fd: &FamilyDescriptor<T>, lo: T, hi: T, n: usize) -> Result<SignScanReport<T>> {
    if !(lo < hi) || n < 2 {
        return Err(Error::InvalidParameter(format!("bad scan interval [{lo}, {hi}] with {n} points")));
    }
    let xs = linspace(lo, hi, n);
    let vals = xs.iter().map(|&x| fd.b_second(x)).collect::<Result<Vec<T>>>()?;
    let mut changes = Vec::new();
    for i in 1..n {
        let (pa, pb) = (vals[i - 1] > T::zero(), vals[i] > T::zero());
        if pa == pb {
            continue;
        }
        let (mut a, mut b) = (xs[i - 1], xs[i]);
        let width = T::lit(1e-8);
        while b - a > width {
            let m = T::lit(0.5) * (a + b);
            if (fd.b_second(m)? > T::zero()) == pa {
                a = m;
            } else {
                b = m;
            }
        }
        let dir = if pa { SignDirection::PositiveToNegative } else { SignDirection::NegativeToPositive };
        changes.push((T::lit(0.5) * (a + b), dir));
    }
    let (mut min_value, mut argmin) = (vals[0], xs[0]);
    for (&x, &v) in xs.iter().zip(&vals) {
        if v < min_value {
            min_value = v;
            argmin = x;
        }
    }
    Ok(SignScanReport {
        interval: (lo, hi),
        all_positive: changes.is_empty() && min_value > T::zero(),
        sign_changes: changes,
        min_value,
        argmin,
    })
}

/// Relative difference between the quadrature of `C(a, b, λ)` and its ₁F₁ decomposition.
pub fn dyson_residual<T: Real>(a: T, b: T, lambda: T) -> Result<T> {
    let rhs = dyson_rhs(a, b, lambda)?;
    let cfg = ToleranceConfig { rel_tol: T::lit(1e-13).max(T::epsilon() * T::lit(16.0)), ..ToleranceConfig::default() };
    let q = kummer_laplace_quadrature(a, b, lambda, &cfg)?.value;
    Ok(((rhs - q) / q).abs())
}

/// Smallest weight `p` on `λ₁` meeting the Gamma criterion `d ≥ d₀` when
/// `λ₂ = r·λ₁`: odds `p/(1−p) ≥ r^α·e^{2d₀}`.
pub fn gamma_min_weight<T: Real>(alpha: T, ratio: T) -> Result<T> {
    let one = T::one();
    if !(alpha > one && ratio > one) {
        return Err(Error::InvalidParameter(format!("need alpha > 1 and ratio > 1, got {alpha}, {ratio}")));
    }
    let k = (alpha - one).sqrt();
    let d0 = k.recip().asinh() - alpha.sqrt();
    let odds = (alpha * ratio.ln() + T::lit(2.0) * d0).exp();
    Ok(odds / (one + odds))
}
