use super::MixturePlan;
use crate::families::{FamilyDescriptor, FamilyKind};
use crate::numerics::{integrate_adaptive, ToleranceConfig};
use crate::specfun::{ln_gamma, upper_gamma_scaled};
use crate::{Error, Real, Result};

/// Hazard rate of a plan sampled on a grid, with the outcome of the
/// monotonicity checks.
#[derive(Debug, Clone, PartialEq)]
pub struct HazardReport<T> {
    pub xs: Vec<T>,
    pub hazard: Vec<T>,
    pub monotone: bool,
    /// Largest decrease `h(xᵢ) − h(xᵢ₊₁)` between neighbours, or zero.
    pub max_drop: T,
    /// Left end of the worst decrease.
    pub drop_location: Option<T>,
    /// Minimum over the grid of `(log f)′ + h`, which has the sign of `h′`.
    pub functional_min: T,
    pub functional_location: T,
}

/// Density, survival and hazard of a plan at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValues<T> {
    pub x: T,
    pub log_density: T,
    pub log_survival: T,
    pub density: T,
    pub survival: T,
    pub hazard: T,
}

fn log_sum_exp<T: Real>(a: T, b: T) -> T {
    let m = a.max(b);
    if m == T::neg_infinity() {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

fn check_point<T: Real>(plan: &MixturePlan<T>, x: T) -> Result<()> {
    if plan.family.in_support(x) {
        Ok(())
    } else {
        Err(Error::OutsideSupport { x: x.as_f64() })
    }
}

/// `log f(x)` as `log(p·f_{λ₁}(x) + (1−p)·f_{λ₂}(x))`.
pub fn log_mixture_density<T: Real>(plan: &MixturePlan<T>, x: T) -> Result<T> {
    check_point(plan, x)?;
    let fd = &plan.family;
    let a = plan.p.ln() + fd.log_nef_density(plan.lambda1, x)?;
    let b = (T::one() - plan.p).ln() + fd.log_nef_density(plan.lambda2, x)?;
    Ok(log_sum_exp(a, b))
}

/// Mixture density `p·f_{λ₁}(x) + (1−p)·f_{λ₂}(x)`.
pub fn mixture_density<T: Real>(plan: &MixturePlan<T>, x: T) -> Result<T> {
    Ok(log_mixture_density(plan, x)?.exp())
}

/// The same density written as `s(x)·R(x)` with `R(x) = p₁e^{−λ₁x} + p₂e^{−λ₂x}`.
pub fn mixture_density_via_r<T: Real>(plan: &MixturePlan<T>, x: T) -> Result<T> {
    check_point(plan, x)?;
    let log_r = log_sum_exp(plan.p1.ln() - plan.lambda1 * x, plan.p2.ln() - plan.lambda2 * x);
    Ok((plan.family.log_s(x)? + log_r).exp())
}

/// `(log f)′(x) = −b′(x) − (π₁λ₁ + π₂λ₂)` with posterior weights `πᵢ`.
pub fn log_density_slope<T: Real>(plan: &MixturePlan<T>, x: T) -> Result<T> {
    let w = plan.first_weight(x);
    let mean_lambda = w * plan.lambda1 + (T::one() - w) * plan.lambda2;
    Ok(-plan.family.b_prime(x)? - mean_lambda)
}

/// `−(log f)″(x) = b″(x) − 4c²w(1−w)` with `w` the first posterior weight;
/// non-negative exactly where the mixture density is log-concave.
pub fn glaser_slack<T: Real>(plan: &MixturePlan<T>, x: T) -> Result<T> {
    let w = plan.first_weight(x);
    let c = plan.c;
    Ok(plan.family.b_second(x)? - T::lit(4.0) * c * c * w * (T::one() - w))
}

/// `log ∫ₓ^∞ e^{−λt − k} s(t) dt` for one member.
///
/// Gamma members use the incomplete gamma function. Elsewhere, right of the
/// mode the integrand is divided by its value at `x` before integrating, so
/// far tails keep full relative accuracy; left of the mode the survival is
/// at least its value at the mode and the density is integrated directly.
pub fn member_log_survival<T: Real>(
    fd: &FamilyDescriptor<T>,
    lambda: T,
    x: T,
    cfg: &ToleranceConfig<T>,
) -> Result<T> {
    if !fd.in_support(x) {
        return Err(Error::OutsideSupport { x: x.as_f64() });
    }
    if let FamilyKind::Gamma { alpha } = fd.kind {
        let y = lambda * x;
        // Γ(α, y) = ugs·e^{−y}·y^{α−1}
        return Ok(upper_gamma_scaled(alpha, y)?.ln() - y + (alpha - T::one()) * y.ln() - ln_gamma(alpha)?);
    }
    let cfg = cfg.relative_only();
    let log_fx = fd.log_nef_density(lambda, x)?;
    let slope = -lambda - fd.b_prime(x)?;
    let log_s_x = fd.log_s(x)?;
    if slope < T::zero() {
        let tail = integrate_adaptive(
            |t: T| match fd.log_s(t) {
                Ok(ls) => (ls - log_s_x - lambda * (t - x)).exp(),
                Err(_) => T::nan(),
            },
            x,
            T::infinity(),
            &cfg,
        )?;
        Ok(log_fx + tail.value.ln())
    } else {
        let k = fd.log_laplace(lambda)?;
        let mass = integrate_adaptive(
            |t: T| match fd.log_s(t) {
                Ok(ls) => (ls - lambda * t - k).exp(),
                Err(_) => T::nan(),
            },
            x,
            T::infinity(),
            &cfg,
        )?;
        Ok(mass.value.ln())
    }
}

/// Density, survival and hazard at `x` with the given tolerances.
pub fn evaluate<T: Real>(plan: &MixturePlan<T>, x: T, cfg: &ToleranceConfig<T>) -> Result<PointValues<T>> {
    let log_density = log_mixture_density(plan, x)?;
    let fd = &plan.family;
    let s1 = member_log_survival(fd, plan.lambda1, x, cfg)?;
    let s2 = member_log_survival(fd, plan.lambda2, x, cfg)?;
    let log_survival = log_sum_exp(plan.p.ln() + s1, (T::one() - plan.p).ln() + s2);
    if !(log_survival >= T::min_positive_value().ln()) {
        return Err(Error::SurvivalUnderflow { x: x.as_f64() });
    }
    Ok(PointValues {
        x,
        log_density,
        log_survival,
        density: log_density.exp(),
        survival: log_survival.exp(),
        hazard: (log_density - log_survival).exp(),
    })
}

/// `S(x) = p·S₁(x) + (1−p)·S₂(x)`.
pub fn survival<T: Real>(plan: &MixturePlan<T>, x: T) -> Result<T> {
    Ok(evaluate(plan, x, &ToleranceConfig::default())?.survival)
}

/// Hazard rate `f(x)/S(x)`.
pub fn hazard<T: Real>(plan: &MixturePlan<T>, x: T) -> Result<T> {
    Ok(evaluate(plan, x, &ToleranceConfig::default())?.hazard)
}
