use super::ln_gamma;
use crate::{Error, Real, Result};

const MAX_TERMS: usize = 10_000;

/// Γ(α, x)·eˣ·x^{1−α}, finite and well scaled for large `x`.
///
/// For `x ≥ α + 1` this is `x` times the Legendre continued fraction
/// (modified Lentz); otherwise Γ(α) minus the lower series.
pub fn upper_gamma_scaled<T: Real>(alpha: T, x: T) -> Result<T> {
    check(alpha, x)?;
    if x == T::zero() {
        return Err(Error::InvalidParameter("scaled upper gamma undefined at x = 0".into()));
    }
    if x >= alpha + T::one() {
        return Ok(x * continued_fraction(alpha, x)?);
    }
    let s = lower_series(alpha, x)?;
    let log_full = ln_gamma(alpha)? + x + (T::one() - alpha) * x.ln();
    Ok(log_full.exp() - x * s)
}

/// Γ(α, x) = ∫ₓ^∞ t^{α−1} e^{−t} dt for `α > 0`, `x ≥ 0`.
pub fn upper_incomplete_gamma<T: Real>(alpha: T, x: T) -> Result<T> {
    check(alpha, x)?;
    if x == T::zero() {
        return Ok(ln_gamma(alpha)?.exp());
    }
    if x >= alpha + T::one() {
        let log_prefactor = alpha * x.ln() - x;
        return Ok(log_prefactor.exp() * continued_fraction(alpha, x)?);
    }
    let lower = (alpha * x.ln() - x).exp() * lower_series(alpha, x)?;
    Ok(ln_gamma(alpha)?.exp() - lower)
}

fn check<T: Real>(alpha: T, x: T) -> Result<()> {
    if !(alpha.is_finite() && x.is_finite()) {
        return Err(Error::NonFinite { x: x.as_f64() });
    }
    if alpha <= T::zero() {
        return Err(Error::InvalidParameter(format!("incomplete gamma shape {alpha} must be positive")));
    }
    if x < T::zero() {
        return Err(Error::InvalidParameter(format!("incomplete gamma argument {x} must be non-negative")));
    }
    Ok(())
}

/// Σ xⁿ / (α(α+1)…(α+n)), so that γ(α, x) = x^α e^{−x} · sum.
fn lower_series<T: Real>(alpha: T, x: T) -> Result<T> {
    let mut term = alpha.recip();
    let mut sum = term;
    for n in 1..MAX_TERMS {
        term = term * x / (alpha + T::lit(n as f64));
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNotConverged("lower incomplete gamma"))
}

/// 1/(x+1−α− 1·(1−α)/(x+3−α− 2·(2−α)/(x+5−α− …))), so Γ(α,x) = x^α e^{−x} · cf.
fn continued_fraction<T: Real>(alpha: T, x: T) -> Result<T> {
    let tiny = T::min_positive_value() / T::epsilon();
    let mut b = x + T::one() - alpha;
    let mut c = tiny.recip();
    let mut d = b.recip();
    let mut h = d;
    for i in 1..MAX_TERMS {
        let fi = T::lit(i as f64);
        let an = -fi * (fi - alpha);
        b = b + T::lit(2.0);
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = d * c;
        h = h * delta;
        if (delta - T::one()).abs() <= T::epsilon() {
            return Ok(h);
        }
    }
    Err(Error::SeriesNotConverged("upper incomplete gamma continued fraction"))
}
