use crate::numerics::{integrate_adaptive, QuadratureResult, ToleranceConfig};
use crate::specfun::{gamma, hyp1f1, ln_gamma, recip_gamma, upper_gamma_scaled};
use crate::{Error, Real, Result};

/// Relative cancellation beyond which a series form is abandoned.
const CANCELLATION_LIMIT: f64 = 1e8;
const LARGEST_INTEGER_B: f64 = 100.0;

/// `C(a, b, λ) = ∫₀^∞ x^{a−1} (1+x)^{−a−b} e^{−λx} dx`.
///
/// `a = 1` with integer `B = −b−1 ≥ 0` uses the finite binomial sum; other
/// `B > −1` use the `e^λ − Σ` series, switching to the scaled incomplete gamma
/// function when that series cancels. Non-integer `b` with `λ ≤ 50` goes
/// through the two-term ₁F₁ decomposition; everything else is integrated.
pub fn kummer_laplace<T: Real>(a: T, b: T, lambda: T) -> Result<T> {
    check(a, b, lambda)?;
    let one = T::one();
    if lambda == T::zero() {
        // beta function of the second kind
        return Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?).exp());
    }
    if a == one {
        let big_b = -b - one;
        if big_b >= T::zero() && big_b == big_b.round() && big_b <= T::lit(LARGEST_INTEGER_B) {
            return Ok(binomial_sum(big_b, lambda));
        }
        if big_b > -one {
            if let Some(v) = truncated_gamma_series(big_b, lambda)? {
                return Ok(v);
            }
            return Ok(upper_gamma_scaled(big_b + one, lambda)? / lambda);
        }
    }
    if b != b.round() && lambda <= T::lit(50.0) {
        let (t1, t2) = dyson_terms(a, b, lambda)?;
        let v = t1 + t2;
        if v > T::zero() && (t1.abs() + t2.abs()) <= T::lit(CANCELLATION_LIMIT) * v {
            return Ok(v);
        }
    }
    Ok(kummer_laplace_quadrature(a, b, lambda, &ToleranceConfig::default())?.value)
}

fn check<T: Real>(a: T, b: T, lambda: T) -> Result<()> {
    if !(a > T::zero() && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter(format!("Kummer parameters a = {a}, b = {b}")));
    }
    if !(lambda.is_finite() && (lambda > T::zero() || (lambda == T::zero() && b > T::zero()))) {
        return Err(Error::OutsideNaturalDomain { lambda: lambda.as_f64() });
    }
    Ok(())
}

/// `B!/λ^{B+1} Σ_{n≤B} λⁿ/n!`, summed from the top term down.
fn binomial_sum<T: Real>(big_b: T, lambda: T) -> T {
    let n_max = big_b.to_usize().unwrap_or(0);
    let mut term = lambda.recip();
    let mut sum = term;
    for n in (1..=n_max).rev() {
        term = term * T::lit(n as f64) / lambda;
        sum = sum + term;
    }
    sum
}

/// `Γ(B+1)/λ^{B+1} [e^λ − Σ_{n≥0} λ^{B+n+1}/Γ(B+n+2)]`, or `None` on heavy cancellation.
fn truncated_gamma_series<T: Real>(big_b: T, lambda: T) -> Result<Option<T>> {
    if lambda > T::lit(700.0) {
        return Ok(None);
    }
    let bp1 = big_b + T::one();
    let mut term = (bp1 * lambda.ln() - ln_gamma(bp1 + T::one())?).exp();
    let mut sum = term;
    let mut n = 0usize;
    while term > T::epsilon() * sum {
        n += 1;
        term = term * lambda / (bp1 + T::lit(n as f64));
        sum = sum + term;
        if n > 100_000 {
            return Err(Error::SeriesNotConverged("Kummer truncated gamma series"));
        }
    }
    let e = lambda.exp();
    let bracket = e - sum;
    if !(bracket > T::zero()) || e > T::lit(CANCELLATION_LIMIT) * bracket {
        return Ok(None);
    }
    Ok(Some((ln_gamma(bp1)? - bp1 * lambda.ln()).exp() * bracket))
}

fn dyson_terms<T: Real>(a: T, b: T, lambda: T) -> Result<(T, T)> {
    let one = T::one();
    let t1 = gamma(b)? * gamma(a)? * recip_gamma(a + b)? * hyp1f1(a, one - b, lambda)?;
    let t2 = gamma(-b)? * lambda.powf(b) * hyp1f1(a + b, one + b, lambda)?;
    Ok((t1, t2))
}

/// Right-hand side of the ₁F₁ decomposition of `C(a, b, λ)`:
/// `Γ(b)Γ(a)/Γ(a+b)·₁F₁(a; 1−b; λ) + Γ(−b) λ^b ₁F₁(a+b; 1+b; λ)`,
/// with `1/Γ` extended by zero at its poles.
pub fn dyson_rhs<T: Real>(a: T, b: T, lambda: T) -> Result<T> {
    if !(a > T::zero()) || b == b.round() || !(lambda > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "decomposition needs a > 0, non-integer b, lambda > 0 (got {a}, {b}, {lambda})"
        )));
    }
    let (t1, t2) = dyson_terms(a, b, lambda)?;
    Ok(t1 + t2)
}

/// `C(a, b, λ)` by quadrature; for `a < 1` the piece over `(0, 1)` is taken
/// in `u = x^a`, which removes the endpoint singularity.
pub fn kummer_laplace_quadrature<T: Real>(
    a: T,
    b: T,
    lambda: T,
    cfg: &ToleranceConfig<T>,
) -> Result<QuadratureResult<T>> {
    check(a, b, lambda)?;
    let one = T::one();
    let cfg = cfg.relative_only();
    let integrand = |x: T| ((a - one) * x.ln() - (a + b) * x.ln_1p() - lambda * x).exp();
    if a >= one {
        return integrate_adaptive(integrand, T::zero(), T::infinity(), &cfg);
    }
    let inv_a = a.recip();
    let near = integrate_adaptive(
        |u: T| {
            let x = u.powf(inv_a);
            (-(a + b) * x.ln_1p() - lambda * x).exp() * inv_a
        },
        T::zero(),
        one,
        &cfg,
    )?;
    let far = integrate_adaptive(integrand, one, T::infinity(), &cfg)?;
    Ok(QuadratureResult {
        value: near.value + far.value,
        abs_err_estimate: near.abs_err_estimate + far.abs_err_estimate,
        subdivisions: near.subdivisions + far.subdivisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tight() -> ToleranceConfig<f64> {
        ToleranceConfig { rel_tol: 1e-13, ..ToleranceConfig::default() }
    }

    #[test]
    fn integer_b_closed_form() {
        for &l in &[0.5f64, 1.0, 2.0] {
            let closed = (1.0 + l) / (l * l);
            assert_relative_eq!(kummer_laplace(1.0, -2.0, l).unwrap(), closed, max_relative = 1e-14);
            let q = kummer_laplace_quadrature(1.0, -2.0, l, &tight()).unwrap().value;
            assert_relative_eq!(q, closed, max_relative = 1e-10);
        }
        assert_relative_eq!(kummer_laplace(1.0, -2.0, 1.0).unwrap(), 2.0);
        // B = 3: 6/λ⁴ (1 + λ + λ²/2 + λ³/6)
        let l = 0.7f64;
        let expect = 6.0 / l.powi(4) * (1.0 + l + l * l / 2.0 + l.powi(3) / 6.0);
        assert_relative_eq!(kummer_laplace(1.0, -4.0, l).unwrap(), expect, max_relative = 1e-14);
    }

    #[test]
    fn non_integer_b_paths_agree_with_quadrature() {
        for &(big_b, l) in &[(0.5f64, 0.3f64), (1.5, 1.0), (2.5, 4.0), (0.5, 30.0), (3.7, 80.0)] {
            let v = kummer_laplace(1.0, -1.0 - big_b, l).unwrap();
            let q = kummer_laplace_quadrature(1.0, -1.0 - big_b, l, &tight()).unwrap().value;
            assert_relative_eq!(v, q, max_relative = 1e-10);
        }
    }

    #[test]
    fn decomposition_triples() {
        for &(a, b, l) in &[(1.5f64, 0.7f64, 1.0f64), (2.0, -0.5, 0.5), (0.5, 0.5, 2.0)] {
            let rhs = dyson_rhs(a, b, l).unwrap();
            let q = kummer_laplace_quadrature(a, b, l, &tight()).unwrap().value;
            assert!(((rhs - q) / q).abs() <= 1e-8, "({a},{b},{l}): {rhs} vs {q}");
        }
        assert_relative_eq!(
            kummer_laplace_quadrature(1.5, 0.7, 1.0, &tight()).unwrap().value,
            0.2196145368713,
            max_relative = 1e-11
        );
    }

    #[test]
    fn beta_at_zero() {
        // β₂(2, 3): Γ(2)Γ(3)/Γ(5) = 1/12
        assert_relative_eq!(kummer_laplace(2.0, 3.0, 0.0).unwrap(), 1.0 / 12.0, max_relative = 1e-13);
        assert!(kummer_laplace(2.0, -3.0, 0.0).is_err());
    }

    #[test]
    fn general_parameters_fall_back_to_quadrature() {
        let v = kummer_laplace(2.0, -3.0, 1.5).unwrap();
        let q = kummer_laplace_quadrature(2.0, -3.0, 1.5, &tight()).unwrap().value;
        assert_relative_eq!(v, q, max_relative = 1e-9);
    }
}
