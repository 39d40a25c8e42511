use crate::numerics::ToleranceConfig;
use crate::{Error, Real, Result};

fn finite<T: Real>(x: T, y: T) -> Result<T> {
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite { x: x.as_f64() })
    }
}

/// Safeguarded Newton iteration on a sign-changing bracket.
///
/// `fdf` returns `(f(x), f'(x))`. A Newton step is taken only when it lands
/// strictly inside the current bracket and at least halves `|f|`; otherwise
/// the bracket is bisected. Stops when `|f(x)| ≤ abs_tol` or the bracket is
/// narrower than `max(rel_tol·|x|, abs_tol)`.
pub fn find_root_newton<T: Real, F: FnMut(T) -> (T, T)>(
    mut fdf: F,
    lo: T,
    hi: T,
    cfg: &ToleranceConfig<T>,
) -> Result<T> {
    cfg.validate()?;
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::RootNotBracketed {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let mut a = lo;
    let mut b = hi;
    let fa = finite(a, fdf(a).0)?;
    let fb = finite(b, fdf(b).0)?;
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootNotBracketed {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let neg_at_a = fa < T::zero();
    let half = T::lit(0.5);
    let mut x = half * (a + b);
    let (mut fx, mut dfx) = fdf(x);
    fx = finite(x, fx)?;
    for _ in 0..cfg.max_iterations {
        if fx.abs() <= cfg.abs_tol {
            return Ok(x);
        }
        if (fx < T::zero()) == neg_at_a {
            a = x;
        } else {
            b = x;
        }
        if b - a <= cfg.abs_tol.max(cfg.rel_tol * x.abs()) {
            return Ok(x);
        }
        let step = x - fx / dfx;
        let mut moved = false;
        if step.is_finite() && step > a && step < b {
            let (fs, dfs) = fdf(step);
            let fs = finite(step, fs)?;
            if fs.abs() <= half * fx.abs() {
                x = step;
                fx = fs;
                dfx = dfs;
                moved = true;
            } else if (fs < T::zero()) == neg_at_a {
                a = step;
            } else {
                b = step;
            }
        }
        if !moved {
            x = half * (a + b);
            let (fm, dfm) = fdf(x);
            fx = finite(x, fm)?;
            dfx = dfm;
        }
    }
    Err(Error::RootNotConverged {
        iterations: cfg.max_iterations,
    })
}

/// Root of a monotone function on `[lo, hi]` with `f(lo)·f(hi) ≤ 0`.
///
/// Uses [`find_root_newton`] with a central-difference derivative.
pub fn find_root_monotone<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    lo: T,
    hi: T,
    cfg: &ToleranceConfig<T>,
) -> Result<T> {
    let h0 = T::epsilon().cbrt();
    find_root_newton(
        |x| {
            let fx = f(x);
            let h = h0 * T::one().max(x.abs());
            let xp = (x + h).min(hi);
            let xm = (x - h).max(lo);
            let df = if xp > xm {
                (f(xp) - f(xm)) / (xp - xm)
            } else {
                T::nan()
            };
            (fx, df)
        },
        lo,
        hi,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn cfg() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    #[test]
    fn linear() {
        let x = find_root_monotone(|x: f64| x - 1.0, 0.0, 2.0, &cfg()).unwrap();
        assert_relative_eq!(x, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sinh_equals_one() {
        let x = find_root_monotone(|u: f64| u.sinh() - 1.0, 0.0, 2.0, &cfg()).unwrap();
        assert_relative_eq!(x, (1.0 + 2f64.sqrt()).ln(), max_relative = 1e-10);
        assert_relative_eq!(x, 0.881373587019543, max_relative = 1e-12);
    }

    #[test]
    fn y_minus_log_y() {
        let f = |y: f64| y - y.ln() - 2.0;
        let y = find_root_monotone(f, 1.0, 10.0, &cfg()).unwrap();
        // plain bisection reference
        let (mut a, mut b) = (1.0f64, 10.0f64);
        while b - a > 1e-13 {
            let m = 0.5 * (a + b);
            if f(m) < 0.0 {
                a = m
            } else {
                b = m
            }
        }
        assert_relative_eq!(y, 0.5 * (a + b), max_relative = 1e-10);
        assert!(f(y).abs() < 1e-11);
        assert_relative_eq!(y, 3.146193220620583, max_relative = 1e-10);
    }

    #[test]
    fn flat_derivative_at_bracket_edge() {
        // f'(1) = 0 for x - log x
        let y = find_root_monotone(|y: f64| y - y.ln() - 1.0 - 1e-6, 1.0, 3.0, &cfg()).unwrap();
        assert!((y - y.ln() - 1.0 - 1e-6).abs() < 1e-11);
    }

    #[test]
    fn unbracketed_is_rejected() {
        let err = find_root_monotone(|x: f64| x * x + 1.0, -1.0, 1.0, &cfg()).unwrap_err();
        assert!(matches!(err, Error::RootNotBracketed { .. }));
        let err = find_root_monotone(|x: f64| x, 1.0, -1.0, &cfg()).unwrap_err();
        assert!(matches!(err, Error::RootNotBracketed { .. }));
    }

    #[test]
    fn analytic_derivative_variant() {
        let x = find_root_newton(|x: f64| (x * x - 2.0, 2.0 * x), 0.0, 2.0, &cfg()).unwrap();
        assert_relative_eq!(x, 2f64.sqrt(), max_relative = 1e-12);
    }

    proptest! {
        #[test]
        fn root_sign_consistent(shift in -4.0f64..4.0, slope in 0.1f64..10.0, cube in 0.0f64..2.0) {
            let f = |x: f64| slope * (x - shift) + cube * (x - shift).powi(3);
            let c = cfg();
            let x = find_root_monotone(f, -5.0, 5.0, &c).unwrap();
            prop_assert!((-5.0..=5.0).contains(&x));
            prop_assert!(f(x).abs() <= 10.0 * c.abs_tol || (x - shift).abs() <= 1e-9);
            prop_assert!(f(-5.0) <= 0.0 && f(5.0) >= 0.0);
        }
    }
}
