use crate::numerics::ToleranceConfig;
use crate::{Error, Real, Result};

/// Minimum of a unimodal function on `[lo, hi]`, returned as `(x_min, f_min)`.
///
/// Golden-section search narrows the bracket until function comparisons stop
/// being informative, then the sign of a central-difference derivative is
/// bisected. The endpoints are compared last so boundary minima are found.
pub fn minimize_unimodal<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    lo: T,
    hi: T,
    cfg: &ToleranceConfig<T>,
) -> Result<(T, T)> {
    cfg.validate()?;
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::InvalidParameter(format!(
            "minimization interval [{lo}, {hi}] is not a finite interval"
        )));
    }
    let mut eval = |x: T| -> Result<T> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { x: x.as_f64() })
        }
    };
    if lo == hi {
        return Ok((lo, eval(lo)?));
    }
    let inv_phi = T::lit(0.618_033_988_749_894_9);
    let x_tol = |x: T| cfg.abs_tol.max(cfg.rel_tol * x.abs());
    let coarse = T::epsilon().sqrt() * T::lit(10.0) * T::one().max(lo.abs()).max(hi.abs());

    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..cfg.max_iterations {
        if b - a <= coarse {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = eval(x2)?;
        }
        for (x, y) in [(x1, f1), (x2, f2)] {
            if y < best.1 {
                best = (x, y);
            }
        }
    }

    // derivative-sign bisection on a slightly widened bracket
    let w = b - a;
    let mut a = (a - w).max(lo);
    let mut b = (b + w).min(hi);
    let h0 = T::epsilon().cbrt();
    let mut slope = |x: T| -> Result<T> {
        let h = h0 * T::one().max(x.abs());
        let xp = (x + h).min(hi);
        let xm = (x - h).max(lo);
        Ok((eval(xp)? - eval(xm)?) / (xp - xm))
    };
    if slope(a)? < T::zero() && slope(b)? > T::zero() {
        for _ in 0..cfg.max_iterations {
            let m = T::lit(0.5) * (a + b);
            if b - a <= x_tol(m) || m <= a || m >= b {
                break;
            }
            if slope(m)? < T::zero() {
                a = m;
            } else {
                b = m;
            }
        }
    }
    let mut eval = |x: T| -> Result<T> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { x: x.as_f64() })
        }
    };
    let m = T::lit(0.5) * (a + b);
    let fm = eval(m)?;
    let mut candidates = [(m, fm), best, (lo, eval(lo)?), (hi, eval(hi)?)];
    candidates.sort_by(|p, q| p.1.partial_cmp(&q.1).unwrap_or(std::cmp::Ordering::Equal));
    // prefer the refined point when it ties the best value to rounding
    let top = candidates[0];
    if fm - top.1 <= T::epsilon() * T::lit(4.0) * T::one().max(fm.abs()) {
        Ok((m, fm))
    } else {
        Ok(top)
    }
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
    fn parabola() {
        let (x, y) = minimize_unimodal(|u: f64| u * u, -1.0, 1.0, &cfg()).unwrap();
        assert!(x.abs() < 1e-9);
        assert!(y < 1e-18);
    }

    #[test]
    fn cosh_minus_identity() {
        let (x, y) = minimize_unimodal(|u: f64| u.cosh() - u, -2.0, 3.0, &cfg()).unwrap();
        let x_ref = (1.0 + 2f64.sqrt()).ln();
        assert_relative_eq!(x, x_ref, max_relative = 1e-9);
        assert_relative_eq!(y, 2f64.sqrt() - x_ref, max_relative = 1e-12);
        assert!((y - 0.532839).abs() < 1e-6);
    }

    #[test]
    fn kummer_phi_against_grid() {
        let f = |x: f64| 2.0 * (0.5 * x).cosh() - x - 1.0;
        let (x, y) = minimize_unimodal(f, 0.0, 10.0, &cfg()).unwrap();
        // dense grid, step 1e-4, then local refinement
        let mut best = (0.0, f(0.0));
        for i in 0..=100_000 {
            let t = i as f64 * 1e-4;
            if f(t) < best.1 {
                best = (t, f(t));
            }
        }
        let mut h = 1e-4;
        while h > 1e-13 {
            for t in [best.0 - h, best.0 + h] {
                if f(t) < best.1 {
                    best = (t, f(t));
                }
            }
            h *= 0.5;
        }
        assert_relative_eq!(x, best.0, max_relative = 1e-7);
        assert_relative_eq!(y, best.1, max_relative = 1e-10);
        assert!((x - 1.762747).abs() < 1e-6 && (y - 0.065680).abs() < 1e-6);
    }

    #[test]
    fn boundary_minimum() {
        let (x, y) = minimize_unimodal(|u: f64| u.exp(), 0.5, 2.0, &cfg()).unwrap();
        assert_eq!(x, 0.5);
        assert_relative_eq!(y, 0.5f64.exp());
    }

    #[test]
    fn non_finite_is_error() {
        assert!(minimize_unimodal(|u: f64| 1.0 / u, -1.0, 1.0, &cfg()).is_err()
            || minimize_unimodal(|u: f64| (u - 0.3).ln(), 0.0, 1.0, &cfg()).is_err());
        assert!(minimize_unimodal(|_u: f64| f64::NAN, 0.0, 1.0, &cfg()).is_err());
    }

    proptest! {
        #[test]
        fn below_check_grid(center in -3.0f64..3.0, width in 0.1f64..5.0, quartic in 0.0f64..1.0) {
            let f = |x: f64| ((x - center) / width).powi(2) + quartic * (x - center).powi(4) + (0.1 * x).cosh();
            let c = cfg();
            let (x, y) = minimize_unimodal(f, -5.0, 5.0, &c).unwrap();
            prop_assert_eq!(y, f(x));
            for i in 0..=1000 {
                let t = -5.0 + 10.0 * i as f64 / 1000.0;
                prop_assert!(y <= f(t) + c.abs_tol);
            }
        }
    }
}
