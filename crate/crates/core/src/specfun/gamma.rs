#![allow(clippy::excessive_precision)]

use super::{check_right_half_plane, ComplexValue};
use crate::{Error, Real, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn half_ln_two_pi<T: Real>() -> T {
    T::lit(0.918_938_533_204_672_741_780_329_736_4)
}

/// Principal branch of log Γ(z) for `re z > 0` (Lanczos, g = 7).
pub fn log_gamma<T: Real>(z: ComplexValue<T>) -> Result<ComplexValue<T>> {
    check_right_half_plane(z)?;
    if z.re < T::lit(0.5) {
        // Γ(z) = Γ(z+1)/z keeps the Lanczos sum away from its poles
        return Ok(lanczos(z + T::one()) - z.ln());
    }
    Ok(lanczos(z))
}

fn lanczos<T: Real>(z: ComplexValue<T>) -> ComplexValue<T> {
    let z = z - T::one();
    let mut acc = ComplexValue::new(T::lit(LANCZOS[0]), T::zero());
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + (z + T::lit(i as f64)).inv() * T::lit(c);
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    (z + T::lit(0.5)) * t.ln() - t + acc.ln() + half_ln_two_pi::<T>()
}

/// log Γ(x) for real `x > 0`.
///
/// Stirling's series for `x ≥ 10`, Lanczos below.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::NonFinite { x: x.as_f64() });
    }
    if x <= T::zero() {
        return Err(Error::OutsideRightHalfPlane { re: x.as_f64() });
    }
    if x >= T::lit(10.0) {
        return Ok((x - T::lit(0.5)) * x.ln() - x + half_ln_two_pi::<T>() + stirling_series(x));
    }
    Ok(log_gamma(ComplexValue::new(x, T::zero()))?.re)
}

/// Bernoulli corrections Σ B_2k / (2k(2k−1) x^{2k−1}) of Stirling's series,
/// accurate to double precision for `x ≥ 10`.
pub(crate) fn stirling_series<T: Real>(x: T) -> T {
    let inv = x.recip();
    let inv2 = inv * inv;
    inv * (T::lit(1.0 / 12.0)
        + inv2
            * (T::lit(-1.0 / 360.0)
                + inv2
                    * (T::lit(1.0 / 1260.0)
                        + inv2
                            * (T::lit(-1.0 / 1680.0)
                                + inv2 * (T::lit(1.0 / 1188.0) + inv2 * T::lit(-691.0 / 360_360.0))))))
}

pub(crate) fn half_ln_two_pi_const<T: Real>() -> T {
    half_ln_two_pi()
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let mut r = x % two;
    if r < T::zero() {
        r = r + two;
    }
    // r in [0, 2)
    let (r, sign) = if r >= T::one() { (r - T::one(), -T::one()) } else { (r, T::one()) };
    if r == T::zero() {
        return T::zero();
    }
    let r = if r > T::lit(0.5) { T::one() - r } else { r };
    sign * (T::PI() * r).sin()
}

/// Γ(x) for real `x` that is not a non-positive integer.
pub fn gamma<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::NonFinite { x: x.as_f64() });
    }
    if x > T::zero() {
        return Ok(ln_gamma(x)?.exp());
    }
    let s = sin_pi(x);
    if s == T::zero() {
        return Err(Error::InvalidParameter(format!("gamma pole at {x}")));
    }
    Ok(T::PI() / (s * ln_gamma(T::one() - x)?.exp()))
}

/// 1/Γ(x), extended by zero at the poles of Γ.
pub fn recip_gamma<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::NonFinite { x: x.as_f64() });
    }
    if x > T::zero() {
        return Ok((-ln_gamma(x)?).exp());
    }
    Ok(sin_pi(x) * ln_gamma(T::one() - x)?.exp() / T::PI())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    type C = ComplexValue<f64>;

    #[test]
    fn integer_values() {
        assert!(log_gamma(C::new(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert_relative_eq!(log_gamma(C::new(5.0, 0.0)).unwrap().re, 24f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(ln_gamma(5.0).unwrap(), 24f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(ln_gamma(21.0f64).unwrap(), 2432902008176640000f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn hyperbolic_secant_identity() {
        // (1/(2π))|Γ((1+ix)/2)|² = 1/(2cosh(πx/2))
        let x = 1.0;
        let lg = log_gamma(C::new(0.5, 0.5 * x)).unwrap();
        let val = (2.0 * lg.re).exp() / (2.0 * std::f64::consts::PI);
        let closed = 1.0 / (2.0 * (std::f64::consts::FRAC_PI_2 * x).cosh());
        assert_relative_eq!(val, closed, max_relative = 1e-13);
        assert!((val - 0.199268).abs() < 1e-6);
    }

    #[test]
    fn real_against_independent_implementation() {
        for i in 0..=400 {
            let x = 0.5 + 99.5 * i as f64 / 400.0;
            let ours = ln_gamma(x).unwrap();
            let reference = statrs::function::gamma::ln_gamma(x);
            let scale = reference.abs().max(1e-3);
            assert!((ours - reference).abs() <= 1e-12 * scale, "x={x}: {ours} vs {reference}");
        }
    }

    #[test]
    fn half_plane_enforced() {
        assert!(matches!(log_gamma(C::new(0.0, 1.0)), Err(Error::OutsideRightHalfPlane { .. })));
        assert!(matches!(log_gamma(C::new(-1.5, 0.0)), Err(Error::OutsideRightHalfPlane { .. })));
        assert!(ln_gamma(-0.5f64).is_err());
    }

    #[test]
    fn reflection_and_reciprocal() {
        assert_relative_eq!(gamma(0.5f64).unwrap(), std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(-0.5f64).unwrap(), -2.0 * std::f64::consts::PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(gamma(-1.5f64).unwrap(), 4.0 / 3.0 * std::f64::consts::PI.sqrt(), max_relative = 1e-13);
        assert!(gamma(-2.0f64).is_err());
        assert_eq!(recip_gamma(-2.0f64).unwrap(), 0.0);
        assert_eq!(recip_gamma(0.0f64).unwrap(), 0.0);
        assert_relative_eq!(recip_gamma(-0.5f64).unwrap(), 1.0 / gamma(-0.5f64).unwrap(), max_relative = 1e-13);
        assert_eq!(sin_pi(3.0f64), 0.0);
        assert_relative_eq!(sin_pi(-0.5f64), -1.0);
    }

    proptest! {
        #[test]
        fn recurrence(re in 0.5f64..20.0, im in -20.0f64..20.0) {
            let z = C::new(re, im);
            let lhs = log_gamma(z + 1.0).unwrap();
            let rhs = z.ln() + log_gamma(z).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0), "z={z}: {lhs} vs {rhs}");
        }

        #[test]
        fn conjugate_symmetry(re in 0.1f64..30.0, im in -30.0f64..30.0) {
            let z = C::new(re, im);
            let a = log_gamma(z).unwrap();
            let b = log_gamma(z.conj()).unwrap();
            prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }
}
