use super::{check_right_half_plane, ComplexValue};
use crate::{Real, Result};

// B_2 .. B_12
const BERNOULLI: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

const SHIFT: f64 = 10.0;

/// ψ(z) for `re z > 0`.
pub fn digamma<T: Real>(z: ComplexValue<T>) -> Result<ComplexValue<T>> {
    check_right_half_plane(z)?;
    let mut z = z;
    let mut acc = ComplexValue::new(T::zero(), T::zero());
    while z.re < T::lit(SHIFT) {
        acc = acc - z.inv();
        z = z + T::one();
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv2;
    let mut series = ComplexValue::new(T::zero(), T::zero());
    for (k, &b) in BERNOULLI.iter().enumerate() {
        let two_k = T::lit(2.0 * (k as f64 + 1.0));
        series = series + pow * (T::lit(b) / two_k);
        pow = pow * inv2;
    }
    Ok(acc + z.ln() - inv * T::lit(0.5) - series)
}

/// ψ′(z) for `re z > 0`.
pub fn trigamma<T: Real>(z: ComplexValue<T>) -> Result<ComplexValue<T>> {
    check_right_half_plane(z)?;
    let mut z = z;
    let mut acc = ComplexValue::new(T::zero(), T::zero());
    while z.re < T::lit(SHIFT) {
        acc = acc + (z * z).inv();
        z = z + T::one();
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv2 * inv;
    let mut series = inv + inv2 * T::lit(0.5);
    for &b in BERNOULLI.iter() {
        series = series + pow * T::lit(b);
        pow = pow * inv2;
    }
    Ok(acc + series)
}

/// ψ(x) for real `x > 0`.
pub fn digamma_real<T: Real>(x: T) -> Result<T> {
    Ok(digamma(ComplexValue::new(x, T::zero()))?.re)
}

/// ψ′(x) for real `x > 0`.
pub fn trigamma_real<T: Real>(x: T) -> Result<T> {
    Ok(trigamma(ComplexValue::new(x, T::zero()))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::log_gamma;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    type C = ComplexValue<f64>;

    /// Direct partial sum of Σ 1/(n+x)² up to n = 10⁶ with the integral tail 1/(N+x).
    fn trigamma_series(x: f64) -> f64 {
        let n = 1_000_000;
        let mut s = 0.0;
        for k in (0..n).rev() {
            let t = k as f64 + x;
            s += 1.0 / (t * t);
        }
        let tail = 1.0 / (n as f64 + x);
        s + tail + 0.5 / ((n as f64 + x) * (n as f64 + x))
    }

    #[test]
    fn trigamma_at_one_and_two() {
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let series = trigamma_series(1.0);
        assert_relative_eq!(series, zeta2, max_relative = 1e-12);
        assert_relative_eq!(trigamma_real(1.0).unwrap(), series, max_relative = 1e-12);
        assert_relative_eq!(trigamma_real(2.0).unwrap(), zeta2 - 1.0, max_relative = 1e-12);
        assert!((trigamma_real(1.0f64).unwrap() - 1.6449341).abs() < 1e-7);
    }

    #[test]
    fn digamma_known_values() {
        let euler = 0.577_215_664_901_532_9;
        assert_relative_eq!(digamma_real(1.0).unwrap(), -euler, max_relative = 1e-13);
        assert_relative_eq!(digamma_real(0.5).unwrap(), -euler - 2.0 * 2f64.ln(), max_relative = 1e-13);
    }

    #[test]
    fn digamma_is_derivative_of_log_gamma() {
        let z = C::new(1.3, 2.1);
        let h = 1e-5;
        let fd = (log_gamma(z + h).unwrap() - log_gamma(z - h).unwrap()) / (2.0 * h);
        assert!((fd - digamma(z).unwrap()).norm() < 1e-9);
        let fd2 = (digamma(z + h).unwrap() - digamma(z - h).unwrap()) / (2.0 * h);
        assert!((fd2 - trigamma(z).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn trigamma_decreasing_on_real_grid() {
        let mut prev = f64::INFINITY;
        for i in 0..1000 {
            let x = 0.5 + 49.5 * i as f64 / 999.0;
            let v = trigamma_real(x).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn rejects_left_half_plane() {
        assert!(trigamma(C::new(-0.1, 1.0)).is_err());
        assert!(digamma(C::new(0.0, 0.0)).is_err());
    }

    proptest! {
        #[test]
        fn recurrence(re in 0.05f64..30.0, im in -30.0f64..30.0) {
            let z = C::new(re, im);
            let lhs = trigamma(z).unwrap() - trigamma(z + 1.0).unwrap();
            let rhs = (z * z).inv();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1e-300) + 1e-14);
        }

        #[test]
        fn conjugation(re in 0.05f64..30.0, im in -30.0f64..30.0) {
            let z = C::new(re, im);
            let a = trigamma(z.conj()).unwrap();
            let b = trigamma(z).unwrap().conj();
            prop_assert!((a - b).norm() <= 1e-14 * a.norm());
        }
    }
}
