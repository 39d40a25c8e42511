use crate::{Error, Real, Result};

const MAX_TERMS: usize = 20_000;
const MAX_ARG: f64 = 50.0;

/// Kummer's confluent hypergeometric series ₁F₁(a; b; λ).
///
/// Summed until three consecutive terms fall below machine precision
/// relative to the partial sum. Negative arguments go through Kummer's
/// transformation ₁F₁(a; b; λ) = e^λ ₁F₁(b−a; b; −λ). Arguments with
/// `|λ| > 50` are rejected.
pub fn hyp1f1<T: Real>(a: T, b: T, lambda: T) -> Result<T> {
    if !(a.is_finite() && b.is_finite() && lambda.is_finite()) {
        return Err(Error::NonFinite { x: lambda.as_f64() });
    }
    if b <= T::zero() && b == b.round() {
        return Err(Error::InvalidParameter(format!(
            "1F1 lower parameter {b} is a non-positive integer"
        )));
    }
    if lambda.abs() > T::lit(MAX_ARG) {
        return Err(Error::InvalidParameter(format!(
            "1F1 argument |{lambda}| exceeds {MAX_ARG}"
        )));
    }
    if lambda < T::zero() {
        let v = lambda.exp() * series(b - a, b, -lambda)?;
        return if v.is_finite() { Ok(v) } else { Err(Error::Overflow("1F1")) };
    }
    series(a, b, lambda)
}

fn series<T: Real>(a: T, b: T, z: T) -> Result<T> {
    let eps = T::epsilon();
    let mut term = T::one();
    let mut sum = T::one();
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = T::lit(n as f64);
        term = term * (a + nf) / (b + nf) * z / (nf + T::one());
        sum = sum + term;
        if !sum.is_finite() {
            return Err(Error::Overflow("1F1 series"));
        }
        if term.abs() <= eps * sum.abs() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::SeriesNotConverged("1F1"))
}
