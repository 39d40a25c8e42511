#![allow(clippy::excessive_precision)]

use crate::numerics::ToleranceConfig;
use crate::{Error, Real, Result};

/// Kronrod abscissae on [-1, 1]; odd entries are shared with the 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub abs_err_estimate: T,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    err: T,
}

fn gk15<T: Real, F: FnMut(T) -> Result<T>>(f: &mut F, a: T, b: T) -> Result<Panel<T>> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        let sum = f1 + f2;
        kronrod = kronrod + T::lit(WGK[j]) * sum;
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * sum;
        }
    }
    let value = kronrod * half_len;
    let err = ((kronrod - gauss) * half_len).abs();
    Ok(Panel { a, b, value, err })
}

fn adaptive<T: Real, F: FnMut(T) -> Result<T>>(
    f: &mut F,
    a: T,
    b: T,
    cfg: &ToleranceConfig<T>,
) -> Result<QuadratureResult<T>> {
    let mut panels = vec![gk15(f, a, b)?];
    loop {
        let (value, err) = panels
            .iter()
            .fold((T::zero(), T::zero()), |(v, e), p| (v + p.value, e + p.err));
        if err <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok(QuadratureResult {
                value,
                abs_err_estimate: err,
                subdivisions: panels.len(),
            });
        }
        if panels.len() >= cfg.max_subdivisions {
            return Err(Error::QuadratureNotConverged {
                estimate: value.as_f64(),
                abs_err: err.as_f64(),
                subdivisions: panels.len(),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                let mid = T::lit(0.5) * (p.a + p.b);
                mid > p.a && mid < p.b
            })
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            return Err(Error::QuadratureNotConverged {
                estimate: value.as_f64(),
                abs_err: err.as_f64(),
                subdivisions: panels.len(),
            });
        };
        let p = panels.swap_remove(i);
        let mid = T::lit(0.5) * (p.a + p.b);
        panels.push(gk15(f, p.a, mid)?);
        panels.push(gk15(f, mid, p.b)?);
    }
}

fn checked<T: Real, F: FnMut(T) -> T>(f: &mut F, x: T) -> Result<T> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::IntegrandNotFinite { x: x.as_f64() })
    }
}

/// Integrates `f` over `[lo, hi]`; either end may be infinite.
///
/// Finite ranges use globally adaptive 15-point Gauss–Kronrod panels with
/// error estimate `|K15 − G7|`. A half-line `[A, ∞)` is mapped onto `[0, 1)`
/// by `x = A + t/(1 − t)`; when that fails to converge the range is covered by
/// doubling panels `[A, A+w], [A+w, A+3w], …` until a panel contributes less
/// than `abs_tol`.
pub fn integrate_adaptive<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    lo: T,
    hi: T,
    cfg: &ToleranceConfig<T>,
) -> Result<QuadratureResult<T>> {
    cfg.validate()?;
    if lo.is_nan() || hi.is_nan() {
        return Err(Error::InvalidParameter("NaN integration limit".into()));
    }
    if lo == hi {
        return Ok(QuadratureResult {
            value: T::zero(),
            abs_err_estimate: T::zero(),
            subdivisions: 1,
        });
    }
    if lo > hi {
        let r = integrate_adaptive(f, hi, lo, cfg)?;
        return Ok(QuadratureResult { value: -r.value, ..r });
    }
    let one = T::one();
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => adaptive(&mut |x| checked(&mut f, x), lo, hi, cfg),
        (true, false) => {
            let mapped = adaptive(
                &mut |t: T| {
                    let s = one - t;
                    if s <= T::zero() {
                        return Ok(T::zero());
                    }
                    let y = checked(&mut f, lo + t / s)?;
                    Ok(y / (s * s))
                },
                T::zero(),
                one,
                cfg,
            );
            match mapped {
                Err(Error::QuadratureNotConverged { .. }) => {
                    extend_panels(&mut |x| checked(&mut f, x), lo, one, cfg)
                }
                other => other,
            }
        }
        (false, true) => {
            let mapped = adaptive(
                &mut |t: T| {
                    let s = one - t;
                    if s <= T::zero() {
                        return Ok(T::zero());
                    }
                    let y = checked(&mut f, hi - t / s)?;
                    Ok(y / (s * s))
                },
                T::zero(),
                one,
                cfg,
            );
            match mapped {
                Err(Error::QuadratureNotConverged { .. }) => {
                    extend_panels(&mut |x| checked(&mut f, hi - x), T::zero(), one, cfg)
                }
                other => other,
            }
        }
        (false, false) => {
            let mapped = adaptive(
                &mut |t: T| {
                    let s = one - t;
                    if s <= T::zero() {
                        return Ok(T::zero());
                    }
                    let x = t / s;
                    let y = checked(&mut f, x)? + checked(&mut f, -x)?;
                    Ok(y / (s * s))
                },
                T::zero(),
                one,
                cfg,
            );
            match mapped {
                Err(Error::QuadratureNotConverged { .. }) => extend_panels(
                    &mut |x| Ok(checked(&mut f, x)? + checked(&mut f, -x)?),
                    T::zero(),
                    one,
                    cfg,
                ),
                other => other,
            }
        }
    }
}

/// Covers `[start, ∞)` with panels of doubling width.
fn extend_panels<T: Real, F: FnMut(T) -> Result<T>>(
    f: &mut F,
    start: T,
    width: T,
    cfg: &ToleranceConfig<T>,
) -> Result<QuadratureResult<T>> {
    let mut a = start;
    let mut w = width;
    let mut total = QuadratureResult {
        value: T::zero(),
        abs_err_estimate: T::zero(),
        subdivisions: 0,
    };
    for _ in 0..cfg.max_iterations {
        let panel = adaptive(f, a, a + w, cfg)?;
        total.value = total.value + panel.value;
        total.abs_err_estimate = total.abs_err_estimate + panel.abs_err_estimate;
        total.subdivisions += panel.subdivisions;
        if total.subdivisions > cfg.max_subdivisions {
            break;
        }
        if panel.value.abs() < cfg.abs_tol.max(cfg.rel_tol * total.value.abs()) {
            return Ok(total);
        }
        a = a + w;
        w = w + w;
    }
    Err(Error::QuadratureNotConverged {
        estimate: total.value.as_f64(),
        abs_err: total.abs_err_estimate.as_f64(),
        subdivisions: total.subdivisions,
    })
}
