//! Generating densities `s = e^{-b}` of six natural exponential families and
//! the quantities the hazard-rate criterion needs from them: `b′`, `b″`,
//! `T = 1/√b″`, the Laplace transform `L` on `Λ` and the member densities
//! `e^{−λx} s(x) / L(λ)`.

mod kummer;

pub use kummer::{dyson_rhs, kummer_laplace, kummer_laplace_quadrature};

use std::fmt;
use std::str::FromStr;

use crate::numerics::{find_root_newton, integrate_adaptive, QuadratureResult, ToleranceConfig};
use crate::specfun::{
    digamma, digamma_real, half_ln_two_pi_const, ln_gamma, log_gamma, stirling_series, trigamma,
    trigamma_real, ComplexValue,
};
use crate::{Error, Real, Result};

/// Largest `α` for which the quartic lower bound on the Ressel curvature is
/// positive: the root of `α³ + 3α² − 4α − 8`.
pub const RESSEL_GLASER_UPPER: f64 = 1.778_457_118_258_389;

/// Root of `1 + 4α − 6α² + α⁴` beyond which the Ressel upper bound turns negative.
pub const RESSEL_UPPER_BOUND_ROOT: f64 = 1.903_211_925_911_553;

/// One of the supported generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyKind<T> {
    Normal { sigma: T },
    Gamma { alpha: T },
    InverseGaussian { alpha: T },
    HyperbolicCosine { alpha: T },
    Ressel { alpha: T },
    Kummer { a: T, b: T },
}

impl<T: Real> FamilyKind<T> {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: T| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
            }
        };
        match *self {
            FamilyKind::Normal { sigma } => positive("sigma", sigma),
            FamilyKind::Gamma { alpha }
            | FamilyKind::InverseGaussian { alpha }
            | FamilyKind::HyperbolicCosine { alpha }
            | FamilyKind::Ressel { alpha } => positive("alpha", alpha),
            FamilyKind::Kummer { a, b } => {
                positive("a", a)?;
                if b.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!("b must be finite, got {b}")))
                }
            }
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilyKind::Normal { .. } => "normal",
            FamilyKind::Gamma { .. } => "gamma",
            FamilyKind::InverseGaussian { .. } => "ig",
            FamilyKind::HyperbolicCosine { .. } => "hc",
            FamilyKind::Ressel { .. } => "ressel",
            FamilyKind::Kummer { .. } => "kummer",
        }
    }
}

impl<T: Real> fmt::Display for FamilyKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyKind::Normal { sigma } => write!(f, "normal:{sigma}"),
            FamilyKind::Gamma { alpha } => write!(f, "gamma:{alpha}"),
            FamilyKind::InverseGaussian { alpha } => write!(f, "ig:{alpha}"),
            FamilyKind::HyperbolicCosine { alpha } => write!(f, "hc:{alpha}"),
            FamilyKind::Ressel { alpha } => write!(f, "ressel:{alpha}"),
            FamilyKind::Kummer { a, b } => write!(f, "kummer:{a}:{b}"),
        }
    }
}

/// Parses `normal:σ`, `gamma:α`, `ig:α`, `hc:α`, `ressel:α`, `kummer:a:b`.
impl<T: Real> FromStr for FamilyKind<T> {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unrecognized family spec '{spec}'"));
        let mut parts = spec.trim().split(':');
        let tag = parts.next().ok_or_else(bad)?.to_ascii_lowercase();
        let nums = parts
            .map(|p| p.trim().parse::<f64>().map(T::lit).map_err(|_| bad()))
            .collect::<Result<Vec<T>>>()?;
        let kind = match (tag.as_str(), nums.as_slice()) {
            ("normal", [s]) => FamilyKind::Normal { sigma: *s },
            ("gamma", [a]) => FamilyKind::Gamma { alpha: *a },
            ("ig", [a]) => FamilyKind::InverseGaussian { alpha: *a },
            ("hc", [a]) => FamilyKind::HyperbolicCosine { alpha: *a },
            ("ressel", [a]) => FamilyKind::Ressel { alpha: *a },
            ("kummer", [a, b]) => FamilyKind::Kummer { a: *a, b: *b },
            _ => return Err(bad()),
        };
        kind.validate()?;
        Ok(kind)
    }
}

/// Open interval `(lo, hi)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpenInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> OpenInterval<T> {
    pub fn contains(&self, x: T) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }
}

/// Growth of `T(x)` in the tails: `T(x) ~ C·e^{ρ|x|}·|x|^deg`.
///
/// `certified` is true only when the descriptor also supplies an envelope
/// [`FamilyDescriptor::t_envelope`] valid on the whole support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailGrowth<T> {
    pub exp_rate: T,
    pub poly_degree: T,
    pub certified: bool,
}

/// Immutable description of one generator.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyDescriptor<T> {
    pub kind: FamilyKind<T>,
    /// Left end `a` of the support; `−∞` for the whole line.
    pub support_left: T,
    pub lambda_domain: OpenInterval<T>,
    pub vf_text: String,
    pub log_concavity_note: String,
    pub t_tail: TailGrowth<T>,
}

/// Builds the descriptor for `kind`.
pub fn make_family<T: Real>(kind: FamilyKind<T>) -> Result<FamilyDescriptor<T>> {
    kind.validate()?;
    let zero = T::zero();
    let one = T::one();
    let inf = T::infinity();
    let half_line = OpenInterval { lo: zero, hi: inf };
    let uncertified = TailGrowth { exp_rate: zero, poly_degree: zero, certified: false };
    let fd = match kind {
        FamilyKind::Normal { sigma } => FamilyDescriptor {
            kind,
            support_left: -inf,
            lambda_domain: OpenInterval { lo: -inf, hi: inf },
            vf_text: format!("V(mu) = sigma^2 = {}, Omega = R", sigma * sigma),
            log_concavity_note: "log-concave for every sigma: b''(x) = 1/sigma^2".into(),
            t_tail: TailGrowth { exp_rate: zero, poly_degree: zero, certified: true },
        },
        FamilyKind::Gamma { alpha } => {
            let (note, tail) = if alpha > one {
                (
                    "log-concave (alpha > 1): T(x) = x/sqrt(alpha-1)".to_string(),
                    TailGrowth { exp_rate: zero, poly_degree: one, certified: true },
                )
            } else if alpha == one {
                (
                    "degenerate (alpha = 1): s(x) ≡ 1, b'' ≡ 0; two-point mixtures of exponentials have decreasing hazard"
                        .to_string(),
                    uncertified,
                )
            } else {
                ("log-convex (alpha < 1): b''(x) = (alpha-1)/x^2 < 0".to_string(), uncertified)
            };
            FamilyDescriptor {
                kind,
                support_left: zero,
                lambda_domain: half_line,
                vf_text: "V(mu) = mu^2/alpha, Omega = (0, inf)".into(),
                log_concavity_note: note,
                t_tail: tail,
            }
        }
        FamilyKind::InverseGaussian { .. } => FamilyDescriptor {
            kind,
            support_left: zero,
            lambda_domain: half_line,
            vf_text: "V(mu) = mu^3/alpha^2, Omega = (0, inf)".into(),
            log_concavity_note:
                "not log-concave: b''(x) = (2 alpha^2 - 3x)/(2x^3) < 0 for x > 2 alpha^2/3; the sufficient condition does not apply"
                    .into(),
            t_tail: uncertified,
        },
        FamilyKind::HyperbolicCosine { alpha } => {
            let two = T::lit(2.0);
            let (note, tail) = if alpha == one {
                (
                    "log-concave (alpha >= 1): T(x) = (2/pi) cosh(pi x/2)".to_string(),
                    TailGrowth { exp_rate: T::FRAC_PI_2(), poly_degree: zero, certified: true },
                )
            } else if alpha == two {
                (
                    "log-concave (alpha >= 1): T(x) <= (2/pi) sqrt(3 + (pi x/2)^2)".to_string(),
                    TailGrowth { exp_rate: zero, poly_degree: one, certified: true },
                )
            } else if alpha > one {
                ("log-concave (alpha >= 1); tail growth of T not certified for this alpha".to_string(), uncertified)
            } else {
                let lo = alpha * ((two + alpha) / (two - alpha)).sqrt();
                let hi = (two + alpha) / T::lit(3.0).sqrt();
                (format!("not log-concave (alpha < 1): b'' < 0 somewhere in ({lo:.4}, {hi:.4})"), uncertified)
            };
            FamilyDescriptor {
                kind,
                support_left: -inf,
                lambda_domain: OpenInterval { lo: -T::FRAC_PI_2(), hi: T::FRAC_PI_2() },
                vf_text: "V(mu) = mu^2/alpha + alpha, Omega = R".into(),
                log_concavity_note: note,
                t_tail: tail,
            }
        }
        FamilyKind::Ressel { .. } => FamilyDescriptor {
            kind,
            support_left: zero,
            lambda_domain: half_line,
            vf_text: "V(mu) = (mu^2/alpha)(1 + mu/alpha), Omega = (0, inf)".into(),
            log_concavity_note: format!(
                "stated Glaser set [1, a] with a in (1.77, 1.91), lower-bound certificate up to {RESSEL_GLASER_UPPER}; \
                 evaluated curvature b''(x) = psi'(x+alpha+1) - 1/x + (alpha-1)/x^2 behaves like -3/(2x^2) at infinity, \
                 so s_alpha is not log-concave for any alpha (for alpha = 1, b'' < 0 on all of (0, inf))"
            ),
            t_tail: TailGrowth { exp_rate: zero, poly_degree: T::lit(0.5), certified: false },
        },
        FamilyKind::Kummer { a, b } => {
            let big_a = a - one;
            let big_b = -b - one;
            let log_concave = big_a >= zero && big_b >= zero && big_a + big_b > zero;
            let tail = if log_concave {
                let deg = if big_b > zero { one } else { T::lit(1.5) };
                TailGrowth { exp_rate: zero, poly_degree: deg, certified: true }
            } else {
                uncertified
            };
            let note = if log_concave {
                format!("log-concave (a >= 1, b <= -1): A = {big_a}, B = {big_b}")
            } else if big_a == zero && big_b == zero {
                "degenerate (a = 1, b = -1): b'' ≡ 0".to_string()
            } else {
                format!("not log-concave: requires a >= 1 and b <= -1 (A = {big_a}, B = {big_b})")
            };
            FamilyDescriptor {
                kind,
                support_left: zero,
                lambda_domain: half_line,
                vf_text: "variance function not explicit".into(),
                log_concavity_note: note,
                t_tail: tail,
            }
        }
    };
    Ok(fd)
}

/// `b″(x)` of `fd`; see [`FamilyDescriptor::b_second`].
pub fn b_second<T: Real>(fd: &FamilyDescriptor<T>, x: T) -> Result<T> {
    fd.b_second(x)
}

/// `T(x) = 1/√b″(x)`; see [`FamilyDescriptor::t_value`].
pub fn t_value<T: Real>(fd: &FamilyDescriptor<T>, x: T) -> Result<T> {
    fd.t_value(x)
}

/// `L(λ)`; see [`FamilyDescriptor::laplace`].
pub fn laplace<T: Real>(fd: &FamilyDescriptor<T>, lambda: T) -> Result<T> {
    fd.laplace(lambda)
}

/// `e^{−λx} s(x) / L(λ)`; see [`FamilyDescriptor::nef_density`].
pub fn nef_density<T: Real>(fd: &FamilyDescriptor<T>, lambda: T, x: T) -> Result<T> {
    fd.nef_density(lambda, x)
}

/// Ressel curvature exactly as printed alongside the sandwich bounds,
/// `−(α−1)/x + (α−1)/x² + ψ′(x+α+1)`. Kept for comparison with
/// [`FamilyDescriptor::b_second`], which differentiates `−log s_α` directly.
pub fn ressel_stated_b_second<T: Real>(alpha: T, x: T) -> Result<T> {
    let am1 = alpha - T::one();
    Ok(-am1 / x + am1 / (x * x) + trigamma_real(x + alpha + T::one())?)
}

/// Lower and upper bounds `(h, g)` on the Ressel curvature from the integral
/// test applied to the trigamma tail.
pub fn ressel_bounds<T: Real>(alpha: T, x: T) -> (T, T) {
    let one = T::one();
    let two = T::lit(2.0);
    // α(1−α) rather than α − α², so the α = 1 case is exact
    let g = (alpha - one) / (x * x) + ((two - alpha) * x + alpha * (one - alpha)) / (x * (x + alpha));
    let h = ((alpha * alpha - one) + alpha * (one - alpha) * x + (two - alpha) * x * x)
        / (x * x * (x + alpha + one));
    (h, g)
}

/// `ln(y / sinh y)` for `y ≥ 0`.
fn ln_y_over_sinh<T: Real>(y: T) -> T {
    if y < T::lit(1e-3) {
        let y2 = y * y;
        -y2 / T::lit(6.0) + y2 * y2 / T::lit(180.0)
    } else {
        y.ln() - y - (-(-T::lit(2.0) * y).exp_m1()).ln() + T::LN_2()
    }
}

impl<T: Real> FamilyDescriptor<T> {
    pub fn in_support(&self, x: T) -> bool {
        x.is_finite() && x > self.support_left
    }

    fn check_support(&self, x: T) -> Result<()> {
        if self.in_support(x) {
            Ok(())
        } else {
            Err(Error::OutsideSupport { x: x.as_f64() })
        }
    }

    /// True when `b″ > 0` on the whole support is established analytically.
    pub fn log_concave(&self) -> bool {
        let one = T::one();
        match self.kind {
            FamilyKind::Normal { .. } => true,
            FamilyKind::Gamma { alpha } => alpha > one,
            FamilyKind::HyperbolicCosine { alpha } => alpha >= one,
            FamilyKind::InverseGaussian { .. } | FamilyKind::Ressel { .. } => false,
            FamilyKind::Kummer { a, b } => {
                let (ba, bb) = (a - one, -b - one);
                ba >= T::zero() && bb >= T::zero() && ba + bb > T::zero()
            }
        }
    }

    /// `log s(x)`.
    pub fn log_s(&self, x: T) -> Result<T> {
        self.check_support(x)?;
        let one = T::one();
        let half = T::lit(0.5);
        let ln2 = T::LN_2();
        let v = match self.kind {
            FamilyKind::Normal { sigma } => {
                let z = x / sigma;
                -half * z * z - sigma.ln() - half_ln_two_pi_const::<T>()
            }
            FamilyKind::Gamma { alpha } => (alpha - one) * x.ln() - ln_gamma(alpha)?,
            FamilyKind::InverseGaussian { alpha } => {
                alpha.ln() - half_ln_two_pi_const::<T>() - T::lit(1.5) * x.ln() - alpha * alpha / (T::lit(2.0) * x)
            }
            FamilyKind::HyperbolicCosine { alpha } => {
                let y = T::FRAC_PI_2() * x.abs();
                if alpha == one {
                    -y - (-T::lit(2.0) * y).exp().ln_1p()
                } else if alpha == T::lit(2.0) {
                    // x/(2 sinh(πx/2)) = (1/π)·y/sinh y
                    ln_y_over_sinh(y) - T::PI().ln()
                } else {
                    let z = ComplexValue::new(half * alpha, half * x);
                    (alpha - T::lit(2.0)) * ln2 - T::PI().ln() - ln_gamma(alpha)? + T::lit(2.0) * log_gamma(z)?.re
                }
            }
            FamilyKind::Ressel { alpha } => {
                if x < T::lit(10.0) {
                    alpha.ln() + (x + alpha - one) * x.ln() - x - ln_gamma(x + alpha + one)?
                } else {
                    // Stirling for Γ(x+α+1) with the x·log x terms cancelled analytically
                    let w = x + alpha + one;
                    alpha.ln() - (x + alpha - one) * ((alpha + one) / x).ln_1p() - T::lit(1.5) * w.ln() + alpha + one
                        - half_ln_two_pi_const::<T>()
                        - stirling_series(w)
                }
            }
            FamilyKind::Kummer { a, b } => (a - one) * x.ln() - (a + b) * x.ln_1p(),
        };
        Ok(v)
    }

    /// `s(x)`.
    pub fn s(&self, x: T) -> Result<T> {
        Ok(self.log_s(x)?.exp())
    }

    /// `b′(x) = −(log s)′(x)`.
    pub fn b_prime(&self, x: T) -> Result<T> {
        self.check_support(x)?;
        let one = T::one();
        let half = T::lit(0.5);
        let v = match self.kind {
            FamilyKind::Normal { sigma } => x / (sigma * sigma),
            FamilyKind::Gamma { alpha } => -(alpha - one) / x,
            FamilyKind::InverseGaussian { alpha } => T::lit(1.5) / x - alpha * alpha / (T::lit(2.0) * x * x),
            FamilyKind::HyperbolicCosine { alpha } => {
                let y = T::FRAC_PI_2() * x;
                if alpha == one {
                    T::FRAC_PI_2() * y.tanh()
                } else if alpha == T::lit(2.0) {
                    if y.abs() < T::lit(1e-3) {
                        T::FRAC_PI_2() * (y / T::lit(3.0) - y * y * y / T::lit(45.0))
                    } else {
                        T::FRAC_PI_2() / y.tanh() - x.recip()
                    }
                } else {
                    digamma(ComplexValue::new(half * alpha, half * x))?.im
                }
            }
            FamilyKind::Ressel { alpha } => digamma_real(x + alpha + one)? - x.ln() - (alpha - one) / x,
            FamilyKind::Kummer { a, b } => -(a - one) / x + (a + b) / (one + x),
        };
        Ok(v)
    }

    /// `b″(x)`; the sign is meaningful.
    pub fn b_second(&self, x: T) -> Result<T> {
        self.check_support(x)?;
        let one = T::one();
        let half = T::lit(0.5);
        let v = match self.kind {
            FamilyKind::Normal { sigma } => (sigma * sigma).recip(),
            FamilyKind::Gamma { alpha } => (alpha - one) / (x * x),
            FamilyKind::InverseGaussian { alpha } => {
                (T::lit(2.0) * alpha * alpha - T::lit(3.0) * x) / (T::lit(2.0) * x * x * x)
            }
            FamilyKind::HyperbolicCosine { alpha } => {
                let y = T::FRAC_PI_2() * x;
                if alpha == one {
                    let ch = y.cosh();
                    T::FRAC_PI_2() * T::FRAC_PI_2() / (ch * ch)
                } else if alpha == T::lit(2.0) && x.abs() >= T::lit(0.1) {
                    let sh = y.sinh();
                    (x * x).recip() - T::FRAC_PI_2() * T::FRAC_PI_2() / (sh * sh)
                } else {
                    half * trigamma(ComplexValue::new(half * alpha, half * x))?.re
                }
            }
            FamilyKind::Ressel { alpha } => {
                trigamma_real(x + alpha + one)? - x.recip() + (alpha - one) / (x * x)
            }
            FamilyKind::Kummer { a, b } => {
                let big_a = a - one;
                let big_b = -b - one;
                let xp = x * (one + x);
                (big_a + T::lit(2.0) * big_a * x + big_b * x * x) / (xp * xp)
            }
        };
        Ok(v)
    }

    /// `T(x) = 1/√b″(x)`; fails where `b″(x) ≤ 0`.
    pub fn t_value(&self, x: T) -> Result<T> {
        if let FamilyKind::HyperbolicCosine { alpha } = self.kind {
            if alpha == T::one() {
                self.check_support(x)?;
                return Ok(T::FRAC_2_PI() * (T::FRAC_PI_2() * x).cosh());
            }
        }
        let b2 = self.b_second(x)?;
        if b2 > T::zero() {
            Ok(b2.sqrt().recip())
        } else {
            Err(Error::NotLogConcave { x: x.as_f64(), b2: b2.as_f64() })
        }
    }

    /// Upper bound `T(x) ≤ envelope(x)` valid on the whole support, when one
    /// is known in closed form.
    pub fn t_envelope(&self, x: T) -> Option<T> {
        if !self.t_tail.certified || !self.in_support(x) {
            return None;
        }
        let one = T::one();
        match self.kind {
            FamilyKind::Normal { sigma } => Some(sigma),
            FamilyKind::Gamma { alpha } => Some(x / (alpha - one).sqrt()),
            FamilyKind::HyperbolicCosine { alpha } if alpha == one => {
                Some(T::FRAC_2_PI() * (T::FRAC_PI_2() * x).cosh())
            }
            FamilyKind::HyperbolicCosine { .. } => {
                let y = T::FRAC_PI_2() * x;
                Some(T::FRAC_2_PI() * (T::lit(3.0) + y * y).sqrt())
            }
            FamilyKind::Kummer { a, b } => {
                let (ba, bb) = (a - one, -b - one);
                Some(x * (one + x) / (ba + T::lit(2.0) * ba * x + bb * x * x).sqrt())
            }
            _ => None,
        }
    }

    /// Upper bound on `sup_{t ≥ |x|} (log envelope)′(t)` for `x ≠ 0`; the
    /// envelopes of whole-line families are even, so the same bound serves
    /// the left tail.
    pub fn envelope_log_slope_bound(&self, x: T) -> Option<T> {
        if !self.t_tail.certified {
            return None;
        }
        let ax = x.abs();
        let one = T::one();
        match self.kind {
            FamilyKind::Normal { .. } => Some(T::zero()),
            FamilyKind::HyperbolicCosine { alpha } if alpha == one => Some(T::FRAC_PI_2()),
            FamilyKind::Gamma { .. } | FamilyKind::HyperbolicCosine { .. } => Some(ax.recip()),
            FamilyKind::Kummer { .. } => Some(ax.recip() + (one + ax).recip()),
            _ => None,
        }
    }

    /// Plotting/checking window covering the bulk of typical members.
    pub fn default_window(&self) -> (T, T) {
        let lit = T::lit;
        match self.kind {
            FamilyKind::Normal { sigma } => (lit(-10.0) * sigma, lit(10.0) * sigma),
            FamilyKind::HyperbolicCosine { .. } => (lit(-15.0), lit(15.0)),
            FamilyKind::InverseGaussian { alpha } => (lit(1e-3), lit(10.0) * alpha * alpha),
            _ => (lit(1e-3), lit(40.0)),
        }
    }

    /// Points at which `b″` is probed when looking for curvature failures.
    pub fn curvature_probes(&self) -> Vec<T> {
        let mut xs = Vec::new();
        let n = 240;
        for i in 0..=n {
            // log-spaced over [1e-8, 1e8]
            let e = T::lit(-8.0 + 16.0 * i as f64 / n as f64);
            xs.push(T::lit(10.0).powf(e));
        }
        for i in 0..=400 {
            xs.push(T::lit(0.05 * i as f64));
        }
        if self.support_left.is_infinite() {
            let neg: Vec<T> = xs.iter().map(|&x| -x).collect();
            xs.extend(neg);
            xs.push(T::zero());
        }
        xs.retain(|&x| self.in_support(x));
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        xs.dedup();
        xs
    }

    /// First probe point (in ascending order) with `b″ ≤ 0`, with the value there.
    pub fn curvature_witness(&self) -> Option<(T, T)> {
        if self.log_concave() {
            return None;
        }
        for x in self.curvature_probes() {
            match self.b_second(x) {
                Ok(b2) if b2 > T::zero() => {}
                Ok(b2) => return Some((x, b2)),
                Err(_) => {}
            }
        }
        None
    }

    fn lambda_boundary_allowed(&self, lambda: T) -> bool {
        if lambda != T::zero() {
            return false;
        }
        match self.kind {
            FamilyKind::InverseGaussian { .. } | FamilyKind::Ressel { .. } => true,
            FamilyKind::Kummer { b, .. } => b > T::zero(),
            _ => false,
        }
    }

    /// True when `λ` lies in `Λ` or on a boundary point where `L(λ)` is finite.
    pub fn admits_lambda(&self, lambda: T) -> bool {
        lambda.is_finite() && (self.lambda_domain.contains(lambda) || self.lambda_boundary_allowed(lambda))
    }

    fn check_lambda(&self, lambda: T) -> Result<()> {
        if self.admits_lambda(lambda) {
            Ok(())
        } else {
            Err(Error::OutsideNaturalDomain { lambda: lambda.as_f64() })
        }
    }

    /// `k(λ) = log L(λ)`.
    ///
    /// Accepts `λ = 0` on the boundary of `Λ` where the transform is still
    /// finite (inverse Gaussian, Ressel, Kummer with `b > 0`).
    pub fn log_laplace(&self, lambda: T) -> Result<T> {
        self.check_lambda(lambda)?;
        let v = match self.kind {
            FamilyKind::Normal { sigma } => T::lit(0.5) * sigma * sigma * lambda * lambda,
            FamilyKind::Gamma { alpha } => -alpha * lambda.ln(),
            FamilyKind::InverseGaussian { alpha } => -alpha * (T::lit(2.0) * lambda).sqrt(),
            FamilyKind::HyperbolicCosine { alpha } => -alpha * lambda.cos().ln(),
            FamilyKind::Ressel { alpha } => -alpha * ressel_inverse_laplace(lambda)?.ln(),
            FamilyKind::Kummer { a, b } => kummer_laplace(a, b, lambda)?.ln(),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow("log Laplace transform"))
        }
    }

    /// `L(λ) = ∫ e^{−λx} s(x) dx`.
    pub fn laplace(&self, lambda: T) -> Result<T> {
        Ok(self.log_laplace(lambda)?.exp())
    }

    /// `log` of the member density `e^{−λx − k(λ)} s(x)`.
    pub fn log_nef_density(&self, lambda: T, x: T) -> Result<T> {
        let k = self.log_laplace(lambda)?;
        Ok(self.log_s(x)? - lambda * x - k)
    }

    /// Member density `e^{−λx} s(x) / L(λ)`.
    pub fn nef_density(&self, lambda: T, x: T) -> Result<T> {
        Ok(self.log_nef_density(lambda, x)?.exp())
    }

    /// `∫ e^{−λx} s(x) dx` by adaptive quadrature, independent of the closed forms.
    ///
    /// On `(0, ∞)` the piece over `(0, 1]` is mapped by `x = e^{−u}`, which
    /// turns power singularities at the origin into exponential decay.
    pub fn laplace_quadrature(&self, lambda: T, cfg: &ToleranceConfig<T>) -> Result<QuadratureResult<T>> {
        self.check_lambda(lambda)?;
        let cfg = cfg.relative_only();
        let g = |x: T| self.log_s(x).map(|ls| (ls - lambda * x).exp()).unwrap_or(T::nan());
        if self.support_left.is_infinite() {
            return integrate_adaptive(g, T::neg_infinity(), T::infinity(), &cfg);
        }
        let left = integrate_adaptive(
            |u: T| {
                let x = (-u).exp();
                if x > T::zero() {
                    g(x) * x
                } else {
                    T::zero()
                }
            },
            T::zero(),
            T::infinity(),
            &cfg,
        )?;
        let right = integrate_adaptive(g, T::one(), T::infinity(), &cfg)?;
        Ok(QuadratureResult {
            value: left.value + right.value,
            abs_err_estimate: left.abs_err_estimate + right.abs_err_estimate,
            subdivisions: left.subdivisions + right.subdivisions,
        })
    }
}

/// `y = 1/L₁(λ)`: the root in `[1, ∞)` of `y − log y = 1 + λ`.
pub fn ressel_inverse_laplace<T: Real>(lambda: T) -> Result<T> {
    if !(lambda >= T::zero() && lambda.is_finite()) {
        return Err(Error::OutsideNaturalDomain { lambda: lambda.as_f64() });
    }
    let one = T::one();
    if lambda == T::zero() {
        return Ok(one);
    }
    let target = one + lambda;
    let cfg = ToleranceConfig {
        rel_tol: T::epsilon() * T::lit(4.0),
        abs_tol: T::epsilon() * target,
        ..ToleranceConfig::default()
    };
    // y − log y ≥ y/2, so the root lies below 2(1 + λ)
    find_root_newton(|y: T| (y - y.ln() - target, one - y.recip()), one, T::lit(2.0) * target, &cfg)
}
