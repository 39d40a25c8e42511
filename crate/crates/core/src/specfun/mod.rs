//! Special functions: log-gamma, digamma and trigamma on the right
//! half-plane, the confluent hypergeometric series ₁F₁ and the upper
//! incomplete gamma function.

mod gamma;
mod hyp1f1;
mod incgamma;
mod polygamma;

pub use gamma::{gamma, ln_gamma, log_gamma, recip_gamma, sin_pi};
pub(crate) use gamma::{half_ln_two_pi_const, stirling_series};
pub use hyp1f1::hyp1f1;
pub use incgamma::{upper_gamma_scaled, upper_incomplete_gamma};
pub use polygamma::{digamma, digamma_real, trigamma, trigamma_real};

/// Complex argument/value used by the special functions.
pub type ComplexValue<T> = num_complex::Complex<T>;

use crate::{Error, Real, Result};

pub(crate) fn check_right_half_plane<T: Real>(z: ComplexValue<T>) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite { x: z.re.as_f64() });
    }
    if z.re <= T::zero() {
        return Err(Error::OutsideRightHalfPlane { re: z.re.as_f64() });
    }
    Ok(())
}
