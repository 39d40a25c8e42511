//! Numerical kernels: adaptive Gauss–Kronrod quadrature over finite and
//! infinite ranges, safeguarded Newton/bisection root finding and
//! one-dimensional minimization.
//!
//! Everything here is a pure function of its arguments.

mod minimize;
mod quadrature;
mod root;

pub use minimize::minimize_unimodal;
pub use quadrature::{integrate_adaptive, QuadratureResult};
pub use root::{find_root_monotone, find_root_newton};

use crate::{Error, Real, Result};

/// Tolerances and iteration caps shared by the numerical kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
    pub max_iterations: usize,
}

/// `1e-10` relative and `1e-12` absolute, loosened to `128 ε` and `ε` for
/// scalars that cannot reach them.
impl<T: Real> Default for ToleranceConfig<T> {
    fn default() -> Self {
        let eps = T::epsilon();
        Self {
            rel_tol: T::lit(1e-10).max(T::lit(128.0) * eps),
            abs_tol: T::lit(1e-12).max(eps),
            max_subdivisions: 2000,
            max_iterations: 200,
        }
    }
}

impl<T: Real> ToleranceConfig<T> {
    pub fn new(rel_tol: T, abs_tol: T) -> Result<Self> {
        let cfg = Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero() && self.rel_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol > T::zero() && self.abs_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions < 10 || self.max_iterations < 10 {
            return Err(Error::InvalidParameter(
                "iteration caps must be at least 10".into(),
            ));
        }
        Ok(())
    }

    /// Same caps, purely relative error control.
    pub(crate) fn relative_only(&self) -> Self {
        Self {
            abs_tol: T::min_positive_value(),
            ..*self
        }
    }
}
