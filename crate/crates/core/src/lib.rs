//! Two-component mixtures of natural exponential families (NEFs) with
//! certified increasing hazard rates.
//!
//! A NEF generated by a density `s = e^{-b}` on `(a, ∞)` has members
//! `exp(-λx - k(λ)) s(x)` for `λ` in the natural domain `Λ`. Mixing two
//! members `λ₁ < λ₂` with weight `p` gives an increasing hazard rate whenever
//! `b` is convex and
//!
//! ```text
//! c·T(x) ≤ cosh(c·x + d)   for all x > a,   T = 1/√b″,
//! ```
//!
//! with `c = (λ₂ − λ₁)/2` and `d = ½·log(p₁/p₂)`. This crate builds such
//! mixtures for six generators, decides feasibility of `(c, d)` analytically
//! and numerically, and checks every certificate against independent oracles.
//!
//! All numerical code is generic over a [`Real`] scalar (`f32` or `f64`);
//! the `*F64` aliases at the crate root fix the scalar to `f64`.
//!
//! ```
//! use ihr_nef::{families::{make_family, FamilyKind}, mixture::{build_plan, hazard}};
//!
//! let fd = make_family(FamilyKind::HyperbolicCosine { alpha: 2.0f64 }).unwrap();
//! let plan = build_plan(&fd, 0.0, 0.9, 0.0).unwrap();
//! assert!((plan.p - 0.5).abs() < 1e-12);
//! let h = hazard(&plan, 1.0).unwrap();
//! assert!(h > 0.0);
//! ```

// `!(a < b)` is used on purpose so that NaN inputs are rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod families;
pub mod mixture;
pub mod numerics;
pub mod specfun;
pub mod verify;

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub use error::{Error, Result};

/// Floating point scalar used throughout the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub type ComplexF64 = num_complex::Complex<f64>;
pub type ToleranceConfigF64 = numerics::ToleranceConfig<f64>;
pub type QuadratureResultF64 = numerics::QuadratureResult<f64>;
pub type FamilyKindF64 = families::FamilyKind<f64>;
pub type FamilyDescriptorF64 = families::FamilyDescriptor<f64>;
pub type MixturePlanF64 = mixture::MixturePlan<f64>;
pub type FeasibilityReportF64 = mixture::FeasibilityReport<f64>;
pub type HazardReportF64 = mixture::HazardReport<f64>;
pub type SignScanReportF64 = verify::SignScanReport<f64>;
