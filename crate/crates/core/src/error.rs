use thiserror::Error;

/// Errors raised by the numerical kernels and the family/mixture evaluators.
///
/// Values are carried as `f64` regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature did not converge (estimate {estimate:e}, error {abs_err:e}, {subdivisions} panels)")]
    QuadratureNotConverged {
        estimate: f64,
        abs_err: f64,
        subdivisions: usize,
    },
    #[error("integrand not finite at x = {x}")]
    IntegrandNotFinite { x: f64 },
    #[error("root not bracketed on [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },
    #[error("root finder did not converge within {iterations} iterations")]
    RootNotConverged { iterations: usize },
    #[error("function not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("argument outside right half-plane (re = {re})")]
    OutsideRightHalfPlane { re: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("series did not converge: {0}")]
    SeriesNotConverged(&'static str),
    #[error("overflow in {0}")]
    Overflow(&'static str),
    #[error("lambda = {lambda} outside natural parameter domain")]
    OutsideNaturalDomain { lambda: f64 },
    #[error("x = {x} outside support")]
    OutsideSupport { x: f64 },
    #[error("density not log-concave at x = {x} (b'' = {b2:e})")]
    NotLogConcave { x: f64, b2: f64 },
    #[error("endpoints outside natural domain: lambda1 = {lambda1}, lambda2 = {lambda2}")]
    EndpointsOutsideDomain { lambda1: f64, lambda2: f64 },
    #[error("survival underflow beyond x = {x}")]
    SurvivalUnderflow { x: f64 },
    #[error("no feasible k: |d| = {d} exceeds d0 = {d0}")]
    NoFeasibleK { d: f64, d0: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
