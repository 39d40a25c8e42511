//! Two-point mixtures `p·f_{λ₁} + (1−p)·f_{λ₂}` of NEF members: plan
//! construction, feasibility of `c·T(x) ≤ cosh(cx + d)`, and the density,
//! survival and hazard rate of the mixture.

mod feasibility;
mod hazard;
mod plan;

pub use feasibility::{
    feasibility_analytic, feasibility_numeric, hc2_d_max, hc2_gap_minimum, hc2_tangent_u, ressel_phi_criterion,
    slack, FeasibilityReport, Method, Verdict, ERRATUM_GAMMA_D0, ERRATUM_HC2_K_BOUND, ERRATUM_KUMMER_X0,
    ERRATUM_RESSEL_CURVATURE, ERRATUM_RESSEL_PHI,
};
pub use hazard::{
    evaluate, glaser_slack, hazard, log_density_slope, log_mixture_density, member_log_survival, mixture_density,
    mixture_density_via_r, survival, HazardReport, PointValues,
};
pub use plan::{build_plan, from_components, MixturePlan};

#[cfg(test)]
mod tests;
