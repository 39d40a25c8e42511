use crate::families::FamilyDescriptor;
use crate::{Error, Real, Result};

/// Two-point mixture `p·f_{λ₁} + (1−p)·f_{λ₂}` of members of one family.
///
/// `p₁ = p·e^{−k(λ₁)}` and `p₂ = (1−p)·e^{−k(λ₂)}` are the weights in front
/// of `e^{−λᵢx} s(x)`; `c = (λ₂ − λ₁)/2` and `d = ½·log(p₁/p₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixturePlan<T> {
    pub family: FamilyDescriptor<T>,
    pub lambda1: T,
    pub lambda2: T,
    pub p: T,
    pub p1: T,
    pub p2: T,
    pub c: T,
    pub d: T,
    /// `k(λ₁) = log L(λ₁)`.
    pub k1: T,
    /// `k(λ₂) = log L(λ₂)`.
    pub k2: T,
}

fn logistic<T: Real>(z: T) -> T {
    if z >= T::zero() {
        (T::one() + (-z).exp()).recip()
    } else {
        let e = z.exp();
        e / (T::one() + e)
    }
}

fn check_endpoints<T: Real>(fd: &FamilyDescriptor<T>, lambda1: T, lambda2: T) -> Result<()> {
    if fd.admits_lambda(lambda1) && fd.admits_lambda(lambda2) {
        Ok(())
    } else {
        Err(Error::EndpointsOutsideDomain { lambda1: lambda1.as_f64(), lambda2: lambda2.as_f64() })
    }
}

/// Plan with `λ₁,₂ = λ̄ ∓ c` whose weights realise the shift `d`:
/// `p = e^d L(λ₁) / (e^d L(λ₁) + e^{−d} L(λ₂))`.
pub fn build_plan<T: Real>(fd: &FamilyDescriptor<T>, lambda_mid: T, c: T, d: T) -> Result<MixturePlan<T>> {
    if !(c > T::zero() && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("c must be positive and finite, got {c}")));
    }
    if !(d.is_finite() && lambda_mid.is_finite()) {
        return Err(Error::InvalidParameter(format!("d = {d} and lambda_mid = {lambda_mid} must be finite")));
    }
    let lambda1 = lambda_mid - c;
    let lambda2 = lambda_mid + c;
    check_endpoints(fd, lambda1, lambda2)?;
    let k1 = fd.log_laplace(lambda1)?;
    let k2 = fd.log_laplace(lambda2)?;
    let z = T::lit(2.0) * d + k1 - k2;
    let p = logistic(z);
    let q = logistic(-z);
    if !(p > T::zero() && q > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "mixing weight degenerates (log-odds {z}); choose a smaller |d|"
        )));
    }
    Ok(MixturePlan {
        family: fd.clone(),
        lambda1,
        lambda2,
        p,
        p1: p * (-k1).exp(),
        p2: q * (-k2).exp(),
        c,
        d,
        k1,
        k2,
    })
}

/// Plan from explicit `λ₁ < λ₂` and weight `p ∈ (0, 1)`.
pub fn from_components<T: Real>(fd: &FamilyDescriptor<T>, lambda1: T, lambda2: T, p: T) -> Result<MixturePlan<T>> {
    if !(lambda1 < lambda2) {
        return Err(Error::InvalidParameter(format!("need lambda1 < lambda2, got {lambda1}, {lambda2}")));
    }
    if !(p > T::zero() && p < T::one()) {
        return Err(Error::InvalidParameter(format!("p must lie in (0, 1), got {p}")));
    }
    check_endpoints(fd, lambda1, lambda2)?;
    let k1 = fd.log_laplace(lambda1)?;
    let k2 = fd.log_laplace(lambda2)?;
    let q = T::one() - p;
    let half = T::lit(0.5);
    Ok(MixturePlan {
        family: fd.clone(),
        lambda1,
        lambda2,
        p,
        p1: p * (-k1).exp(),
        p2: q * (-k2).exp(),
        c: half * (lambda2 - lambda1),
        d: half * (p.ln() - k1 - q.ln() + k2),
        k1,
        k2,
    })
}

impl<T: Real> MixturePlan<T> {
    pub fn lambda_mid(&self) -> T {
        T::lit(0.5) * (self.lambda1 + self.lambda2)
    }

    /// `(c, d)` recomputed from `λ₁, λ₂, p₁, p₂`.
    pub fn rederive_shape(&self) -> (T, T) {
        let half = T::lit(0.5);
        (half * (self.lambda2 - self.lambda1), half * (self.p1.ln() - self.p2.ln()))
    }

    /// Posterior weight of the first component at `x`,
    /// `p₁e^{−λ₁x} / (p₁e^{−λ₁x} + p₂e^{−λ₂x}) = 1/(1 + e^{−2(cx+d)})`.
    pub fn first_weight(&self, x: T) -> T {
        logistic(T::lit(2.0) * (self.c * x + self.d))
    }
}
