//! Hersch–Pfluger distortion φ_K and its generalization φ_K(a, ·).

use std::f64::consts::PI;

use crate::error::Result;
use crate::modulus::{
    grotzsch_u, grotzsch_u_inv, grotzsch_ua, grotzsch_ua_inv, ln_half_one_plus, product_p,
    weighted_log_sum, LandenIter,
};
use crate::special_fns::{hyp_sym, DistortionCoeff, GeneralizedParam, UnitRadius};

/// φ together with the achieved inversion residual |u(φ) − u(r)/K|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiResult {
    pub radius: UnitRadius,
    pub residual: f64,
}

impl PhiResult {
    pub fn value(&self) -> f64 {
        self.radius.value()
    }

    /// √(1 − φ²), accurate when φ is close to 1.
    pub fn comp(&self) -> f64 {
        self.radius.comp()
    }

    fn identity(r: UnitRadius) -> Self {
        PhiResult {
            radius: r,
            residual: 0.0,
        }
    }
}

/// φ_K(r) = u⁻¹(u(r)/K).
///
/// Fails only when the answer is not representable, i.e. its distance from
/// 0 or 1 underflows.
pub fn phi_k(k: DistortionCoeff, r: UnitRadius) -> Result<PhiResult> {
    if k.value() == 1.0 {
        return Ok(PhiResult::identity(r));
    }
    let inv = grotzsch_u_inv(grotzsch_u(r) / k.value())?;
    Ok(PhiResult {
        radius: inv.radius,
        residual: inv.residual,
    })
}

/// φ_K(a, r) = u_a⁻¹(u_a(r)/K).
pub fn phi_ka(a: GeneralizedParam, k: DistortionCoeff, r: UnitRadius) -> Result<PhiResult> {
    if k.value() == 1.0 {
        return Ok(PhiResult::identity(r));
    }
    let inv = grotzsch_ua_inv(a, grotzsch_ua(a, r) / k.value())?;
    Ok(PhiResult {
        radius: inv.radius,
        residual: inv.residual,
    })
}

/// [r/P(r)]^{1/K} · ∏ₙ (1 + φ_{1/K}(rₙ))^{2^{−n}} over the ascending Landen
/// sequence of r, truncated like [`product_p`].
pub fn phi_k_product(k: DistortionCoeff, r: UnitRadius) -> Result<f64> {
    let inv_k = k.recip();
    let mut failure = None;
    let ln_prod = weighted_log_sum(
        LandenIter::new(r).map_while(|(x, xc)| {
            let rn = if xc < 1.0 && x < 1.0 {
                UnitRadius::new(x)
            } else {
                UnitRadius::from_complement(xc)
            };
            match rn.and_then(|rn| phi_k(inv_k, rn)) {
                Ok(s) => Some(ln_half_one_plus(s.value(), s.comp())),
                Err(e) => {
                    failure = Some(e);
                    None
                }
            }
        }),
        None,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let prefactor = (r.value().ln() - product_p(r).ln()) / k.value();
    Ok((prefactor + ln_prod).exp())
}

/// ∂φ_K(a,r)/∂r = (s/(K r))·[s′F(s²) / (r′F(r²))]², s = φ_K(a,r).
pub fn phi_partial_r(a: GeneralizedParam, k: DistortionCoeff, r: UnitRadius) -> Result<f64> {
    let s = phi_ka(a, k, r)?;
    let av = a.value();
    let (x, xc) = (r.value(), r.comp());
    let (sv, sc) = (s.value(), s.comp());
    let bracket = sc * hyp_sym(av, sv * sv, sc * sc) / (xc * hyp_sym(av, x * x, xc * xc));
    Ok(sv / (k.value() * x) * bracket * bracket)
}

/// ∂φ_K(a,r)/∂K = (π/(2K sin πa))·s·s′²·F(s²)·F(s′²), s = φ_K(a,r).
pub fn phi_partial_k(a: GeneralizedParam, k: DistortionCoeff, r: UnitRadius) -> Result<f64> {
    let s = phi_ka(a, k, r)?;
    let av = a.value();
    let (sv, sc) = (s.value(), s.comp());
    let (x, y) = (sv * sv, sc * sc);
    Ok(PI / (2.0 * k.value() * (PI * av).sin()) * sv * y * hyp_sym(av, x, y) * hyp_sym(av, y, x))
}

/// Which form of the auxiliary φ_K(a,r)·r^{∓1/K} to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Lemma3Form {
    /// φ_K(a,r)·r^{1/K}, the uncorrected exponent.
    Literal,
    /// φ_K(a,r)·r^{−1/K}, decreasing from 4^{1−1/K} to 1 at a = 1/2.
    #[default]
    Corrected,
}

pub fn lemma3_fk(
    a: GeneralizedParam,
    k: DistortionCoeff,
    r: UnitRadius,
    form: Lemma3Form,
) -> Result<f64> {
    let s = phi_ka(a, k, r)?.value();
    let e = match form {
        Lemma3Form::Literal => 1.0 / k.value(),
        Lemma3Form::Corrected => -1.0 / k.value(),
    };
    Ok(s * r.value().powf(e))
}
