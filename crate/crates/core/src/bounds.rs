//! Closed-form bounds: the Poincaré-metric comparison objects, Schottky-type
//! growth bounds, η_K, quasiconformal Schwarz bounds and Mori's quantities.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::distortion::phi_k;
use crate::error::{domain, Result};
use crate::modulus::{grotzsch_u, ln_half_one_plus, product_p, weighted_log_sum, LandenIter};
use crate::special_fns::{DistortionCoeff, PlanePoint, UnitRadius, LANDAU};

/// Default lower bound for Bloch's constant, √3/4.
pub const BLOCH_LOWER: f64 = 0.433_012_701_892_219_3;

/// Largest distance from [0, ln(1+√2)] × [0, 2π] to the omitted lattice
/// {±ln(√n + √(n−1)) + 2mπi}, found by [`derive_lattice_gap`] at spacing 10⁻³.
pub const LATTICE_GAP_D: f64 = 3.171_903_849_454_672_7;

pub const LATTICE_GAP_RESOLUTION: f64 = 1e-3;

/// Grid search behind [`LATTICE_GAP_D`]. Both axes are sampled at multiples
/// of `h` plus the far edge.
pub fn derive_lattice_gap(h: f64) -> Result<f64> {
    if !(h > 0.0 && h < 1.0) {
        return Err(domain(format!("grid spacing must lie in (0,1), got {h}")));
    }
    let width = (1.0 + SQRT_2).ln();
    let height = 2.0 * PI;
    let axis = |end: f64| -> Vec<f64> {
        let mut v: Vec<f64> = (0..=(end / h) as usize)
            .map(|i| i as f64 * h)
            .filter(|&x| x <= end)
            .collect();
        v.push(end);
        v
    };
    // only n ≤ 3 and m ∈ {0, 1} can be nearest to a point of the rectangle
    let mut lattice = Vec::new();
    for n in 1..4 {
        let x = ((n as f64).sqrt() + ((n - 1) as f64).sqrt()).ln();
        for m in 0..2 {
            let y = 2.0 * PI * m as f64;
            lattice.push((x, y));
            lattice.push((-x, y));
        }
    }
    let ys = axis(height);
    let gap = axis(width)
        .into_iter()
        .flat_map(|x| ys.iter().map(move |&y| (x, y)))
        .map(|(x, y)| {
            lattice
                .iter()
                .map(|&(lx, ly)| (x - lx).powi(2) + (y - ly).powi(2))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    Ok(gap.sqrt())
}

/// Constants of the Bloch-route Schottky bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundConfig {
    pub bloch_lower: f64,
    pub lattice_gap_d: f64,
    pub theta: f64,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            bloch_lower: BLOCH_LOWER,
            lattice_gap_d: LATTICE_GAP_D,
            theta: 0.5,
        }
    }
}

impl BoundConfig {
    pub fn new(bloch_lower: f64, lattice_gap_d: f64, theta: f64) -> Result<Self> {
        let cfg = BoundConfig {
            bloch_lower,
            lattice_gap_d,
            theta,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.bloch_lower > 0.0 && self.bloch_lower.is_finite()) {
            return Err(domain("bloch_lower must be positive"));
        }
        if !(self.lattice_gap_d > 0.0 && self.lattice_gap_d.is_finite()) {
            return Err(domain("lattice_gap_d must be positive"));
        }
        if !(0.0..1.0).contains(&self.theta) {
            return Err(domain(format!(
                "theta must lie in [0,1), got {}",
                self.theta
            )));
        }
        Ok(())
    }
}

/// Three pairwise distinct points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriplePoints {
    pub z0: PlanePoint,
    pub z1: PlanePoint,
    pub z2: PlanePoint,
}

impl TriplePoints {
    pub fn new(z0: PlanePoint, z1: PlanePoint, z2: PlanePoint) -> Result<Self> {
        let (a, b, c) = (z0.to_complex(), z1.to_complex(), z2.to_complex());
        if a == b || a == c || b == c {
            return Err(domain("the three points must be pairwise distinct"));
        }
        Ok(TriplePoints { z0, z1, z2 })
    }

    fn arcsin_ratio(&self) -> f64 {
        let (a, b, c) = (
            self.z0.to_complex(),
            self.z1.to_complex(),
            self.z2.to_complex(),
        );
        let ratio = (c - b).norm() / ((c - a).norm() + (b - a).norm());
        ratio.min(1.0).asin()
    }
}

// Branch policy: principal logarithm, square root with Re ≥ 0.
fn branch_ln(z: Complex64) -> Complex64 {
    z.ln()
}

fn branch_sqrt(z: Complex64) -> Complex64 {
    let w = z.sqrt();
    if w.re < 0.0 {
        -w
    } else {
        w
    }
}

fn check_open_unit(z_abs: f64) -> Result<()> {
    if !(z_abs > 0.0 && z_abs < 1.0) {
        return Err(domain(format!("|z| must lie in (0,1), got {z_abs}")));
    }
    Ok(())
}

/// σ*(|z|) = 1/(|z|·(C − ln|z|)), the lower bound for ρ₀,₁ on the punctured disk.
pub fn rho_lower(z_abs: f64) -> Result<f64> {
    check_open_unit(z_abs)?;
    Ok(1.0 / (z_abs * (LANDAU - z_abs.ln())))
}

fn check_off_cut(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(domain(format!("z = {} lies on the branch cut [1,∞)", z.re)));
    }
    Ok(())
}

fn zeta_parts(z: Complex64) -> (Complex64, Complex64) {
    let w = branch_sqrt(1.0 - z);
    ((w - 1.0) / (w + 1.0), w)
}

/// ζ(z) = (√(1−z) − 1)/(√(1−z) + 1).
pub fn zeta_map(z: PlanePoint) -> Result<PlanePoint> {
    let z = z.to_complex();
    check_off_cut(z)?;
    PlanePoint::from_complex(zeta_parts(z).0)
}

/// σ(z) = |ζ′(z)/ζ(z)|·[4 − ln|ζ(z)|]⁻¹ with ζ′ = −1/(w(w+1)²), w = √(1−z).
pub fn sigma_metric(z: PlanePoint) -> Result<f64> {
    let z = z.to_complex();
    check_off_cut(z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(domain("sigma is singular at z = 0"));
    }
    let (zeta, w) = zeta_parts(z);
    let dzeta = -1.0 / (w * (w + 1.0) * (w + 1.0));
    Ok((dzeta / zeta).norm() / (4.0 - zeta.norm().ln()))
}

/// 1/(|z|·|√(z−1)|·[4 − ln|ζ(z)|]), the closed form of σ.
pub fn sigma_closed_form(z: PlanePoint) -> Result<f64> {
    let z = z.to_complex();
    check_off_cut(z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(domain("sigma is singular at z = 0"));
    }
    let (zeta, _) = zeta_parts(z);
    let root = branch_sqrt(z - 1.0).norm();
    Ok(1.0 / (z.norm() * root * (4.0 - zeta.norm().ln())))
}

/// Upper bound for ln|f(z)|: [C + max(ln|f(0)|, 0)]·(1+|z|)/(1−|z|) − C.
pub fn schottky_classical(ln_f0: f64, z_abs: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&z_abs) {
        return Err(domain(format!("|z| must lie in [0,1), got {z_abs}")));
    }
    if z_abs == 0.0 {
        return Ok(ln_f0.max(0.0));
    }
    Ok((LANDAU + ln_f0.max(0.0)) * (1.0 + z_abs) / (1.0 - z_abs) - LANDAU)
}

/// F(w) = ½·ln[1 + 2√(L(1 − L))], L = ln w / 2πi.
///
/// F(1/w̄) = conj F(w): inverting across the unit circle conjugates L.
pub fn schottky_f(w: PlanePoint) -> Result<PlanePoint> {
    let w = w.to_complex();
    if w == Complex64::new(0.0, 0.0) || w == Complex64::new(1.0, 0.0) {
        return Err(domain("w must avoid the omitted values 0 and 1"));
    }
    let l = branch_ln(w) / Complex64::new(0.0, 2.0 * PI);
    let inner = 1.0 + 2.0 * branch_sqrt(l * (1.0 - l));
    PlanePoint::from_complex(0.5 * branch_ln(inner))
}

/// S_f = exp(π·e^{2|F|}).
pub fn schottky_sf(f_abs: f64) -> Result<f64> {
    if f_abs.is_nan() || f_abs < 0.0 {
        return Err(domain(format!("|F| must be nonnegative, got {f_abs}")));
    }
    Ok((PI * (2.0 * f_abs).exp()).exp())
}

/// |F(0)| + (d/B₁)·ln(1/(1−θ)).
pub fn f_growth_bound(f0_abs: f64, cfg: &BoundConfig) -> Result<f64> {
    cfg.validate()?;
    Ok(f0_abs - cfg.lattice_gap_d / cfg.bloch_lower * (-cfg.theta).ln_1p())
}

/// ln β − ln α after moving α below 1 and β above 1.
pub fn schottky_f0_window(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(domain("alpha and beta must be positive"));
    }
    let alpha = if alpha >= 1.0 {
        1.0 / (alpha + 1.0)
    } else {
        alpha
    };
    let beta = if beta <= 1.0 { beta + 1.0 } else { beta };
    Ok(beta.ln() - alpha.ln())
}

/// The image s of the complementary modulus used by η_K.
fn eta_image(k: DistortionCoeff, r: UnitRadius) -> Result<UnitRadius> {
    Ok(phi_k(k, r.complement())?.radius)
}

/// η_K(r) = [P(s)/P(s′)]²·exp(2K·u(r′) − 2u(r)/K), s = φ_K(r′).
pub fn eta_k(k: DistortionCoeff, r: UnitRadius) -> Result<f64> {
    let s = eta_image(k, r)?;
    let kv = k.value();
    let ln_ratio = product_p(s).ln() - product_p(s.complement()).ln();
    let exponent = 2.0 * kv * grotzsch_u(r.complement()) - 2.0 * grotzsch_u(r) / kv;
    Ok((2.0 * ln_ratio + exponent).exp())
}

/// Σ 2^{−n} ln((1 + φ(xₙ))/2) over the ascending Landen sequence of `x`.
fn landen_phi_log_sum(k: DistortionCoeff, x: UnitRadius) -> Result<f64> {
    let mut failure = None;
    let sum = weighted_log_sum(
        LandenIter::new(x).map_while(|(t, tc)| {
            let rn = if t < 1.0 {
                UnitRadius::new(t)
            } else {
                UnitRadius::from_complement(tc)
            };
            match rn.and_then(|rn| phi_k(k, rn)) {
                Ok(s) => Some(ln_half_one_plus(s.value(), s.comp())),
                Err(e) => {
                    failure = Some(e);
                    None
                }
            }
        }),
        None,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(sum),
    }
}

/// exp[2K·u(r′) − 2u(r)/K] · ∏ [(1 + φ_{1/K}(rₙ′))/(1 + φ_K(rₙ))]^{2^{1−n}},
/// rₙ and rₙ′ being the ascending Landen sequences of r and r′.
pub fn theorem3_sfk(k: DistortionCoeff, r: UnitRadius) -> Result<f64> {
    let kv = k.value();
    let exponent = 2.0 * kv * grotzsch_u(r.complement()) - 2.0 * grotzsch_u(r) / kv;
    let num = landen_phi_log_sum(k.recip(), r.complement())?;
    let den = landen_phi_log_sum(k, r)?;
    Ok((exponent + 2.0 * (num - den)).exp())
}

/// Lower and upper bound on |f(z) − f(0)|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzBounds {
    pub lower: f64,
    pub upper: f64,
}

fn schwarz_with_weight(k: DistortionCoeff, z_abs: f64, weight: f64) -> Result<SchwarzBounds> {
    k.require_at_least_one()?;
    check_open_unit(z_abs)?;
    let kv = k.value();
    if kv == 1.0 {
        return Ok(SchwarzBounds {
            lower: z_abs,
            upper: z_abs,
        });
    }
    let ln_p = weight * product_p(UnitRadius::new(z_abs)?).ln();
    let ln_z = z_abs.ln();
    Ok(SchwarzBounds {
        lower: (kv * ln_z + (1.0 - kv) * ln_p).exp(),
        upper: (ln_z / kv + (1.0 - 1.0 / kv) * ln_p).exp(),
    })
}

/// (|z|^K·P^{1−K}, |z|^{1/K}·P^{1−1/K}) with P = P(|z|).
pub fn qc_schwarz_bounds(k: DistortionCoeff, z_abs: f64) -> Result<SchwarzBounds> {
    schwarz_with_weight(k, z_abs, 1.0)
}

/// The same bounds with the product exponents 2^{1−n}, i.e. P replaced by P².
pub fn qc_schwarz_product_bounds(k: DistortionCoeff, z_abs: f64) -> Result<SchwarzBounds> {
    schwarz_with_weight(k, z_abs, 2.0)
}

/// (α, β): the arcsine angles of a triple and of its image.
pub fn triple_angle(points: &TriplePoints, images: &TriplePoints) -> (f64, f64) {
    (points.arcsin_ratio(), images.arcsin_ratio())
}

fn check_angle(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= FRAC_PI_2) {
        return Err(domain(format!("alpha must lie in (0,π/2], got {alpha}")));
    }
    Ok(())
}

/// H(K, α) = sin(α)^{−1/K}.
pub fn mori_h(k: DistortionCoeff, alpha: f64) -> Result<f64> {
    check_angle(alpha)?;
    Ok(alpha.sin().powf(-1.0 / k.value()))
}

/// 2^{1−1/K}·sin^{1/K}(α), unclamped.
pub fn mori_sin_bound(k: DistortionCoeff, alpha: f64) -> Result<f64> {
    k.require_at_least_one()?;
    check_angle(alpha)?;
    let e = 1.0 / k.value();
    Ok(2f64.powf(1.0 - e) * alpha.sin().powf(e))
}

/// [`mori_sin_bound`] capped at 1.
pub fn mori_sin_bound_clamped(k: DistortionCoeff, alpha: f64) -> Result<f64> {
    Ok(mori_sin_bound(k, alpha)?.min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoriVariant {
    Sixteen,
    SixtyFour,
}

impl MoriVariant {
    pub fn base(self) -> f64 {
        match self {
            MoriVariant::Sixteen => 16.0,
            MoriVariant::SixtyFour => 64.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MoriVariant::Sixteen => "sixteen",
            MoriVariant::SixtyFour => "sixtyfour",
        }
    }
}

impl std::str::FromStr for MoriVariant {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sixteen" | "16" => Ok(MoriVariant::Sixteen),
            "sixtyfour" | "64" => Ok(MoriVariant::SixtyFour),
            _ => Err(crate::error::usage(format!(
                "unknown variant {s:?}, expected sixteen or sixtyfour"
            ))),
        }
    }
}

/// c^{1−1/K}·|Δz|^{1/K} with c = 16 or 64.
pub fn mori_holder_bound(k: DistortionCoeff, dz_abs: f64, variant: MoriVariant) -> Result<f64> {
    k.require_at_least_one()?;
    if !(dz_abs >= 0.0 && dz_abs.is_finite()) {
        return Err(domain(format!("|Δz| must be nonnegative, got {dz_abs}")));
    }
    let e = 1.0 / k.value();
    Ok(variant.base().powf(1.0 - e) * dz_abs.powf(e))
}
