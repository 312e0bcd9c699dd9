//! Inequality sweep engine.
//!
//! Every target maps a parameter point to a signed margin (positive means the
//! inequality holds). A sweep enumerates the target's grid, evaluates margins,
//! possibly in parallel, and folds them in enumeration order into an
//! [`InequalityReport`].

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    mori_holder_bound, qc_schwarz_bounds, rho_lower, sigma_closed_form, sigma_metric, MoriVariant,
};
use crate::distortion::{lemma3_fk, phi_k, phi_k_product, Lemma3Form};
use crate::error::{usage, Result};
use crate::modulus::{fn_a, fn_b, grotzsch_u, grotzsch_ua, lemma2_constants, product_p};
use crate::special_fns::{
    fourteen_zeta3, ramanujan_r, DistortionCoeff, GeneralizedParam, PlanePoint, UnitRadius,
};

pub const SCHEMA_VERSION: &str = "v1";

/// Violations kept verbatim in a report; the full count is `violation_count`.
pub const MAX_LISTED_VIOLATIONS: usize = 100;

const EQ5_ANGLES: usize = 32;
const EQ5_ALLOWANCE: f64 = 1e-12;
const STD_PHI_ALLOWANCE: f64 = 1e-9;
const THM4_ALLOWANCE: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Asserted,
    ReportOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ReportOnly => "report_only",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Eq5Chain,
    Lemma2Item1,
    Lemma2Item2,
    Lemma2Item3,
    Eq42SandwichLiteral,
    Eq42SandwichCprime,
    Eq48C1Bracket,
    Lemma3Literal,
    Lemma3Corrected,
    Eq49ProductEquality,
    Eq54Sinbeta,
    Eq55SumSquare,
    Eq59HProduct,
    Eq60Phi4bound,
    Eq61PhiCos,
    Eq62RatioInfinitesimal,
    Eq64Extremal8,
    PaperPhiIdentityLiteral,
    StdPhiIdentity,
    Thm4K1Equality,
    MoriRadial16,
    MoriRadial64,
    /// φ₂(r) ≤ r, false everywhere on (0,1); keeps the harness honest.
    PlantedFalse,
}

use Target::*;

const REGISTRY: [Target; 22] = [
    Eq5Chain,
    Lemma2Item1,
    Lemma2Item2,
    Lemma2Item3,
    Eq42SandwichLiteral,
    Eq42SandwichCprime,
    Eq48C1Bracket,
    Lemma3Literal,
    Lemma3Corrected,
    Eq49ProductEquality,
    Eq54Sinbeta,
    Eq55SumSquare,
    Eq59HProduct,
    Eq60Phi4bound,
    Eq61PhiCos,
    Eq62RatioInfinitesimal,
    Eq64Extremal8,
    PaperPhiIdentityLiteral,
    StdPhiIdentity,
    Thm4K1Equality,
    MoriRadial16,
    MoriRadial64,
];

/// How grid points of a target are laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    /// z = |z|e^{iθ} over the r grid and a fixed angle set, Re z < 1/2.
    Plane,
    /// a values × r grid.
    AR,
    /// a = r/2 over the r grid.
    AHalf,
    /// a values × K > 1 × adjacent r pairs.
    AKPairs,
    /// K values × r grid.
    KR,
    /// K ≥ 1 × r grid.
    KAtLeastOneR,
    /// K ≥ 1 × α = rπ/2.
    KAlpha,
    /// r grid only.
    R,
    /// K ≥ 1 × random pairs in the disk.
    Samples,
}

impl Target {
    pub fn id(self) -> &'static str {
        match self {
            Eq5Chain => "eq5_chain",
            Lemma2Item1 => "lemma2_item1",
            Lemma2Item2 => "lemma2_item2",
            Lemma2Item3 => "lemma2_item3",
            Eq42SandwichLiteral => "eq42_sandwich_literal",
            Eq42SandwichCprime => "eq42_sandwich_cprime",
            Eq48C1Bracket => "eq48_c1_bracket",
            Lemma3Literal => "lemma3_literal",
            Lemma3Corrected => "lemma3_corrected",
            Eq49ProductEquality => "eq49_product_equality",
            Eq54Sinbeta => "eq54_sinbeta",
            Eq55SumSquare => "eq55_sum_square",
            Eq59HProduct => "eq59_h_product",
            Eq60Phi4bound => "eq60_phi_4bound",
            Eq61PhiCos => "eq61_phi_cos",
            Eq62RatioInfinitesimal => "eq62_ratio_infinitesimal",
            Eq64Extremal8 => "eq64_extremal_8",
            PaperPhiIdentityLiteral => "paper_phi_identity_literal",
            StdPhiIdentity => "std_phi_identity",
            Thm4K1Equality => "thm4_k1_equality",
            MoriRadial16 => "mori_radial_16",
            MoriRadial64 => "mori_radial_64",
            PlantedFalse => "planted_phi2_le_r",
        }
    }

    /// Registry lookup; the planted target is not addressable by name.
    pub fn from_id(id: &str) -> Result<Target> {
        REGISTRY
            .iter()
            .copied()
            .find(|t| t.id() == id)
            .ok_or_else(|| usage(format!("unknown target {id:?}")))
    }

    pub fn classification(self) -> Classification {
        match self {
            Eq5Chain | Lemma3Corrected | Eq60Phi4bound | StdPhiIdentity | Thm4K1Equality
            | MoriRadial16 | MoriRadial64 | PlantedFalse => Classification::Asserted,
            _ => Classification::ReportOnly,
        }
    }

    /// Strict inequalities must hold with margin ≥ tol, the rest with margin ≥ −tol.
    pub fn is_strict(self) -> bool {
        matches!(
            self,
            Lemma2Item1 | Lemma2Item2 | Lemma3Literal | Lemma3Corrected
        )
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, MoriRadial16 | MoriRadial64)
    }

    fn layout(self) -> Layout {
        match self {
            Eq5Chain => Layout::Plane,
            Lemma2Item1 | Lemma2Item2 | Lemma2Item3 | Eq42SandwichLiteral | Eq42SandwichCprime => {
                Layout::AR
            }
            Eq48C1Bracket => Layout::AHalf,
            Lemma3Literal | Lemma3Corrected => Layout::AKPairs,
            Eq49ProductEquality | PaperPhiIdentityLiteral | StdPhiIdentity => Layout::KR,
            Eq60Phi4bound | Eq64Extremal8 => Layout::KAtLeastOneR,
            Eq54Sinbeta | Eq55SumSquare | Eq59HProduct | Eq61PhiCos | Eq62RatioInfinitesimal => {
                Layout::KAlpha
            }
            Thm4K1Equality | PlantedFalse => Layout::R,
            MoriRadial16 | MoriRadial64 => Layout::Samples,
        }
    }

    fn variant(self) -> MoriVariant {
        match self {
            MoriRadial64 => MoriVariant::SixtyFour,
            _ => MoriVariant::Sixteen,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub id: &'static str,
    pub classification: Classification,
}

/// The closed list of registered inequalities.
pub fn registry() -> Vec<RegistryEntry> {
    REGISTRY
        .iter()
        .map(|t| RegistryEntry {
            id: t.id(),
            classification: t.classification(),
        })
        .collect()
}

pub fn registry_targets() -> &'static [Target] {
    &REGISTRY
}

/// One evaluation point; unused coordinates are absent from the JSON.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_next: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z1_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z1_im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z2_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z2_im: Option<f64>,
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fields = [
            ("r", self.r),
            ("r_next", self.r_next),
            ("k", self.k),
            ("a", self.a),
            ("alpha", self.alpha),
            ("re", self.re),
            ("im", self.im),
            ("sample", self.sample.map(|s| s as f64)),
            ("z1_re", self.z1_re),
            ("z1_im", self.z1_im),
            ("z2_re", self.z2_re),
            ("z2_im", self.z2_im),
        ];
        let parts: Vec<String> = fields
            .iter()
            .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

fn need(v: Option<f64>, name: &str) -> Result<f64> {
    v.ok_or_else(|| usage(format!("parameter {name} is required")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub target: String,
    /// (min, max, steps) of the radius grid.
    pub r_grid: (f64, f64, usize),
    pub k_values: Vec<f64>,
    pub a_values: Vec<f64>,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_R_GRID: (f64, f64, usize) = (0.01, 0.99, 99);

impl SweepSpec {
    /// Default grid for a registered target.
    pub fn new(target: &str) -> Result<Self> {
        Target::from_id(target)?;
        Ok(Self::with_target(target))
    }

    fn with_target(target: &str) -> Self {
        SweepSpec {
            target: target.to_string(),
            r_grid: DEFAULT_R_GRID,
            k_values: vec![1.0, 1.5, 2.0, 4.0],
            a_values: vec![0.1, 0.25, 0.5],
            tol: DEFAULT_TOL,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }

    /// Default grid for the planted-false target.
    pub fn planted() -> Self {
        Self::with_target(PlantedFalse.id())
    }

    fn resolve_target(&self) -> Result<Target> {
        if self.target == PlantedFalse.id() {
            Ok(PlantedFalse)
        } else {
            Target::from_id(&self.target)
        }
    }

    pub fn validate(&self) -> Result<Target> {
        let target = self.resolve_target()?;
        let (lo, hi, steps) = self.r_grid;
        if !(lo > 0.0 && lo < hi && hi < 1.0) {
            return Err(usage(format!(
                "r grid needs 0 < min < max < 1, got [{lo}, {hi}]"
            )));
        }
        if steps < 2 {
            return Err(usage(format!("r grid needs at least 2 steps, got {steps}")));
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(usage(format!(
                "tol must be a nonnegative number, got {}",
                self.tol
            )));
        }
        if self.k_values.is_empty() || self.k_values.iter().any(|&k| !(k > 0.0 && k.is_finite())) {
            return Err(usage(
                "k values must be a nonempty list of positive numbers",
            ));
        }
        if self.a_values.is_empty() || self.a_values.iter().any(|&a| !(a > 0.0 && a <= 0.5)) {
            return Err(usage("a values must be a nonempty list in (0, 1/2]"));
        }
        if target.is_randomized() && self.samples < 1 {
            return Err(usage("samples must be at least 1"));
        }
        Ok(target)
    }

    fn r_values(&self) -> Vec<f64> {
        let (lo, hi, n) = self.r_grid;
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub params: Params,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub schema: String,
    pub target: String,
    pub classification: Classification,
    pub evaluations: usize,
    pub skipped: usize,
    pub min_margin: f64,
    pub argmin: Params,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    pub status: Status,
    pub wall_time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub notes: Option<String>,
}

impl InequalityReport {
    /// The same report with the timing field zeroed.
    pub fn without_timing(mut self) -> Self {
        self.wall_time_ms = 0;
        self
    }

    /// "TARGET status min_margin@argmin"
    pub fn summary_line(&self) -> String {
        format!(
            "{} {} {:e}@{}",
            self.target,
            self.status.as_str(),
            self.min_margin,
            self.argmin
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

fn unit(r: f64) -> Result<UnitRadius> {
    UnitRadius::new(r)
}

fn coeff(k: f64) -> Result<DistortionCoeff> {
    DistortionCoeff::new(k)
}

fn param_a(a: f64) -> Result<GeneralizedParam> {
    GeneralizedParam::new(a)
}

fn phi(k: f64, r: f64) -> Result<f64> {
    Ok(phi_k(coeff(k)?, unit(r)?)?.value())
}

/// φ_K(r) together with φ_K(r)′, computed from the complement pair of r.
fn phi_pair(k: f64, r: UnitRadius) -> Result<(f64, f64)> {
    let s = phi_k(coeff(k)?, r)?;
    Ok((s.value(), s.comp()))
}

fn radial_stretch(z: Complex64, k: f64) -> Complex64 {
    let m = z.norm();
    if m == 0.0 {
        z
    } else {
        z * m.powf(1.0 / k - 1.0)
    }
}

fn draw_pair(seed: u64, index: u64) -> (Complex64, Complex64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut point = || {
        let (u, v): (f64, f64) = (rng.random(), rng.random());
        Complex64::from_polar(u.sqrt(), 2.0 * PI * v)
    };
    let z1 = point();
    let z2 = point();
    (z1, z2)
}

fn mori_margin(k: f64, z1: Complex64, z2: Complex64, variant: MoriVariant) -> Result<f64> {
    let bound = mori_holder_bound(coeff(k)?, (z2 - z1).norm(), variant)?;
    let image = (radial_stretch(z2, k) - radial_stretch(z1, k)).norm();
    Ok(bound - image)
}

/// The two sides of the u_a − u comparison: the difference and its inputs.
fn lemma2_difference(a: f64, r: f64) -> Result<(f64, UnitRadius, GeneralizedParam)> {
    let (a, r) = (param_a(a)?, unit(r)?);
    Ok((grotzsch_ua(a, r) - grotzsch_u(r), r, a))
}

/// Margin of `target` at `p`; `None` when the point is outside the target's
/// domain (only the C₆ bound at a = 1/2, where C₆ is undefined).
pub fn reevaluate(target: Target, p: &Params) -> Result<Option<f64>> {
    let m = match target {
        Eq5Chain => {
            let z = PlanePoint::new(need(p.re, "re")?, need(p.im, "im")?)?;
            let diff = (sigma_closed_form(z)? - sigma_metric(z)?).abs();
            EQ5_ALLOWANCE - diff
        }
        Lemma2Item1 => {
            let (d, r, a) = lemma2_difference(need(p.a, "a")?, need(p.r, "r")?)?;
            let c = lemma2_constants(a);
            (d - c.c2 * fn_b(r)).min(c.c1 - d)
        }
        Lemma2Item2 => {
            let (d, r, a) = lemma2_difference(need(p.a, "a")?, need(p.r, "r")?)?;
            let c = lemma2_constants(a);
            let big_a = fn_a(r);
            // C₂·C₆ = C₃/ln 4 stays finite at a = 1/2
            let upper = c.c2 - c.c3 / (2.0 * LN_2) * (1.0 - big_a);
            (d - c.c1 * big_a).min(upper - d)
        }
        Lemma2Item3 => {
            let (a, r) = (param_a(need(p.a, "a")?)?, unit(need(p.r, "r")?)?);
            let c = lemma2_constants(a);
            let Some(c6) = c.c6 else {
                return Ok(None);
            };
            let x = (grotzsch_ua(a, r) - r.value().ln()).exp();
            let pr = product_p(r);
            let (big_a, big_b) = (fn_a(r), fn_b(r));
            let lower = pr * c.c4.powf(big_a).max(c.c5.powf(big_b));
            let upper = c.c4 * pr * (-c6 * (1.0 - big_a)).exp();
            (x - lower).min(upper - x)
        }
        Eq42SandwichLiteral | Eq42SandwichCprime => {
            let (a, r) = (param_a(need(p.a, "a")?)?, unit(need(p.r, "r")?)?);
            let rv = r.value();
            let big_c = 0.25 * (0.5 * ramanujan_r(a)).exp();
            let base = if target == Eq42SandwichLiteral {
                lemma2_constants(a).c1
            } else {
                (a.value() - 0.5).powi(2).exp()
            };
            let x = (grotzsch_ua(a, r) - rv.ln()).exp();
            let pr = product_p(r);
            let lower = big_c.powf(1.0 - rv * rv) * pr;
            let upper = big_c * base.powf(-rv * rv) * pr;
            (x - lower).min(upper - x)
        }
        Eq48C1Bracket => {
            let a = need(p.a, "a")?;
            let two_c1 = 2.0 * lemma2_constants(param_a(a)?).c1;
            let big_a = fourteen_zeta3();
            let w = (1.0 - 2.0 * a).powi(2);
            (two_c1 - w * (big_a / 4.0).max(1.0 / a)).min(big_a * w / (8.0 * a) - two_c1)
        }
        Lemma3Literal | Lemma3Corrected => {
            let form = if target == Lemma3Literal {
                Lemma3Form::Literal
            } else {
                Lemma3Form::Corrected
            };
            let (a, k) = (param_a(need(p.a, "a")?)?, coeff(need(p.k, "k")?)?);
            let f0 = lemma3_fk(a, k, unit(need(p.r, "r")?)?, form)?;
            let f1 = lemma3_fk(a, k, unit(need(p.r_next, "r_next")?)?, form)?;
            f0 - f1
        }
        Eq49ProductEquality => {
            let (k, r) = (need(p.k, "k")?, need(p.r, "r")?);
            -(phi_k_product(coeff(k)?, unit(r)?)? - phi(k, r)?).abs()
        }
        Eq54Sinbeta | Eq55SumSquare | Eq59HProduct | Eq61PhiCos | Eq62RatioInfinitesimal => {
            let (k, alpha) = (need(p.k, "k")?, need(p.alpha, "alpha")?);
            let half = unit((0.5 * alpha).sin())?;
            let (s, c) = (half.value(), half.comp());
            let cos_half = half.complement();
            let (phi_s, _) = phi_pair(k, half)?;
            let (inv_s, _) = phi_pair(1.0 / k, half)?;
            let e = 1.0 / k;
            match target {
                Eq54Sinbeta => {
                    let (inv_c, _) = phi_pair(1.0 / k, cos_half)?;
                    let (phi_c, _) = phi_pair(k, cos_half)?;
                    let middle = 2.0 * phi_s * inv_c / (inv_s * inv_s + phi_c * phi_c);
                    -(middle - 2.0 * phi_s * inv_s).abs()
                }
                Eq55SumSquare => {
                    let (phi_c, _) = phi_pair(k, cos_half)?;
                    -(1.0 + 2.0 * phi_s * inv_s - (inv_s + phi_c).powi(2)).abs()
                }
                Eq59HProduct => 1.0 - phi_s * inv_s / (s.powf(e) * c.powf(e)),
                Eq61PhiCos => c.powf(k) - inv_s,
                _ => c.powf(k - e) - inv_s / c.powf(e),
            }
        }
        Eq60Phi4bound => {
            let (k, r) = (need(p.k, "k")?, need(p.r, "r")?);
            4f64.powf(1.0 - 1.0 / k) * r.powf(1.0 / k) - phi(k, r)?
        }
        Eq64Extremal8 => {
            let (k, r) = (need(p.k, "k")?, need(p.r, "r")?);
            let e = 1.0 - 1.0 / k;
            8f64.powf(e) - 2f64.powf(e) * phi(k, r)? / r.powf(1.0 / k)
        }
        PaperPhiIdentityLiteral | StdPhiIdentity => {
            let (k, r) = (need(p.k, "k")?, unit(need(p.r, "r")?)?);
            let (s, _) = phi_pair(k, r)?;
            let second = if target == StdPhiIdentity {
                r.complement()
            } else {
                r
            };
            let (t, _) = phi_pair(1.0 / k, second)?;
            let diff = (s * s + t * t - 1.0).abs();
            if target == StdPhiIdentity {
                STD_PHI_ALLOWANCE - diff
            } else {
                -diff
            }
        }
        Thm4K1Equality => {
            let r = need(p.r, "r")?;
            let b = qc_schwarz_bounds(coeff(1.0)?, r)?;
            THM4_ALLOWANCE - (b.lower - r).abs().max((b.upper - r).abs())
        }
        MoriRadial16 | MoriRadial64 => {
            let z1 = Complex64::new(need(p.z1_re, "z1_re")?, need(p.z1_im, "z1_im")?);
            let z2 = Complex64::new(need(p.z2_re, "z2_re")?, need(p.z2_im, "z2_im")?);
            mori_margin(need(p.k, "k")?, z1, z2, target.variant())?
        }
        PlantedFalse => {
            let r = need(p.r, "r")?;
            r - phi(2.0, r)?
        }
    };
    Ok(Some(m))
}

fn points(target: Target, spec: &SweepSpec) -> Vec<Params> {
    let rs = spec.r_values();
    let ks_at_least_one: Vec<f64> = spec
        .k_values
        .iter()
        .copied()
        .filter(|&k| k >= 1.0)
        .collect();
    let mut out = Vec::new();
    match target.layout() {
        Layout::Plane => {
            for &m in &rs {
                for j in 0..EQ5_ANGLES {
                    let z = Complex64::from_polar(m, 2.0 * PI * j as f64 / EQ5_ANGLES as f64);
                    if z.re < 0.5 {
                        out.push(Params {
                            re: Some(z.re),
                            im: Some(z.im),
                            ..Default::default()
                        });
                    }
                }
            }
        }
        Layout::AR => {
            for &a in &spec.a_values {
                for &r in &rs {
                    out.push(Params {
                        a: Some(a),
                        r: Some(r),
                        ..Default::default()
                    });
                }
            }
        }
        Layout::AHalf => {
            for &r in &rs {
                out.push(Params {
                    a: Some(0.5 * r),
                    ..Default::default()
                });
            }
        }
        Layout::AKPairs => {
            for &a in &spec.a_values {
                for &k in spec.k_values.iter().filter(|&&k| k > 1.0) {
                    for w in rs.windows(2) {
                        out.push(Params {
                            a: Some(a),
                            k: Some(k),
                            r: Some(w[0]),
                            r_next: Some(w[1]),
                            ..Default::default()
                        });
                    }
                }
            }
        }
        Layout::KR | Layout::KAtLeastOneR => {
            let ks = if target.layout() == Layout::KR {
                &spec.k_values
            } else {
                &ks_at_least_one
            };
            for &k in ks {
                for &r in &rs {
                    out.push(Params {
                        k: Some(k),
                        r: Some(r),
                        ..Default::default()
                    });
                }
            }
        }
        Layout::KAlpha => {
            for &k in &ks_at_least_one {
                for &r in &rs {
                    out.push(Params {
                        k: Some(k),
                        alpha: Some(r * FRAC_PI_2),
                        ..Default::default()
                    });
                }
            }
        }
        Layout::R => {
            for &r in &rs {
                out.push(Params {
                    r: Some(r),
                    ..Default::default()
                });
            }
        }
        Layout::Samples => {
            let pairs: Vec<(Complex64, Complex64)> = (0..spec.samples as u64)
                .map(|i| draw_pair(spec.seed, i))
                .collect();
            for &k in &ks_at_least_one {
                for (i, (z1, z2)) in pairs.iter().enumerate() {
                    out.push(Params {
                        k: Some(k),
                        sample: Some(i as u64),
                        z1_re: Some(z1.re),
                        z1_im: Some(z1.im),
                        z2_re: Some(z2.re),
                        z2_im: Some(z2.im),
                        ..Default::default()
                    });
                }
            }
        }
    }
    out
}

fn is_violation(target: Target, margin: f64, tol: f64) -> bool {
    if margin.is_nan() {
        return true;
    }
    if target.is_strict() {
        margin < tol
    } else {
        margin < -tol
    }
}

fn notes(target: Target, spec: &SweepSpec, evaluated: &[(Params, f64)]) -> Result<Option<String>> {
    let note = match target {
        Eq5Chain => {
            let mut below = 0;
            for (p, _) in evaluated {
                let z = PlanePoint::new(p.re.unwrap_or(0.0), p.im.unwrap_or(0.0))?;
                if rho_lower(z.abs())? <= sigma_closed_form(z)? {
                    below += 1;
                }
            }
            Some(format!(
                "rho_lower(|z|) <= sigma at {below} of {} points",
                evaluated.len()
            ))
        }
        Eq59HProduct => {
            let mut ks: Vec<f64> = spec
                .k_values
                .iter()
                .copied()
                .filter(|&k| k >= 1.0)
                .collect();
            ks.sort_by(f64::total_cmp);
            let holds = |k: f64| {
                evaluated
                    .iter()
                    .filter(|(p, _)| p.k == Some(k) && p.alpha.is_some_and(|a| a >= 0.1))
                    .all(|(_, m)| *m >= -spec.tol)
            };
            Some(match ks.into_iter().find(|&k| holds(k)) {
                Some(k) => format!("smallest grid K with the bound for all alpha >= 0.1: {k}"),
                None => "no grid K satisfies the bound for all alpha >= 0.1".to_string(),
            })
        }
        Eq49ProductEquality => {
            let worst = evaluated.iter().map(|(_, m)| -m).fold(0.0, f64::max);
            Some(format!("max |product - phi_k| = {worst:e}"))
        }
        _ => None,
    };
    Ok(note)
}

fn build_report(
    target: Target,
    spec: &SweepSpec,
    evaluated: Vec<(Params, Option<f64>)>,
    started: Instant,
) -> Result<InequalityReport> {
    let skipped = evaluated.iter().filter(|(_, m)| m.is_none()).count();
    let evaluated: Vec<(Params, f64)> = evaluated
        .into_iter()
        .filter_map(|(p, m)| m.map(|m| (p, m)))
        .collect();
    let mut best: Option<(Params, f64)> = None;
    let mut violations = Vec::new();
    let mut violation_count = 0;
    for (p, m) in &evaluated {
        // strict comparison keeps the earliest point of a tie; NaN sorts lowest
        let better = match best {
            None => true,
            Some((_, b)) => (m.is_nan() && !b.is_nan()) || *m < b,
        };
        if better {
            best = Some((*p, *m));
        }
        if is_violation(target, *m, spec.tol) {
            violation_count += 1;
            if violations.len() < MAX_LISTED_VIOLATIONS {
                violations.push(Violation {
                    params: *p,
                    margin: *m,
                });
            }
        }
    }
    let (argmin, min_margin) = best.unwrap_or((Params::default(), f64::INFINITY));
    let status = match target.classification() {
        Classification::ReportOnly => Status::ReportOnly,
        Classification::Asserted if violation_count > 0 => Status::Fail,
        Classification::Asserted => Status::Pass,
    };
    let notes = notes(target, spec, &evaluated)?;
    Ok(InequalityReport {
        schema: SCHEMA_VERSION.to_string(),
        target: target.id().to_string(),
        classification: target.classification(),
        evaluations: evaluated.len(),
        skipped,
        min_margin,
        argmin,
        violation_count,
        violations,
        status,
        wall_time_ms: started.elapsed().as_millis() as u64,
        notes,
    })
}

pub fn sweep_with(spec: &SweepSpec, exec: Execution) -> Result<InequalityReport> {
    let target = spec.validate()?;
    let started = Instant::now();
    let pts = points(target, spec);
    let margins: Vec<Result<Option<f64>>> = match exec {
        Execution::Serial => pts.iter().map(|p| reevaluate(target, p)).collect(),
        Execution::Parallel => pts.par_iter().map(|p| reevaluate(target, p)).collect(),
    };
    let mut evaluated = Vec::with_capacity(pts.len());
    for (p, m) in pts.into_iter().zip(margins) {
        evaluated.push((p, m?));
    }
    build_report(target, spec, evaluated, started)
}

pub fn sweep(spec: &SweepSpec) -> Result<InequalityReport> {
    sweep_with(spec, Execution::Parallel)
}

/// Hölder test of the radial stretch z ↦ z|z|^{1/K−1} on `samples` random pairs.
pub fn mori_radial_experiment(
    k: DistortionCoeff,
    samples: usize,
    seed: u64,
    variant: MoriVariant,
) -> Result<InequalityReport> {
    k.require_at_least_one()?;
    if samples < 1 {
        return Err(usage("samples must be at least 1"));
    }
    let target = match variant {
        MoriVariant::Sixteen => MoriRadial16,
        MoriVariant::SixtyFour => MoriRadial64,
    };
    let spec = SweepSpec {
        k_values: vec![k.value()],
        seed,
        samples,
        ..SweepSpec::with_target(target.id())
    };
    sweep(&spec)
}

/// Fields a suite run may override on every target's default spec.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOverrides {
    pub r_grid: Option<(f64, f64, usize)>,
    pub k_values: Option<Vec<f64>>,
    pub a_values: Option<Vec<f64>>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

impl SweepOverrides {
    fn apply(&self, mut spec: SweepSpec) -> SweepSpec {
        if let Some(g) = self.r_grid {
            spec.r_grid = g;
        }
        if let Some(k) = &self.k_values {
            spec.k_values = k.clone();
        }
        if let Some(a) = &self.a_values {
            spec.a_values = a.clone();
        }
        if let Some(t) = self.tol {
            spec.tol = t;
        }
        if let Some(s) = self.seed {
            spec.seed = s;
        }
        if let Some(n) = self.samples {
            spec.samples = n;
        }
        spec
    }
}

pub const SUITES: [&str; 7] = [
    "identities",
    "schottky",
    "lemma2",
    "lemma3",
    "mori",
    "all",
    "sanity",
];

pub fn suite_targets(name: &str) -> Result<Vec<Target>> {
    let list = match name {
        "identities" => vec![
            StdPhiIdentity,
            PaperPhiIdentityLiteral,
            Eq5Chain,
            Thm4K1Equality,
        ],
        "schottky" => vec![Eq5Chain, Thm4K1Equality],
        "lemma2" => vec![
            Lemma2Item1,
            Lemma2Item2,
            Lemma2Item3,
            Eq42SandwichLiteral,
            Eq42SandwichCprime,
            Eq48C1Bracket,
        ],
        "lemma3" => vec![Lemma3Literal, Lemma3Corrected, Eq49ProductEquality],
        "mori" => vec![
            Eq54Sinbeta,
            Eq55SumSquare,
            Eq59HProduct,
            Eq60Phi4bound,
            Eq61PhiCos,
            Eq62RatioInfinitesimal,
            Eq64Extremal8,
            MoriRadial16,
            MoriRadial64,
        ],
        "all" => REGISTRY.to_vec(),
        "sanity" => vec![PlantedFalse],
        _ => {
            return Err(usage(format!(
                "unknown suite {name:?}, expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(list)
}

pub fn run_suite_with(
    name: &str,
    overrides: &SweepOverrides,
    exec: Execution,
) -> Result<Vec<InequalityReport>> {
    suite_targets(name)?
        .into_iter()
        .map(|t| sweep_with(&overrides.apply(SweepSpec::with_target(t.id())), exec))
        .collect()
}

pub fn run_suite(name: &str, overrides: &SweepOverrides) -> Result<Vec<InequalityReport>> {
    run_suite_with(name, overrides, Execution::Parallel)
}

/// Fail if any asserted target failed, otherwise pass.
pub fn suite_status(reports: &[InequalityReport]) -> Status {
    if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    }
}
