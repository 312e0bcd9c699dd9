//! Scalar special functions and named constants.
//!
//! Complete elliptic integrals come from the arithmetic-geometric mean, the
//! symmetric hypergeometric function F(a, 1−a; 1; x) from its power series
//! (or the logarithmic expansion about x = 1), and ψ from the asymptotic
//! series after upward recurrence.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Γ(1/4)⁴ / (4π²), the sharp constant in Schottky's inequality.
pub const LANDAU: f64 = 4.376_879_230_452_953;

/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Modulus r in the open interval (0, 1) together with r′ = √(1 − r²).
///
/// Both members are kept because every elliptic quantity near r → 1 needs
/// r′ to full relative precision. A radius built with
/// [`UnitRadius::from_complement`] from r′ below ~1e−8 stores r = 1.0 after
/// rounding; the pair (r, r′) remains exact in that case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitRadius {
    r: f64,
    r_comp: f64,
}

impl UnitRadius {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(domain(format!("r must lie in (0,1), got {r}")));
        }
        Ok(UnitRadius {
            r,
            r_comp: ((1.0 - r) * (1.0 + r)).sqrt(),
        })
    }

    pub fn from_complement(r_comp: f64) -> Result<Self> {
        if !(r_comp > 0.0 && r_comp < 1.0) {
            return Err(domain(format!(
                "complementary modulus must lie in (0,1), got {r_comp}"
            )));
        }
        Ok(UnitRadius {
            r: ((1.0 - r_comp) * (1.0 + r_comp)).sqrt(),
            r_comp,
        })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.r
    }

    /// r′ = √(1 − r²).
    #[inline]
    pub fn comp(&self) -> f64 {
        self.r_comp
    }

    /// The radius r′ (with complement r).
    pub fn complement(&self) -> UnitRadius {
        UnitRadius {
            r: self.r_comp,
            r_comp: self.r,
        }
    }
}

/// Maximal dilatation K > 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DistortionCoeff(f64);

impl DistortionCoeff {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(domain(format!("K must be positive and finite, got {k}")));
        }
        Ok(DistortionCoeff(k))
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn recip(&self) -> DistortionCoeff {
        DistortionCoeff(1.0 / self.0)
    }

    /// Rejects K < 1 for the bounds that only hold for quasiconformal maps.
    pub fn require_at_least_one(&self) -> Result<()> {
        if self.0 < 1.0 {
            return Err(domain(format!("K must be at least 1, got {}", self.0)));
        }
        Ok(())
    }
}

/// Parameter a ∈ (0, 1/2] of the generalized modulus; a = 1/2 is classical.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct GeneralizedParam(f64);

impl GeneralizedParam {
    pub const HALF: GeneralizedParam = GeneralizedParam(0.5);

    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 0.5) {
            return Err(domain(format!("a must lie in (0,1/2], got {a}")));
        }
        Ok(GeneralizedParam(a))
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_classical(&self) -> bool {
        self.0 == 0.5
    }
}

/// Point of the complex plane with finite coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub re: f64,
    pub im: f64,
}

impl PlanePoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(domain("plane point coordinates must be finite"));
        }
        Ok(PlanePoint { re, im })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        PlanePoint::new(z.re, z.im)
    }

    pub fn abs(self) -> f64 {
        self.to_complex().norm()
    }

    pub fn conj(self) -> Self {
        PlanePoint {
            re: self.re,
            im: -self.im,
        }
    }
}

const AGM_MAX_ITER: usize = 64;

fn agm_counted(mut a: f64, mut b: f64) -> (f64, usize) {
    let mut n = 0;
    while (a - b).abs() > 4.0 * f64::EPSILON * a && n < AGM_MAX_ITER {
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
        n += 1;
    }
    (a, n)
}

#[inline]
pub(crate) fn agm_unchecked(a: f64, b: f64) -> f64 {
    agm_counted(a, b).0
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    agm_with_iterations(a, b).map(|(m, _)| m)
}

/// AGM together with the number of iterations taken to reach
/// |aₙ − bₙ| ≤ 4ε·aₙ.
pub fn agm_with_iterations(a: f64, b: f64) -> Result<(f64, usize)> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(domain(format!(
            "agm requires positive finite inputs, got ({a}, {b})"
        )));
    }
    Ok(agm_counted(a, b))
}

/// κ from the complementary modulus: π / (2·agm(1, r′)).
#[inline]
pub(crate) fn k_from_comp(r_comp: f64) -> f64 {
    PI / (2.0 * agm_unchecked(1.0, r_comp))
}

fn comp_of(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + r)).sqrt()
}

/// Complete elliptic integral of the first kind κ(r), 0 ≤ r < 1.
pub fn elliptic_k(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain("r must lie in [0,1)"));
    }
    Ok(k_from_comp(comp_of(r)))
}

/// κ(r) and κ(r′) for a radius, each from its own AGM.
pub fn elliptic_k_pair(r: UnitRadius) -> (f64, f64) {
    (k_from_comp(r.comp()), k_from_comp(r.value()))
}

pub(crate) fn e_from_pair(r: f64, r_comp: f64) -> f64 {
    if r_comp == 0.0 {
        return 1.0;
    }
    let mut a = 1.0;
    let mut b = r_comp;
    let mut c = r;
    let mut weight = 0.5;
    let mut sum = weight * c * c;
    // cₙ₊₁ ≈ cₙ²/4a, so terms past cₙ ≤ ε·a are below rounding
    for _ in 0..AGM_MAX_ITER {
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        c = 0.5 * (a - b);
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
        weight *= 2.0;
        sum += weight * c * c;
    }
    PI / (2.0 * a) * (1.0 - sum)
}

/// Complete elliptic integral of the second kind ε(r), 0 ≤ r ≤ 1.
pub fn elliptic_e(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(domain("r must lie in [0,1]"));
    }
    Ok(e_from_pair(r, comp_of(r)))
}

/// Generalized first-kind integral κ_a(r) = (π/2)·F(a, 1−a; 1; r²).
pub fn elliptic_ka(a: GeneralizedParam, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain("r must lie in [0,1)"));
    }
    Ok(FRAC_PI_2 * hyp_sym(a.value(), r * r, (1.0 - r) * (1.0 + r)))
}

/// F(a, 1−a; 1; x) for 0 ≤ x < 1.
pub fn gauss_2f1_sym(a: GeneralizedParam, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(domain("x must lie in [0,1)"));
    }
    Ok(hyp_sym(a.value(), x, 1.0 - x))
}

/// F(a, 1−a; 1; x) with the caller supplying 1 − x to full precision.
///
/// x ≤ 1/2 sums the power series in x. Beyond that the logarithmic
/// expansion in 1 − x is used:
///
/// ```text
/// F = sin(πa)/π · Σ (a)ₙ(1−a)ₙ/(n!)² (1−x)ⁿ [2ψ(n+1) − ψ(a+n) − ψ(1−a+n) − ln(1−x)]
/// ```
///
/// All terms of both series are positive.
pub(crate) fn hyp_sym(a: f64, x: f64, one_minus_x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if a == 0.5 && x > 0.95 {
        return 1.0 / agm_unchecked(1.0, one_minus_x.sqrt());
    }
    if x <= 0.5 {
        let mut term = 1.0;
        let mut sum = 1.0;
        for n in 0..2000 {
            let nf = n as f64;
            term *= (a + nf) * (1.0 - a + nf) / ((nf + 1.0) * (nf + 1.0)) * x;
            sum += term;
            if term <= 1e-17 * sum {
                break;
            }
        }
        return sum;
    }
    let y = one_minus_x;
    let ln_y = y.ln();
    let mut coeff = 1.0;
    let mut harmonic = ramanujan_r_unchecked(a);
    let mut power = 1.0;
    let mut sum = harmonic - ln_y;
    for n in 0..2000 {
        let nf = n as f64;
        coeff *= (a + nf) * (1.0 - a + nf) / ((nf + 1.0) * (nf + 1.0));
        harmonic += 2.0 / (nf + 1.0) - 1.0 / (a + nf) - 1.0 / (1.0 - a + nf);
        power *= y;
        let term = coeff * power * (harmonic - ln_y);
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    (PI * a).sin() / PI * sum
}

// Bernoulli-number coefficients B₂ₖ/(2k) of the ψ asymptotic series.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

fn digamma_unchecked(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 8.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut poly = 0.0;
    for c in DIGAMMA_ASYMPTOTIC.iter().rev() {
        poly = poly * inv2 + c;
    }
    shift + x.ln() - 0.5 / x - inv2 * poly
}

/// ψ(x) = Γ′(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(format!("digamma requires x > 0, got {x}")));
    }
    Ok(digamma_unchecked(x))
}

pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

fn ramanujan_r_unchecked(a: f64) -> f64 {
    -2.0 * EULER_GAMMA - digamma_unchecked(a) - digamma_unchecked(1.0 - a)
}

/// Ramanujan's constant R(a) = −2γ − ψ(a) − ψ(1−a); R(1/2) = ln 16.
pub fn ramanujan_r(a: GeneralizedParam) -> f64 {
    ramanujan_r_unchecked(a.value())
}

/// The uncorrected bracket, −[2ψ(1) + ψ(a) + ψ(1−a)] = 2γ − ψ(a) − ψ(1−a).
/// Differs from [`ramanujan_r`] by 4γ; kept for reporting only.
pub fn ramanujan_r_literal(a: GeneralizedParam) -> f64 {
    2.0 * EULER_GAMMA - digamma_unchecked(a.value()) - digamma_unchecked(1.0 - a.value())
}

pub fn landau_constant() -> f64 {
    LANDAU
}

pub fn apery_zeta3() -> f64 {
    ZETA3
}

/// 14·ζ(3), the constant bracketing 2C₁ near a = 1/2.
pub fn fourteen_zeta3() -> f64 {
    14.0 * ZETA3
}
