//! Independent numerical oracles for the gft test suites.
//!
//! Nothing in here shares code with `gft-core`: quadrature replaces the AGM,
//! brute-force series summation in double-double replaces the hypergeometric
//! kernel, and finite differences replace closed-form derivatives.

pub mod dd;
pub mod quad;

pub use dd::DoubleDouble;
pub use quad::integrate;

use std::f64::consts::FRAC_PI_2;

// 1 − r² sin²t written as cos²t + r′² sin²t, free of cancellation near t = π/2
fn radicand(r: f64, t: f64) -> f64 {
    let comp2 = (1.0 - r) * (1.0 + r);
    let (s, c) = t.sin_cos();
    c * c + comp2 * s * s
}

/// κ(r) = ∫₀^{π/2} (1 − r² sin²t)^{-1/2} dt by adaptive Gauss–Kronrod.
pub fn elliptic_k_quad(r: f64) -> f64 {
    integrate(|t| 1.0 / radicand(r, t).sqrt(), 0.0, FRAC_PI_2, 1e-15)
}

/// ε(r) = ∫₀^{π/2} (1 − r² sin²t)^{1/2} dt by adaptive Gauss–Kronrod.
pub fn elliptic_e_quad(r: f64) -> f64 {
    integrate(|t| radicand(r, t).sqrt(), 0.0, FRAC_PI_2, 1e-15)
}

/// F(a, 1−a; 1; x) summed term by term in double-double for exactly `terms` terms.
pub fn hyp_sym_series_dd(a: f64, x: f64, terms: usize) -> f64 {
    let x = DoubleDouble::from(x);
    let mut term = DoubleDouble::from(1.0);
    let mut sum = DoubleDouble::from(1.0);
    for n in 0..terms {
        let nf = n as f64;
        let num = DoubleDouble::from(a + nf) * DoubleDouble::from(1.0 - a + nf);
        let den = DoubleDouble::from((nf + 1.0) * (nf + 1.0));
        term = term * num / den * x;
        sum = sum + term;
    }
    sum.hi()
}

/// Central difference (f(x+h) − f(x−h)) / 2h.
pub fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Euler's constant from the harmonic-number limit H_n − ln n, accelerated
/// with the Euler–Maclaurin correction terms.
pub fn euler_gamma_limit(n: usize) -> f64 {
    let mut h = DoubleDouble::from(0.0);
    for k in (1..=n).rev() {
        h = h + DoubleDouble::from(1.0) / DoubleDouble::from(k as f64);
    }
    let nf = n as f64;
    let n2 = nf * nf;
    let corr = 1.0 / (2.0 * nf) - 1.0 / (12.0 * n2) + 1.0 / (120.0 * n2 * n2)
        - 1.0 / (252.0 * n2 * n2 * n2)
        + 1.0 / (240.0 * n2 * n2 * n2 * n2);
    (h - DoubleDouble::from(nf.ln()) - DoubleDouble::from(corr)).hi()
}

/// Plain partial sum Σ_{k=1}^{n} 1/k − ln n, no acceleration.
pub fn euler_gamma_partial(n: usize) -> f64 {
    let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
    h - (n as f64).ln()
}

/// ζ(3) as Σ_{n<N} n⁻³ plus the Euler–Maclaurin tail ∫_N^∞ + f(N)/2 − f′(N)/12.
pub fn zeta3_with_tail(n: usize) -> f64 {
    let mut s = DoubleDouble::from(0.0);
    for k in (1..n).rev() {
        let kf = k as f64;
        s = s + DoubleDouble::from(1.0) / DoubleDouble::from(kf * kf * kf);
    }
    let nf = n as f64;
    let tail = 1.0 / (2.0 * nf * nf) + 1.0 / (2.0 * nf.powi(3)) + 3.0 / (12.0 * nf.powi(4))
        - 60.0 / (720.0 * nf.powi(6));
    (s + DoubleDouble::from(tail)).hi()
}

/// `n` equispaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Relative difference |a − b| / |b|, falling back to absolute when b = 0.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        (a - b).abs()
    } else {
        ((a - b) / b).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_recovers_closed_forms() {
        assert!((elliptic_k_quad(0.0) - FRAC_PI_2).abs() < 1e-15);
        assert!((elliptic_e_quad(1.0) - 1.0).abs() < 1e-13);
        let v = integrate(|x| x.exp(), 0.0, 1.0, 1e-15);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn euler_gamma_limits() {
        let g = 0.577_215_664_901_532_9;
        assert!((euler_gamma_limit(1000) - g).abs() < 1e-15);
        assert!((euler_gamma_partial(1_000_000) - g).abs() < 5e-7);
    }

    #[test]
    fn zeta3_tail() {
        assert!((zeta3_with_tail(200) - 1.202_056_903_159_594_3).abs() < 1e-15);
    }
}
