use gft_core::bounds::{self, MoriVariant};
use gft_core::distortion::{self, Lemma3Form};
use gft_core::modulus;
use gft_core::special_fns as sf;
use gft_core::{DistortionCoeff, GeneralizedParam, UnitRadius};
use gft_testkit::{elliptic_e_quad, elliptic_k_quad, hyp_sym_series_dd, rel_diff};
use proptest::prelude::*;

fn ur(r: f64) -> UnitRadius {
    UnitRadius::new(r).unwrap()
}

fn kk(k: f64) -> DistortionCoeff {
    DistortionCoeff::new(k).unwrap()
}

fn ga(a: f64) -> GeneralizedParam {
    GeneralizedParam::new(a).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernels_match_quadrature(r in 0.0f64..0.999) {
        prop_assert!(rel_diff(sf::elliptic_k(r).unwrap(), elliptic_k_quad(r)) < 1e-10);
        prop_assert!(rel_diff(sf::elliptic_e(r).unwrap(), elliptic_e_quad(r)) < 1e-10);
    }

    #[test]
    fn hypergeometric_matches_series(a in 0.05f64..0.5, x in 0.0f64..0.5) {
        let got = sf::gauss_2f1_sym(ga(a), x).unwrap();
        prop_assert!(rel_diff(got, hyp_sym_series_dd(a, x, 400)) < 1e-13);
    }

    #[test]
    fn modulus_is_decreasing_and_inverts(r in 0.001f64..0.999, dr in 1e-3f64..1e-2) {
        let s = (r + dr).min(0.9995);
        prop_assume!(s > r);
        prop_assert!(modulus::grotzsch_u(ur(s)) < modulus::grotzsch_u(ur(r)));
        let inv = modulus::grotzsch_u_inv(modulus::grotzsch_u(ur(r))).unwrap();
        prop_assert!((inv.radius.value() - r).abs() < 1e-12);
    }

    #[test]
    fn product_identity_holds(r in 0.01f64..0.99) {
        let u = modulus::grotzsch_u(ur(r));
        let via_p = (modulus::product_p(ur(r).complement()) / r).ln();
        prop_assert!((u - via_p).abs() < 1e-10);
    }

    #[test]
    fn phi_is_monotone_and_bounded(k in 1.01f64..6.0, r in 0.01f64..0.98) {
        let s = distortion::phi_k(kk(k), ur(r)).unwrap().value();
        prop_assert!(s > r && s < 1.0);
        let s2 = distortion::phi_k(kk(k), ur(r + 0.01)).unwrap().value();
        prop_assert!(s2 >= s);
        let bound = 4f64.powf(1.0 - 1.0 / k) * r.powf(1.0 / k);
        prop_assert!(s <= bound + 1e-12);
    }

    #[test]
    fn phi_semigroup(k1 in 1.0f64..3.0, k2 in 1.0f64..3.0, r in 0.05f64..0.95) {
        let inner = distortion::phi_k(kk(k2), ur(r)).unwrap().radius;
        let twice = distortion::phi_k(kk(k1), inner).unwrap().value();
        let once = distortion::phi_k(kk(k1 * k2), ur(r)).unwrap().value();
        prop_assert!((twice - once).abs() < 1e-9);
    }

    #[test]
    fn generalized_phi_conjugation(a in 0.05f64..0.5, k in 1.0f64..4.0, r in 0.05f64..0.95) {
        let s = distortion::phi_ka(ga(a), kk(k), ur(r)).unwrap().value();
        let t = distortion::phi_ka(ga(a), kk(1.0 / k), ur(r).complement()).unwrap().value();
        prop_assert!((s * s + t * t - 1.0).abs() < 1e-9);
    }

    #[test]
    fn corrected_auxiliary_decreases(k in 1.1f64..4.0, r in 0.05f64..0.9) {
        let f = |x| distortion::lemma3_fk(GeneralizedParam::HALF, kk(k), ur(x), Lemma3Form::Corrected).unwrap();
        prop_assert!(f(r + 0.05) < f(r));
    }

    #[test]
    fn schwarz_bounds_are_ordered(k in 1.0f64..4.0, t in 0.01f64..0.99) {
        let b = bounds::qc_schwarz_bounds(kk(k), t).unwrap();
        prop_assert!(b.lower <= b.upper);
        prop_assert!(b.lower > 0.0 && b.upper.is_finite());
    }

    #[test]
    fn mori_bound_grows_with_base(k in 1.0f64..4.0, dz in 0.0f64..2.0) {
        let small = bounds::mori_holder_bound(kk(k), dz, MoriVariant::Sixteen).unwrap();
        let large = bounds::mori_holder_bound(kk(k), dz, MoriVariant::SixtyFour).unwrap();
        prop_assert!(small <= large);
    }

    #[test]
    fn sigma_forms_agree(re in -4.0f64..0.95, im in 0.01f64..3.0) {
        let z = gft_core::PlanePoint::new(re, im).unwrap();
        let a = bounds::sigma_metric(z).unwrap();
        let b = bounds::sigma_closed_form(z).unwrap();
        prop_assert!(rel_diff(a, b) < 1e-12);
    }
}

#[test]
fn lemma2_constants_vanish_only_at_half() {
    assert!(modulus::lemma2_constants(GeneralizedParam::HALF).is_degenerate());
    for a in [0.1, 0.25, 0.4] {
        let c = modulus::lemma2_constants(ga(a));
        assert!(c.c1 > 0.0 && c.c6.is_some_and(f64::is_finite));
    }
}
