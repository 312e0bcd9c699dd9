//! Named scalar operations reachable from `gft eval` and `gft table`.

use std::collections::BTreeMap;

use gft_core::bounds::{self, BoundConfig, MoriVariant, TriplePoints};
use gft_core::distortion::{self, Lemma3Form};
use gft_core::modulus;
use gft_core::special_fns as sf;
use gft_core::{DistortionCoeff, Error, GeneralizedParam, PlanePoint, Result, UnitRadius};

#[derive(Debug, Clone, Copy)]
pub struct Param {
    pub name: &'static str,
    pub default: Option<f64>,
}

const fn req(name: &'static str) -> Param {
    Param {
        name,
        default: None,
    }
}

const fn opt(name: &'static str, default: f64) -> Param {
    Param {
        name,
        default: Some(default),
    }
}

/// Values of one invocation, keyed by flag name.
#[derive(Debug, Clone, Default)]
pub struct Input {
    pub values: BTreeMap<&'static str, f64>,
    pub variant: Option<String>,
    pub literal: bool,
}

impl Input {
    fn get(&self, name: &str) -> f64 {
        // presence is checked against the parameter list before evaluation
        self.values[name]
    }

    fn radius(&self) -> Result<UnitRadius> {
        UnitRadius::new(self.get("r"))
    }

    fn k(&self) -> Result<DistortionCoeff> {
        DistortionCoeff::new(self.get("k"))
    }

    fn a(&self) -> Result<GeneralizedParam> {
        GeneralizedParam::new(self.get("a"))
    }

    fn point(&self, re: &str, im: &str) -> Result<PlanePoint> {
        PlanePoint::new(self.get(re), self.get(im))
    }

    fn z(&self) -> Result<PlanePoint> {
        self.point("re", "im")
    }

    fn count(&self, name: &str) -> Result<usize> {
        let v = self.get(name);
        if !((0.0..=10_000.0).contains(&v) && v.fract() == 0.0) {
            return Err(Error::Domain(format!(
                "{name} must be a whole number in [0, 10000], got {v}"
            )));
        }
        Ok(v as usize)
    }

    fn mori_variant(&self) -> Result<MoriVariant> {
        self.variant.as_deref().unwrap_or("sixteen").parse()
    }
}

/// A computed value: one number or several named ones.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Scalar(f64),
    Fields(Vec<(String, f64)>),
}

impl Output {
    fn pair(a: &str, x: f64, b: &str, y: f64) -> Output {
        Output::Fields(vec![(a.to_string(), x), (b.to_string(), y)])
    }

    fn point(p: PlanePoint) -> Output {
        Output::pair("re", p.re, "im", p.im)
    }

    /// Column names with their values; a scalar is called `value`.
    pub fn columns(&self) -> Vec<(String, f64)> {
        match self {
            Output::Scalar(v) => vec![("value".to_string(), *v)],
            Output::Fields(f) => f.clone(),
        }
    }
}

pub struct Function {
    pub name: &'static str,
    pub params: &'static [Param],
    pub summary: &'static str,
    eval: fn(&Input) -> Result<Output>,
}

impl Function {
    pub fn eval(&self, input: &Input) -> Result<Output> {
        for p in self.params {
            if !input.values.contains_key(p.name) {
                return Err(Error::Usage(format!("{} needs --{}", self.name, p.name)));
            }
        }
        (self.eval)(input)
    }

    /// Copy the values this function reads, filling defaults.
    pub fn bind(&self, given: &BTreeMap<&'static str, f64>) -> BTreeMap<&'static str, f64> {
        self.params
            .iter()
            .filter_map(|p| {
                given
                    .get(p.name)
                    .copied()
                    .or(p.default)
                    .map(|v| (p.name, v))
            })
            .collect()
    }
}

fn scalar(v: Result<f64>) -> Result<Output> {
    v.map(Output::Scalar)
}

const R: &[Param] = &[req("r")];
const A: &[Param] = &[req("a")];
const AR: &[Param] = &[req("a"), req("r")];
const KR: &[Param] = &[req("k"), req("r")];
const AKR: &[Param] = &[req("a"), req("k"), req("r")];
const Z: &[Param] = &[req("re"), req("im")];
const K_ZABS: &[Param] = &[req("k"), req("z-abs")];
const K_ALPHA: &[Param] = &[req("k"), req("alpha")];
const TRIPLE: &[Param] = &[
    req("z0-re"),
    req("z0-im"),
    req("z1-re"),
    req("z1-im"),
    req("z2-re"),
    req("z2-im"),
    req("w0-re"),
    req("w0-im"),
    req("w1-re"),
    req("w1-im"),
    req("w2-re"),
    req("w2-im"),
];

pub static FUNCTIONS: &[Function] = &[
    Function {
        name: "agm",
        params: &[req("x"), req("y")],
        summary: "arithmetic-geometric mean of x and y",
        eval: |i| scalar(sf::agm(i.get("x"), i.get("y"))),
    },
    Function {
        name: "elliptic_k",
        params: R,
        summary: "complete elliptic integral of the first kind",
        eval: |i| scalar(sf::elliptic_k(i.get("r"))),
    },
    Function {
        name: "elliptic_e",
        params: R,
        summary: "complete elliptic integral of the second kind",
        eval: |i| scalar(sf::elliptic_e(i.get("r"))),
    },
    Function {
        name: "elliptic_ka",
        params: AR,
        summary: "generalized first-kind integral (pi/2) F(a,1-a;1;r^2)",
        eval: |i| scalar(sf::elliptic_ka(i.a()?, i.get("r"))),
    },
    Function {
        name: "gauss_2f1_sym",
        params: &[req("a"), req("x")],
        summary: "F(a,1-a;1;x)",
        eval: |i| scalar(sf::gauss_2f1_sym(i.a()?, i.get("x"))),
    },
    Function {
        name: "digamma",
        params: &[req("x")],
        summary: "psi(x) for x > 0",
        eval: |i| scalar(sf::digamma(i.get("x"))),
    },
    Function {
        name: "euler_gamma",
        params: &[],
        summary: "Euler-Mascheroni constant",
        eval: |_| Ok(Output::Scalar(sf::euler_gamma())),
    },
    Function {
        name: "ramanujan_r",
        params: A,
        summary: "R(a) = -2 gamma - psi(a) - psi(1-a)",
        eval: |i| Ok(Output::Scalar(sf::ramanujan_r(i.a()?))),
    },
    Function {
        name: "ramanujan_r_literal",
        params: A,
        summary: "2 gamma - psi(a) - psi(1-a)",
        eval: |i| Ok(Output::Scalar(sf::ramanujan_r_literal(i.a()?))),
    },
    Function {
        name: "landau_constant",
        params: &[],
        summary: "Gamma(1/4)^4 / (4 pi^2)",
        eval: |_| Ok(Output::Scalar(sf::landau_constant())),
    },
    Function {
        name: "apery_zeta3",
        params: &[],
        summary: "zeta(3)",
        eval: |_| Ok(Output::Scalar(sf::apery_zeta3())),
    },
    Function {
        name: "fourteen_zeta3",
        params: &[],
        summary: "14 zeta(3)",
        eval: |_| Ok(Output::Scalar(sf::fourteen_zeta3())),
    },
    Function {
        name: "grotzsch_u",
        params: R,
        summary: "modulus of the Grotzsch ring",
        eval: |i| Ok(Output::Scalar(modulus::grotzsch_u(i.radius()?))),
    },
    Function {
        name: "grotzsch_ua",
        params: AR,
        summary: "generalized modulus u_a(r)",
        eval: |i| Ok(Output::Scalar(modulus::grotzsch_ua(i.a()?, i.radius()?))),
    },
    Function {
        name: "ua_symmetry_value",
        params: A,
        summary: "u_a at r = 1/sqrt(2)",
        eval: |i| Ok(Output::Scalar(modulus::ua_symmetry_value(i.a()?))),
    },
    Function {
        name: "grotzsch_u_inv",
        params: &[req("y")],
        summary: "r with u(r) = y",
        eval: |i| {
            let inv = modulus::grotzsch_u_inv(i.get("y"))?;
            Ok(Output::pair(
                "r",
                inv.radius.value(),
                "residual",
                inv.residual,
            ))
        },
    },
    Function {
        name: "grotzsch_ua_inv",
        params: &[req("a"), req("y")],
        summary: "r with u_a(r) = y",
        eval: |i| {
            let inv = modulus::grotzsch_ua_inv(i.a()?, i.get("y"))?;
            Ok(Output::pair(
                "r",
                inv.radius.value(),
                "residual",
                inv.residual,
            ))
        },
    },
    Function {
        name: "landen_ascend",
        params: &[req("r"), opt("n", 5.0)],
        summary: "terms r_0 .. r_n of the ascending Landen sequence",
        eval: |i| {
            let seq = modulus::landen_ascend(i.radius()?, i.count("n")?);
            Ok(Output::Fields(
                seq.terms()
                    .iter()
                    .enumerate()
                    .map(|(n, &t)| (format!("r{n}"), t))
                    .collect(),
            ))
        },
    },
    Function {
        name: "product_p",
        params: R,
        summary: "Landen product P(r)",
        eval: |i| Ok(Output::Scalar(modulus::product_p(i.radius()?))),
    },
    Function {
        name: "fn_a",
        params: R,
        summary: "r'^2 arctan(r) / r",
        eval: |i| Ok(Output::Scalar(modulus::fn_a(i.radius()?))),
    },
    Function {
        name: "fn_b",
        params: R,
        summary: "companion of fn_a",
        eval: |i| Ok(Output::Scalar(modulus::fn_b(i.radius()?))),
    },
    Function {
        name: "lemma2_constants",
        params: A,
        summary: "constants C1 .. C6 bracketing u_a - u (C6 is NaN at a = 1/2)",
        eval: |i| {
            let c = modulus::lemma2_constants(i.a()?);
            Ok(Output::Fields(vec![
                ("c1".into(), c.c1),
                ("c2".into(), c.c2),
                ("c3".into(), c.c3),
                ("c4".into(), c.c4),
                ("c5".into(), c.c5),
                ("c6".into(), c.c6.unwrap_or(f64::NAN)),
            ]))
        },
    },
    Function {
        name: "phi_k",
        params: KR,
        summary: "Hersch-Pfluger distortion phi_K(r)",
        eval: |i| {
            Ok(Output::Scalar(
                distortion::phi_k(i.k()?, i.radius()?)?.value(),
            ))
        },
    },
    Function {
        name: "phi_ka",
        params: AKR,
        summary: "generalized distortion phi_K(a, r)",
        eval: |i| {
            Ok(Output::Scalar(
                distortion::phi_ka(i.a()?, i.k()?, i.radius()?)?.value(),
            ))
        },
    },
    Function {
        name: "phi_k_product",
        params: KR,
        summary: "Landen product form [r/P(r)]^(1/K) prod (1+phi_(1/K)(r_n))^(2^-n)",
        eval: |i| scalar(distortion::phi_k_product(i.k()?, i.radius()?)),
    },
    Function {
        name: "phi_partial_r",
        params: AKR,
        summary: "partial derivative of phi_K(a, r) in r",
        eval: |i| scalar(distortion::phi_partial_r(i.a()?, i.k()?, i.radius()?)),
    },
    Function {
        name: "phi_partial_k",
        params: AKR,
        summary: "partial derivative of phi_K(a, r) in K",
        eval: |i| scalar(distortion::phi_partial_k(i.a()?, i.k()?, i.radius()?)),
    },
    Function {
        name: "lemma3_fk",
        params: AKR,
        summary: "phi_K(a, r) r^(-1/K); --literal uses r^(1/K)",
        eval: |i| {
            let form = if i.literal {
                Lemma3Form::Literal
            } else {
                Lemma3Form::Corrected
            };
            scalar(distortion::lemma3_fk(i.a()?, i.k()?, i.radius()?, form))
        },
    },
    Function {
        name: "derive_lattice_gap",
        params: &[opt("h", bounds::LATTICE_GAP_RESOLUTION)],
        summary: "grid-search lattice gap d at resolution h",
        eval: |i| scalar(bounds::derive_lattice_gap(i.get("h"))),
    },
    Function {
        name: "rho_lower",
        params: &[req("z-abs")],
        summary: "lower bound for the hyperbolic density of the twice-punctured plane",
        eval: |i| scalar(bounds::rho_lower(i.get("z-abs"))),
    },
    Function {
        name: "zeta_map",
        params: Z,
        summary: "(sqrt(1-z) - 1)/(sqrt(1-z) + 1)",
        eval: |i| Ok(Output::point(bounds::zeta_map(i.z()?)?)),
    },
    Function {
        name: "sigma_metric",
        params: Z,
        summary: "comparison metric sigma(z)",
        eval: |i| scalar(bounds::sigma_metric(i.z()?)),
    },
    Function {
        name: "sigma_closed_form",
        params: Z,
        summary: "closed form of sigma(z)",
        eval: |i| scalar(bounds::sigma_closed_form(i.z()?)),
    },
    Function {
        name: "schottky_classical",
        params: &[req("ln-f0"), req("z-abs")],
        summary: "classical Schottky bound on ln|f(z)|",
        eval: |i| scalar(bounds::schottky_classical(i.get("ln-f0"), i.get("z-abs"))),
    },
    Function {
        name: "schottky_f",
        params: Z,
        summary: "F(w) = ln[1 + 2 sqrt(L(1-L))]/2 with L = ln w / (2 pi i)",
        eval: |i| Ok(Output::point(bounds::schottky_f(i.z()?)?)),
    },
    Function {
        name: "schottky_sf",
        params: &[req("f-abs")],
        summary: "exp(pi e^(2|F|))",
        eval: |i| scalar(bounds::schottky_sf(i.get("f-abs"))),
    },
    Function {
        name: "f_growth_bound",
        params: &[
            req("f0-abs"),
            opt("b1", bounds::BLOCH_LOWER),
            opt("d", bounds::LATTICE_GAP_D),
            opt("theta", 0.5),
        ],
        summary: "|F(0)| + (d/B1) ln(1/(1-theta))",
        eval: |i| {
            let cfg = BoundConfig::new(i.get("b1"), i.get("d"), i.get("theta"))?;
            scalar(bounds::f_growth_bound(i.get("f0-abs"), &cfg))
        },
    },
    Function {
        name: "schottky_f0_window",
        params: &[req("alpha"), req("beta")],
        summary: "ln beta - ln alpha after normalizing alpha < 1 < beta",
        eval: |i| scalar(bounds::schottky_f0_window(i.get("alpha"), i.get("beta"))),
    },
    Function {
        name: "eta_k",
        params: KR,
        summary: "quasiconformal Schottky factor eta_K(r)",
        eval: |i| scalar(bounds::eta_k(i.k()?, i.radius()?)),
    },
    Function {
        name: "theorem3_sfk",
        params: KR,
        summary: "quasiconformal Schottky constant S_f(K, r)",
        eval: |i| scalar(bounds::theorem3_sfk(i.k()?, i.radius()?)),
    },
    Function {
        name: "qc_schwarz_bounds",
        params: K_ZABS,
        summary: "lower and upper quasiconformal Schwarz bounds",
        eval: |i| {
            let b = bounds::qc_schwarz_bounds(i.k()?, i.get("z-abs"))?;
            Ok(Output::pair("lower", b.lower, "upper", b.upper))
        },
    },
    Function {
        name: "qc_schwarz_product_bounds",
        params: K_ZABS,
        summary: "Schwarz bounds with P replaced by P^2",
        eval: |i| {
            let b = bounds::qc_schwarz_product_bounds(i.k()?, i.get("z-abs"))?;
            Ok(Output::pair("lower", b.lower, "upper", b.upper))
        },
    },
    Function {
        name: "triple_angle",
        params: TRIPLE,
        summary: "arcsine angles (alpha, beta) of a triple z and its image w",
        eval: |i| {
            let pts = TriplePoints::new(
                i.point("z0-re", "z0-im")?,
                i.point("z1-re", "z1-im")?,
                i.point("z2-re", "z2-im")?,
            )?;
            let imgs = TriplePoints::new(
                i.point("w0-re", "w0-im")?,
                i.point("w1-re", "w1-im")?,
                i.point("w2-re", "w2-im")?,
            )?;
            let (alpha, beta) = bounds::triple_angle(&pts, &imgs);
            Ok(Output::pair("alpha", alpha, "beta", beta))
        },
    },
    Function {
        name: "mori_h",
        params: K_ALPHA,
        summary: "sin(alpha)^(-1/K)",
        eval: |i| scalar(bounds::mori_h(i.k()?, i.get("alpha"))),
    },
    Function {
        name: "mori_sin_bound",
        params: K_ALPHA,
        summary: "2^(1-1/K) sin(alpha)^(1/K)",
        eval: |i| scalar(bounds::mori_sin_bound(i.k()?, i.get("alpha"))),
    },
    Function {
        name: "mori_sin_bound_clamped",
        params: K_ALPHA,
        summary: "mori_sin_bound capped at 1",
        eval: |i| scalar(bounds::mori_sin_bound_clamped(i.k()?, i.get("alpha"))),
    },
    Function {
        name: "mori_holder_bound",
        params: &[req("k"), req("dz")],
        summary: "c^(1-1/K) |dz|^(1/K), c = 16 or 64 (--variant)",
        eval: |i| {
            scalar(bounds::mori_holder_bound(
                i.k()?,
                i.get("dz"),
                i.mori_variant()?,
            ))
        },
    },
];

pub fn lookup(name: &str) -> Result<&'static Function> {
    FUNCTIONS
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Usage(format!("unknown function {name:?}\n{}", listing())))
}

/// One line per function: name, flags, summary.
pub fn listing() -> String {
    let mut out = String::from("available functions:");
    for f in FUNCTIONS {
        let flags: Vec<String> = f
            .params
            .iter()
            .map(|p| match p.default {
                Some(_) => format!("[--{}]", p.name),
                None => format!("--{}", p.name),
            })
            .collect();
        out.push_str(&format!(
            "\n  {:<26} {:<28} {}",
            f.name,
            flags.join(" "),
            f.summary
        ));
    }
    out
}

/// Every numeric flag any function reads, in first-use order.
pub fn all_param_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = Vec::new();
    for p in FUNCTIONS.iter().flat_map(|f| f.params) {
        if !names.contains(&p.name) {
            names.push(p.name);
        }
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str, args: &[(&'static str, f64)]) -> Result<Output> {
        let f = lookup(name)?;
        let given = args.iter().copied().collect();
        let input = Input {
            values: f.bind(&given),
            ..Default::default()
        };
        f.eval(&input)
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = FUNCTIONS.iter().map(|f| f.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), FUNCTIONS.len());
    }

    #[test]
    fn dispatch_matches_library() {
        let v = run("phi_k", &[("k", 2.0), ("r", 0.25)]).unwrap();
        assert_eq!(
            v,
            Output::Scalar(
                distortion::phi_k(
                    DistortionCoeff::new(2.0).unwrap(),
                    UnitRadius::new(0.25).unwrap()
                )
                .unwrap()
                .value()
            )
        );
        let Output::Fields(f) = run("landen_ascend", &[("r", 0.5)]).unwrap() else {
            panic!()
        };
        assert_eq!(f.len(), 6);
        let Output::Fields(c) = run("lemma2_constants", &[("a", 0.5)]).unwrap() else {
            panic!()
        };
        assert!(c[5].1.is_nan());
    }

    #[test]
    fn missing_and_invalid_arguments() {
        assert!(matches!(run("phi_k", &[("k", 2.0)]), Err(Error::Usage(_))));
        assert!(matches!(run("nope", &[]), Err(Error::Usage(_))));
        let e = run("elliptic_k", &[("r", 1.5)]).unwrap_err();
        assert_eq!(e.to_string(), "domain error: r must lie in [0,1)");
        assert!(run("landen_ascend", &[("r", 0.5), ("n", 2.5)]).is_err());
    }

    #[test]
    fn variant_and_literal_flags() {
        let f = lookup("mori_holder_bound").unwrap();
        let mut input = Input {
            values: f.bind(&[("k", 2.0), ("dz", 1.0)].into_iter().collect()),
            ..Default::default()
        };
        assert_eq!(f.eval(&input).unwrap(), Output::Scalar(4.0));
        input.variant = Some("64".into());
        assert_eq!(f.eval(&input).unwrap(), Output::Scalar(8.0));
        input.variant = Some("32".into());
        assert!(f.eval(&input).is_err());

        let f = lookup("lemma3_fk").unwrap();
        let mut input = Input {
            values: f.bind(&[("a", 0.5), ("k", 1.0), ("r", 0.25)].into_iter().collect()),
            ..Default::default()
        };
        assert_eq!(f.eval(&input).unwrap(), Output::Scalar(1.0));
        input.literal = true;
        assert_eq!(f.eval(&input).unwrap(), Output::Scalar(0.0625));
    }
}
