//! Built-in families of Weierstrass data with their parameter constraints.

use std::collections::BTreeMap;

use rug::Rational;
use serde::Serialize;

use crate::algebra::{ExactComplex, Polynomial, RationalMap, SpherePoint};
use crate::error::{Error, Result};
use crate::r3::WData3;
use crate::r4::WData4;
use crate::ramification::PuncturedSphere;

/// Largest exponent accepted for integer parameters.
pub const MAX_EXPONENT: i64 = 64;

/// Absolute slack for equality constraints on parameters given as floats.
pub const FLOAT_CONSTRAINT_TOL: f64 = 1e-10;

/// A parameter value; `inexact` marks values converted from a float.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamValue {
    pub value: ExactComplex,
    pub inexact: bool,
}

impl ParamValue {
    pub fn exact(value: ExactComplex) -> Self {
        Self { value, inexact: false }
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        Ok(Self { value: ExactComplex::from_f64(x, 0.0)?, inexact: true })
    }
}

pub type Params = BTreeMap<String, ParamValue>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    R3,
    R4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Real,
    Complex,
    Integer,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub default: &'static str,
}

/// Descriptor of a built-in family.
#[derive(Clone, Debug, Serialize)]
pub struct Family {
    pub name: &'static str,
    pub space: Space,
    pub params: Vec<ParamSpec>,
    pub constraints: Vec<&'static str>,
    /// False for data known to violate the period condition.
    pub period_condition: bool,
    pub summary: &'static str,
}

/// Weierstrass data in either space.
#[derive(Clone, Debug, PartialEq)]
pub enum Surface {
    R3(WData3),
    R4(WData4),
}

impl Surface {
    pub fn space(&self) -> Space {
        match self {
            Surface::R3(_) => Space::R3,
            Surface::R4(_) => Space::R4,
        }
    }

    pub fn domain(&self) -> &PuncturedSphere {
        match self {
            Surface::R3(w) => w.domain(),
            Surface::R4(w) => w.domain(),
        }
    }
}

fn spec(name: &'static str, kind: ParamKind, default: &'static str) -> ParamSpec {
    ParamSpec { name, kind, default }
}

pub fn list_families() -> Vec<Family> {
    use ParamKind::*;
    vec![
        Family {
            name: "catenoid",
            space: Space::R3,
            params: vec![],
            constraints: vec![],
            period_condition: true,
            summary: "g = z, h = 1/z^2 on C minus {0}",
        },
        Family {
            name: "enneper",
            space: Space::R3,
            params: vec![],
            constraints: vec![],
            period_condition: true,
            summary: "g = z, h = 1 on C",
        },
        Family {
            name: "voss",
            space: Space::R3,
            params: vec![spec("alpha1", Complex, "0"), spec("alpha2", Complex, "1"), spec("alpha3", Complex, "2")],
            constraints: vec!["alpha1, alpha2, alpha3 distinct"],
            period_condition: false,
            summary: "g = z, h = 1/((z-alpha1)(z-alpha2)(z-alpha3)) on C minus three points; real periods",
        },
        Family {
            name: "ms1994",
            space: Space::R3,
            params: vec![spec("a", Real, "-1"), spec("t", Real, "2")],
            constraints: vec!["(a-1)(t-1) != 0", "a((t-1)a+4) != 0", "sigma^2 < 0"],
            period_condition: true,
            summary: "g = s(z^2+1+a(t-1))/(z^2+t), h = (z^2+t)^2/(z^2+1)^2, s^2 = (t+3)/(a((t-1)a+4)); two omitted values",
        },
        Family {
            name: "new-surface",
            space: Space::R3,
            params: vec![spec("a", Real, "0"), spec("b", Real, "2")],
            constraints: vec!["a != 1", "b != 1", "a != b", "16ab-11a-5b != 0", "sigma^2 < 0"],
            period_condition: true,
            summary: "degree 4 Gauss map on C minus {0, i, -i} with two omitted values and one order-2 totally ramified value",
        },
        Family {
            name: "lagrangian-catenoid",
            space: Space::R4,
            params: vec![spec("c", Complex, "0")],
            constraints: vec![],
            period_condition: true,
            summary: "g1 = -z^2, g2 = c, h = -1/z^2 on C minus {0}",
        },
        Family {
            name: "hkw-r4",
            space: Space::R4,
            params: vec![spec("a", Real, "1"), spec("b", Real, "3")],
            constraints: vec!["(a+1)(b+1)=8"],
            period_condition: true,
            summary: "g1 = (z^2+a)/(z^2-1), g2 = (z^2+b)/(z^2-1), h = (z^2-1)^2/(z^2+1)^2; nu = 5/2 for both maps",
        },
        Family {
            name: "omit2-r4",
            space: Space::R4,
            params: vec![
                spec("a", Real, "2"),
                spec("b", Real, "3"),
                spec("l", Integer, "2"),
                spec("m", Integer, "2"),
                spec("n", Integer, "2"),
            ],
            constraints: vec!["a not in {0, 1}", "b not in {0, 1}", "m+n > 2l-2 >= 2", "m-l != -1", "n-l != -1"],
            period_condition: true,
            summary: "g1 = (z^m-a)/(z^m-1), g2 = (z^n-b)/(z^n-1), h = (z^m-1)(z^n-1)/z^l; both maps omit two values",
        },
        Family {
            name: "conjugate-pair-r4",
            space: Space::R4,
            params: vec![spec("a", Complex, "1")],
            constraints: vec!["a != 0"],
            period_condition: true,
            summary: "g1 = a z, g2 = -conj(a) z, h = 1/z^2; both maps omit 0 and infinity",
        },
    ]
}

pub fn family(name: &str) -> Result<Family> {
    list_families()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

/// Resolved parameters with defaults filled in.
struct Args {
    values: BTreeMap<&'static str, ParamValue>,
}

impl Args {
    fn resolve(fam: &Family, params: &Params) -> Result<Self> {
        for k in params.keys() {
            if !fam.params.iter().any(|p| p.name == k) {
                return Err(Error::ConstraintViolated(format!("unknown parameter {k} for {}", fam.name)));
            }
        }
        let mut values = BTreeMap::new();
        for p in &fam.params {
            let v = match params.get(p.name) {
                Some(v) => v.clone(),
                None => ParamValue::exact(p.default.parse()?),
            };
            match p.kind {
                ParamKind::Real | ParamKind::Integer if *v.value.im() != 0 => {
                    return Err(Error::ConstraintViolated(format!("{} real", p.name)));
                }
                ParamKind::Integer if !v.value.re().is_integer() => {
                    return Err(Error::ConstraintViolated(format!("{} integer", p.name)));
                }
                _ => {}
            }
            values.insert(p.name, v);
        }
        Ok(Self { values })
    }

    fn inexact(&self) -> bool {
        self.values.values().any(|v| v.inexact)
    }

    fn c(&self, name: &str) -> ExactComplex {
        self.values[name].value.clone()
    }

    fn r(&self, name: &str) -> Rational {
        self.values[name].value.re().clone()
    }

    fn int(&self, name: &str) -> Result<i64> {
        let r = self.r(name);
        let n = r.numer().to_i64().ok_or(Error::Overflow)?;
        if !(1..=MAX_EXPONENT).contains(&n) {
            return Err(Error::ConstraintViolated(format!("1 <= {name} <= {MAX_EXPONENT}")));
        }
        Ok(n)
    }

    /// `x = 0`, with float slack when any parameter is inexact.
    fn vanishes(&self, x: &Rational) -> bool {
        if self.inexact() {
            x.to_f64().abs() <= FLOAT_CONSTRAINT_TOL
        } else {
            *x == 0
        }
    }

    fn nonzero(&self, x: &Rational, constraint: &str) -> Result<()> {
        if self.vanishes(x) {
            Err(Error::ConstraintViolated(constraint.into()))
        } else {
            Ok(())
        }
    }
}

fn poly(c: Vec<ExactComplex>) -> Polynomial {
    Polynomial::new(c)
}

fn rat(r: Rational) -> ExactComplex {
    ExactComplex::real(r)
}

fn int(n: i64) -> ExactComplex {
    ExactComplex::from_int(n)
}

/// `c₀ + c₂ z² + c₄ z⁴`.
fn even_quartic(c0: ExactComplex, c2: ExactComplex, c4: ExactComplex) -> Polynomial {
    poly(vec![c0, ExactComplex::zero(), c2, ExactComplex::zero(), c4])
}

/// `z^n + c`.
fn binomial(n: usize, c: ExactComplex) -> Polynomial {
    Polynomial::monomial(ExactComplex::one(), n).add(&Polynomial::constant(c))
}

fn punctures(points: Vec<SpherePoint>) -> Result<PuncturedSphere> {
    PuncturedSphere::new(points)
}

fn pm_i_inf() -> Vec<SpherePoint> {
    vec![SpherePoint::exact(ExactComplex::i()), SpherePoint::exact(-ExactComplex::i()), SpherePoint::Infinity]
}

fn negative_sigma_sq(args: &Args, num: Rational, den: Rational, den_constraint: &str) -> Result<Rational> {
    args.nonzero(&den, den_constraint)?;
    let q = num / den;
    if q >= 0 {
        return Err(Error::ConstraintViolated("sigma^2 < 0".into()));
    }
    Ok(q)
}

/// Builds the data of family `name`; missing parameters take their defaults.
pub fn instantiate(name: &str, params: &Params) -> Result<Surface> {
    let fam = family(name)?;
    let args = Args::resolve(&fam, params)?;
    let inexact = args.inexact();
    let z = RationalMap::identity();
    let surface = match name {
        "catenoid" => {
            let h = RationalMap::new(Polynomial::one(), Polynomial::monomial(ExactComplex::one(), 2))?;
            Surface::R3(WData3::new(z, h, punctures(vec![SpherePoint::from_int(0), SpherePoint::Infinity])?)?)
        }
        "enneper" => Surface::R3(WData3::new(z, RationalMap::constant(ExactComplex::one()), PuncturedSphere::plane())?),
        "voss" => {
            let alphas = [args.c("alpha1"), args.c("alpha2"), args.c("alpha3")];
            let mut den = Polynomial::one();
            let mut pts = Vec::new();
            for a in &alphas {
                den = den.mul(&Polynomial::linear_root(a));
                pts.push(SpherePoint::exact(a.clone()));
            }
            pts.push(SpherePoint::Infinity);
            let dom = punctures(pts).map_err(|_| Error::ConstraintViolated("alpha1, alpha2, alpha3 distinct".into()))?;
            Surface::R3(WData3::new(z, RationalMap::new(Polynomial::one(), den)?, dom)?)
        }
        "ms1994" => {
            let (a, t) = (args.r("a"), args.r("t"));
            let one = Rational::from(1);
            args.nonzero(&((a.clone() - &one) * (t.clone() - &one)), "(a-1)(t-1) != 0")?;
            let den = a.clone() * ((t.clone() - &one) * a.clone() + Rational::from(4));
            let q = negative_sigma_sq(&args, t.clone() + Rational::from(3), den, "a((t-1)a+4) != 0")?;
            let c = one.clone() + a * (t.clone() - &one);
            let g = RationalMap::new(binomial(2, rat(c)), binomial(2, rat(t.clone())))?;
            let h = RationalMap::new(binomial(2, rat(t)).pow(2), binomial(2, int(1)).pow(2))?;
            Surface::R3(WData3::with_sigma_sq(g, q, h, punctures(pm_i_inf())?)?)
        }
        "new-surface" => {
            let (a, b) = (args.r("a"), args.r("b"));
            let one = Rational::from(1);
            args.nonzero(&(a.clone() - &one), "a != 1")?;
            args.nonzero(&(b.clone() - &one), "b != 1")?;
            args.nonzero(&(a.clone() - &b), "a != b")?;
            let num = Rational::from(5) * &a + Rational::from(11) * &b - Rational::from(16);
            let den = Rational::from(16) * a.clone() * &b - Rational::from(11) * &a - Rational::from(5) * &b;
            let q = negative_sigma_sq(&args, num, den, "16ab-11a-5b != 0")?;
            let lead = rat(b.clone() - &a);
            let c = rat(Rational::from(4) * a.clone() * (b.clone() - &one));
            let d = rat(Rational::from(4) * (b - &one));
            let top = even_quartic(c.clone(), c, lead.clone());
            let bottom = even_quartic(d.clone(), d, lead);
            let g = RationalMap::new(top, bottom.clone())?;
            let zden = Polynomial::monomial(ExactComplex::one(), 2).mul(&binomial(2, int(1)).pow(2));
            let h = RationalMap::new(bottom.pow(2), zden)?;
            let mut pts = vec![SpherePoint::from_int(0)];
            pts.extend(pm_i_inf());
            Surface::R3(WData3::with_sigma_sq(g, q, h, punctures(pts)?)?)
        }
        "lagrangian-catenoid" => {
            let g1 = RationalMap::polynomial(Polynomial::monomial(int(-1), 2));
            let g2 = RationalMap::constant(args.c("c"));
            let h = RationalMap::new(Polynomial::constant(int(-1)), Polynomial::monomial(ExactComplex::one(), 2))?;
            Surface::R4(WData4::new(g1, g2, h, punctures(vec![SpherePoint::from_int(0), SpherePoint::Infinity])?)?)
        }
        "hkw-r4" => {
            let (a, b) = (args.r("a"), args.r("b"));
            let prod = (a.clone() + Rational::from(1)) * (b.clone() + Rational::from(1)) - Rational::from(8);
            if !args.vanishes(&prod) {
                return Err(Error::ConstraintViolated("(a+1)(b+1)=8".into()));
            }
            let zm1 = binomial(2, int(-1));
            let g1 = RationalMap::new(binomial(2, rat(a)), zm1.clone())?;
            let g2 = RationalMap::new(binomial(2, rat(b)), zm1.clone())?;
            let h = RationalMap::new(zm1.pow(2), binomial(2, int(1)).pow(2))?;
            Surface::R4(WData4::new(g1, g2, h, punctures(pm_i_inf())?)?)
        }
        "omit2-r4" => {
            let (a, b) = (args.r("a"), args.r("b"));
            let (l, m, n) = (args.int("l")?, args.int("m")?, args.int("n")?);
            for (x, label) in [(&a, "a not in {0, 1}"), (&b, "b not in {0, 1}")] {
                args.nonzero(x, label)?;
                args.nonzero(&(x.clone() - Rational::from(1)), label)?;
            }
            if !(m + n > 2 * l - 2 && 2 * l - 2 >= 2) {
                return Err(Error::ConstraintViolated("m+n > 2l-2 >= 2".into()));
            }
            if m - l == -1 {
                return Err(Error::ConstraintViolated("m-l != -1".into()));
            }
            if n - l == -1 {
                return Err(Error::ConstraintViolated("n-l != -1".into()));
            }
            let (m, n, l) = (m as usize, n as usize, l as usize);
            let g1 = RationalMap::new(binomial(m, rat(-a)), binomial(m, int(-1)))?;
            let g2 = RationalMap::new(binomial(n, rat(-b)), binomial(n, int(-1)))?;
            let h = RationalMap::new(
                binomial(m, int(-1)).mul(&binomial(n, int(-1))),
                Polynomial::monomial(ExactComplex::one(), l),
            )?;
            Surface::R4(WData4::new(g1, g2, h, punctures(vec![SpherePoint::from_int(0), SpherePoint::Infinity])?)?)
        }
        "conjugate-pair-r4" => {
            let a = args.c("a");
            if a.is_zero() {
                return Err(Error::ConstraintViolated("a != 0".into()));
            }
            let g1 = RationalMap::polynomial(Polynomial::monomial(a.clone(), 1));
            let g2 = RationalMap::polynomial(Polynomial::monomial(-a.conj(), 1));
            let h = RationalMap::new(Polynomial::one(), Polynomial::monomial(ExactComplex::one(), 2))?;
            Surface::R4(WData4::new(g1, g2, h, punctures(vec![SpherePoint::from_int(0), SpherePoint::Infinity])?)?)
        }
        _ => return Err(Error::UnknownFamily(name.into())),
    };
    Ok(match surface {
        Surface::R3(w) => Surface::R3(w.with_inexact(inexact)),
        Surface::R4(w) => Surface::R4(w.with_inexact(inexact)),
    })
}

/// Instantiation with all defaults.
pub fn instantiate_default(name: &str) -> Result<Surface> {
    instantiate(name, &Params::new())
}
