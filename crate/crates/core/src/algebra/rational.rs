//! Rational maps `num/den` on the Riemann sphere.

use std::fmt;

use num_complex::Complex64;
use rug::Complex;

use super::exact::ExactComplex;
use super::poly::Polynomial;
use super::sphere::{ComplexValue, SpherePoint};
use crate::error::{Error, Result};

/// A quotient of polynomials over `Q(i)`. Values built with [`RationalMap::new`]
/// are always reduced: `gcd(num, den) = 1` and `den` is monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
}

impl RationalMap {
    /// Builds and reduces `num/den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        reduce(num, den)
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: ExactComplex) -> Self {
        Self::polynomial(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::polynomial(Polynomial::zero())
    }

    pub fn identity() -> Self {
        Self::polynomial(Polynomial::z())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// `d = max(deg num, deg den)`; the zero map has degree 0.
    pub fn degree(&self) -> usize {
        self.num.degree_or_zero().max(self.den.degree_or_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::new(num, self.den.mul(&rhs.den)).expect("nonzero denominators")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero denominators")
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Wronskian numerator `num'·den − num·den'`, so that `f' = W/den²`.
    pub fn wronskian(&self) -> Polynomial {
        self.num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.wronskian(), self.den.square_poly()).expect("nonzero denominator")
    }

    /// Order of vanishing at `p` (negative for poles).
    pub fn order_at(&self, p: &SpherePoint) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroMap);
        }
        match p {
            SpherePoint::Infinity => Ok(self.den.degree_or_zero() as i64 - self.num.degree_or_zero() as i64),
            SpherePoint::Finite(ComplexValue::Exact(z)) => {
                Ok(self.num.multiplicity_at(z)? as i64 - self.den.multiplicity_at(z)? as i64)
            }
            SpherePoint::Finite(ComplexValue::Numeric(z)) => {
                let bits = z.prec_bits();
                let tol = 2f64.powi(-(bits as i32) / 3);
                let count = |poly: &Polynomial| -> Result<i64> {
                    if poly.is_constant() {
                        return Ok(0);
                    }
                    let (_, factors) = poly.squarefree()?;
                    for (m, q) in factors {
                        let v = q.eval_complex(z.inner());
                        let scale = coeff_scale(&q, z.abs_f64());
                        if rug::Float::with_val(bits, v.abs_ref()).to_f64() <= tol * scale {
                            return Ok(m as i64);
                        }
                    }
                    Ok(0)
                };
                Ok(count(&self.num)? - count(&self.den)?)
            }
        }
    }

    /// Value at an exact point of the sphere.
    pub fn value_at_exact(&self, p: &SpherePoint) -> Result<SpherePoint> {
        match p {
            SpherePoint::Infinity => Ok(self.value_at_infinity()),
            SpherePoint::Finite(ComplexValue::Exact(z)) => {
                let d = self.den.eval(z);
                if d.is_zero() {
                    Ok(SpherePoint::Infinity)
                } else {
                    Ok(SpherePoint::exact(&self.num.eval(z) / &d))
                }
            }
            SpherePoint::Finite(ComplexValue::Numeric(_)) => {
                Err(Error::Parse("exact evaluation at a numeric point".into()))
            }
        }
    }

    pub fn value_at_infinity(&self) -> SpherePoint {
        let dn = self.num.degree();
        let dd = self.den.degree_or_zero();
        match dn {
            None => SpherePoint::exact(ExactComplex::zero()),
            Some(n) if n > dd => SpherePoint::Infinity,
            Some(n) if n < dd => SpherePoint::exact(ExactComplex::zero()),
            Some(_) => SpherePoint::exact(self.num.leading().unwrap() / self.den.leading().unwrap()),
        }
    }

    pub fn eval_complex(&self, z: &Complex) -> Option<Complex> {
        let d = self.den.eval_complex(z);
        if d.real().is_zero() && d.imag().is_zero() {
            return None;
        }
        Some(Complex::with_val(z.prec().0, self.num.eval_complex(z) / d))
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        horner_c64(&self.num.to_c64_coeffs(), z) / horner_c64(&self.den.to_c64_coeffs(), z)
    }

    /// `num − a·den` for finite `a`, `den` for `a = ∞`.
    pub fn shifted_numerator(&self, a: &SpherePoint) -> Result<Polynomial> {
        match a {
            SpherePoint::Infinity => Ok(self.den.clone()),
            SpherePoint::Finite(ComplexValue::Exact(c)) => Ok(self.num.sub(&self.den.scale(c))),
            SpherePoint::Finite(ComplexValue::Numeric(_)) => {
                Err(Error::Parse("numeric value in exact shift".into()))
            }
        }
    }

    /// Composition with `w = 1/z`: returns the map `w ↦ f(1/w)`.
    pub fn at_inverse(&self) -> Self {
        let n = self.degree();
        Self::new(self.num.reversed(n), self.den.reversed(n)).expect("nonzero denominator")
    }
}

fn coeff_scale(q: &Polynomial, r: f64) -> f64 {
    let mut s = 0.0;
    let mut pow = 1.0;
    for c in q.coeffs() {
        s += c.to_c64().norm() * pow;
        pow *= r.max(1.0);
    }
    s.max(1.0)
}

pub(crate) fn horner_c64(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

impl Polynomial {
    pub(crate) fn square_poly(&self) -> Polynomial {
        self.mul(self)
    }
}

/// Cancels common factors and normalizes the denominator to be monic.
pub fn reduce(num: Polynomial, den: Polynomial) -> Result<RationalMap> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalMap::zero());
    }
    let g = num.gcd(&den);
    let (num, den) = if g.is_constant() {
        (num, den)
    } else {
        (num.exact_div(&g)?, den.exact_div(&g)?)
    };
    let lead_inv = den.leading().unwrap().inv()?;
    Ok(RationalMap { num: num.scale(&lead_inv), den: den.scale(&lead_inv) })
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
