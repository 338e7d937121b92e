//! Gaussian rationals `Q(i)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::{Complex, Integer, Rational};

use crate::error::{Error, Result};

/// An element `re + im·i` of `Q(i)`. Both parts are kept in lowest terms by `rug`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactComplex {
    re: Rational,
    im: Rational,
}

impl ExactComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(Rational::new(), Rational::from(1))
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational::from(n), Rational::new())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(Rational::from((num, den)), Rational::new())
    }

    pub fn from_gaussian(re: i64, im: i64) -> Self {
        Self::new(Rational::from(re), Rational::from(im))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::new())
    }

    /// Exact conversion of a pair of doubles (every finite double is a dyadic rational).
    pub fn from_f64(re: f64, im: f64) -> Result<Self> {
        let re = Rational::from_f64(re).ok_or(Error::Overflow)?;
        let im = Rational::from_f64(im).ok_or(Error::Overflow)?;
        Ok(Self::new(re, im))
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }

    pub fn is_one(&self) -> bool {
        self.re == 1 && self.im.cmp0().is_eq()
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Rational::from(-&self.im))
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv_unchecked())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Self {
        let n = self.norm_sqr();
        let re = Rational::from(&self.re / &n);
        let im = -Rational::from(&self.im / &n);
        Self::new(re, im)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex(&self, prec: u32) -> Complex {
        Complex::with_val(prec, (&self.re, &self.im))
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> Integer {
        self.re.denom().clone().lcm(self.im.denom())
    }
}

fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re0 = self.re.cmp0().is_eq();
        let im0 = self.im.cmp0().is_eq();
        match (re0, im0) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im == 1 {
                    write!(f, "i")
                } else if self.im == -1 {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", fmt_rational(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.cmp0().is_lt() { "-" } else { "+" };
                let mag = Rational::from(self.im.abs_ref());
                if mag == 1 {
                    write!(f, "{}{}i", fmt_rational(&self.re), sign)
                } else {
                    write!(f, "{}{}{}i", fmt_rational(&self.re), sign, fmt_rational(&mag))
                }
            }
        }
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a rational literal such as `-3/5`, `7` or `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Ok(r) = t.parse::<Rational>() {
        return Ok(r);
    }
    // decimal literal, parsed exactly
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body
        .split_once('.')
        .ok_or_else(|| Error::Parse(format!("not a rational literal: `{s}`")))?;
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a rational literal: `{s}`")));
    }
    let num: Integer = digits.parse().map_err(|_| Error::Parse(s.to_string()))?;
    let den = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
    let r = Rational::from((num, den));
    Ok(if neg { -r } else { r })
}

impl FromStr for ExactComplex {
    type Err = Error;

    /// Accepts `p/q`, `p/q i`, `a+bi` with rational parts, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        if let Some(body) = t.strip_suffix('i') {
            // find split between real and imaginary part: last +/- not at position 0
            let split = body
                .char_indices()
                .rev()
                .find(|&(k, c)| k > 0 && (c == '+' || c == '-') && !body[..k].ends_with('/'))
                .map(|(k, _)| k);
            let (re_s, im_s) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im = match im_s {
                "" | "+" => Rational::from(1),
                "-" => Rational::from(-1),
                other => parse_rational(other)?,
            };
            Ok(Self::new(parse_rational(re_s)?, im))
        } else {
            Ok(Self::real(parse_rational(&t)?))
        }
    }
}

impl From<i64> for ExactComplex {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for ExactComplex {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl Add<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(
            Rational::from(&self.re + &rhs.re),
            Rational::from(&self.im + &rhs.im),
        )
    }
}

impl Sub<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(
            Rational::from(&self.re - &rhs.re),
            Rational::from(&self.im - &rhs.im),
        )
    }
}

impl Mul<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        ExactComplex::new(re, im)
    }
}

impl Div<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    /// Panics on division by zero; use [`ExactComplex::checked_div`] otherwise.
    fn div(self, rhs: &ExactComplex) -> ExactComplex {
        self.checked_div(rhs).expect("division by zero in Q(i)")
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: ExactComplex) -> ExactComplex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: &ExactComplex) -> ExactComplex {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactComplex> for ExactComplex {
    fn sub_assign(&mut self, rhs: &ExactComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ExactComplex> for ExactComplex {
    fn mul_assign(&mut self, rhs: &ExactComplex) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("3/4".parse::<ExactComplex>().unwrap(), ExactComplex::from_ratio(3, 4));
        assert_eq!("i".parse::<ExactComplex>().unwrap(), ExactComplex::i());
        assert_eq!("-i".parse::<ExactComplex>().unwrap(), -ExactComplex::i());
        assert_eq!(
            "1/2-3/4i".parse::<ExactComplex>().unwrap(),
            ExactComplex::new(Rational::from((1, 2)), Rational::from((-3, 4)))
        );
        assert_eq!(
            "-2+i".parse::<ExactComplex>().unwrap(),
            ExactComplex::from_gaussian(-2, 1)
        );
        assert_eq!("0.25".parse::<ExactComplex>().unwrap(), ExactComplex::from_ratio(1, 4));
        assert!("abc".parse::<ExactComplex>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "7", "-3/5", "i", "-i", "2i", "1/2-3/4i", "-2+i"] {
            let z: ExactComplex = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
            assert_eq!(z.to_string().parse::<ExactComplex>().unwrap(), z);
        }
    }

    #[test]
    fn field_ops() {
        let a = ExactComplex::from_gaussian(1, 2);
        let b = ExactComplex::from_gaussian(3, -1);
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(ExactComplex::i().pow(2), ExactComplex::from_int(-1));
        assert!(a.checked_div(&ExactComplex::zero()).is_err());
        assert_eq!(a.norm_sqr(), Rational::from(5));
    }
}
