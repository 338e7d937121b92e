//! Multiprecision complex numbers for numeric evaluation.

use std::fmt;

use rug::float::Constant;
use rug::{Complex, Float};

use crate::error::{Error, Result};

/// Working precision in significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Self { digits: 64 }
    }
}

impl Precision {
    pub fn digits(digits: u32) -> Self {
        Self { digits: digits.max(16) }
    }

    pub fn decimal_digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa bits for `digits` decimal digits plus guard bits.
    pub fn bits(&self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
    }

    /// Bits used internally by root finders: roughly twice the nominal precision.
    pub fn working_bits(&self) -> u32 {
        2 * self.bits() + 32
    }

    /// Relative tolerance `10^(-P/2)` used for clustering and numeric agreement.
    pub fn half_tolerance(&self) -> f64 {
        10f64.powf(-(self.digits as f64) / 2.0)
    }

    pub fn half_tolerance_float(&self) -> Float {
        let t = Float::with_val(self.bits(), 10);
        use rug::ops::Pow;
        t.pow(-(self.digits as i32) / 2)
    }
}

/// Complex value at a fixed binary precision; every constructor and operation
/// exposed here checks finiteness.
#[derive(Clone, PartialEq)]
pub struct BigComplex(Complex);

impl BigComplex {
    pub fn new(value: Complex) -> Result<Self> {
        if value.real().is_finite() && value.imag().is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::Overflow)
        }
    }

    pub fn from_f64(prec: Precision, re: f64, im: f64) -> Result<Self> {
        Self::new(Complex::with_val(prec.bits(), (re, im)))
    }

    pub fn zero(bits: u32) -> Self {
        Self(Complex::new(bits))
    }

    pub fn inner(&self) -> &Complex {
        &self.0
    }

    pub fn into_inner(self) -> Complex {
        self.0
    }

    pub fn prec_bits(&self) -> u32 {
        self.0.prec().0
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec_bits(), self.0.abs_ref())
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn re_f64(&self) -> f64 {
        self.0.real().to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.0.imag().to_f64()
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re_f64(), self.im_f64())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Self::new(Complex::with_val(self.prec_bits(), &self.0 + &rhs.0))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Self::new(Complex::with_val(self.prec_bits(), &self.0 - &rhs.0))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        Self::new(Complex::with_val(self.prec_bits(), &self.0 * &rhs.0))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.0.real().is_zero() && rhs.0.imag().is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(Complex::with_val(self.prec_bits(), &self.0 / &rhs.0))
    }

    /// Distance `|a - b|` relative to `max(1, |a|)`.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let d = Complex::with_val(self.prec_bits(), &self.0 - &other.0);
        let d = Float::with_val(self.prec_bits(), d.abs_ref()).to_f64();
        d / self.abs_f64().max(1.0)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = self.0.real().to_string_radix(10, Some(digits));
        let im = self.0.imag().to_string_radix(10, Some(digits));
        format!("{re}{}{}i", if im.starts_with('-') { "" } else { "+" }, im)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(20))
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(20))
    }
}

pub fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

/// `2πi` at the given precision.
pub fn two_pi_i(bits: u32) -> Complex {
    let two_pi = Float::with_val(bits, pi(bits) * 2u32);
    Complex::with_val(bits, (Float::new(bits), two_pi))
}
