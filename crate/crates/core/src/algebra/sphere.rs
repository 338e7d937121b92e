//! Points of the Riemann sphere `C ∪ {∞}`.

use std::fmt;

use num_complex::Complex64;
use rug::Complex;

use super::bigcomplex::BigComplex;
use super::exact::ExactComplex;

/// A finite complex value, exact in `Q(i)` or numeric.
#[derive(Clone, PartialEq)]
pub enum ComplexValue {
    Exact(ExactComplex),
    Numeric(BigComplex),
}

impl ComplexValue {
    pub fn as_exact(&self) -> Option<&ExactComplex> {
        match self {
            ComplexValue::Exact(e) => Some(e),
            ComplexValue::Numeric(_) => None,
        }
    }

    pub fn to_complex(&self, bits: u32) -> Complex {
        match self {
            ComplexValue::Exact(e) => e.to_complex(bits),
            ComplexValue::Numeric(b) => Complex::with_val(bits, b.inner()),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            ComplexValue::Exact(e) => e.to_c64(),
            ComplexValue::Numeric(b) => b.to_c64(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ComplexValue::Exact(_))
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexValue::Exact(e) => write!(f, "{e}"),
            ComplexValue::Numeric(b) => write!(f, "≈{b}"),
        }
    }
}

impl fmt::Debug for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A point of `C̄`; `∞` is a dedicated tag.
#[derive(Clone, PartialEq)]
pub enum SpherePoint {
    Finite(ComplexValue),
    Infinity,
}

impl SpherePoint {
    pub fn exact(z: ExactComplex) -> Self {
        SpherePoint::Finite(ComplexValue::Exact(z))
    }

    pub fn numeric(z: BigComplex) -> Self {
        SpherePoint::Finite(ComplexValue::Numeric(z))
    }

    pub fn from_int(n: i64) -> Self {
        Self::exact(ExactComplex::from_int(n))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_exact(&self) -> Option<&ExactComplex> {
        match self {
            SpherePoint::Finite(v) => v.as_exact(),
            SpherePoint::Infinity => None,
        }
    }

    pub fn finite(&self) -> Option<&ComplexValue> {
        match self {
            SpherePoint::Finite(v) => Some(v),
            SpherePoint::Infinity => None,
        }
    }

    /// Exact points and `∞` compare exactly; a numeric point matches another
    /// point when the relative distance is at most `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => true,
            (SpherePoint::Finite(a), SpherePoint::Finite(b)) => match (a, b) {
                (ComplexValue::Exact(x), ComplexValue::Exact(y)) => x == y,
                _ => {
                    let bits = 256;
                    let x = a.to_complex(bits);
                    let y = b.to_complex(bits);
                    let d = Complex::with_val(bits, &x - &y);
                    let d = rug::Float::with_val(bits, d.abs_ref()).to_f64();
                    let s = rug::Float::with_val(bits, x.abs_ref()).to_f64().max(1.0);
                    d <= tol * s
                }
            },
            _ => false,
        }
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(v) => write!(f, "{v}"),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<ExactComplex> for SpherePoint {
    fn from(z: ExactComplex) -> Self {
        SpherePoint::exact(z)
    }
}
