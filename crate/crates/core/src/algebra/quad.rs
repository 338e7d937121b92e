//! Numbers `a + b·s` with `a, b ∈ Q(i)` and a symbol `s` whose square is rational.

use std::fmt;

use rug::{Complex, Float, Rational};

use super::exact::ExactComplex;

/// Symbol `s` with `s² = square`. Numerically `s = i·√(−square)` when the square
/// is negative and `s = √square` otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadSymbol {
    square: Rational,
}

/// Result of splitting a rational square: either a genuine symbol, or an exact
/// square root in `Q(i)` when `|square|` is a perfect rational square.
pub enum SquareRoot {
    Exact(ExactComplex),
    Symbol(QuadSymbol),
}

impl QuadSymbol {
    /// Classifies `s² = square`; zero yields the exact root `0`.
    pub fn from_square(square: Rational) -> SquareRoot {
        if square == 0 {
            return SquareRoot::Exact(ExactComplex::zero());
        }
        let abs = Rational::from(square.abs_ref());
        if let Some(root) = rational_sqrt(&abs) {
            if square < 0 {
                SquareRoot::Exact(ExactComplex::new(Rational::new(), root))
            } else {
                SquareRoot::Exact(ExactComplex::real(root))
            }
        } else {
            SquareRoot::Symbol(QuadSymbol { square })
        }
    }

    pub fn square(&self) -> &Rational {
        &self.square
    }

    /// `s` as an imaginary unit multiple: true when `s² < 0`.
    pub fn is_imaginary(&self) -> bool {
        self.square < 0
    }

    pub fn to_complex(&self, bits: u32) -> Complex {
        let abs = Float::with_val(bits, &Rational::from(self.square.abs_ref()));
        let r = abs.sqrt();
        if self.square < 0 {
            Complex::with_val(bits, (Float::new(bits), r))
        } else {
            Complex::with_val(bits, (r, Float::new(bits)))
        }
    }
}

/// Exact square root of a nonnegative rational, if it exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if *r < 0 {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    if n.is_perfect_square() && d.is_perfect_square() {
        Some(Rational::from((n.clone().sqrt(), d.clone().sqrt())))
    } else {
        None
    }
}

/// `a + b·s`; `b` is zero whenever `symbol` is `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    pub a: ExactComplex,
    pub b: ExactComplex,
    pub symbol: Option<QuadSymbol>,
}

impl QuadNumber {
    pub fn exact(a: ExactComplex) -> Self {
        Self { a, b: ExactComplex::zero(), symbol: None }
    }

    pub fn new(a: ExactComplex, b: ExactComplex, symbol: Option<QuadSymbol>) -> Self {
        match symbol {
            None => Self::exact(a),
            Some(s) => Self { a, b, symbol: Some(s) },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let symbol = self.symbol.clone().or_else(|| rhs.symbol.clone());
        Self::new(&self.a + &rhs.a, &self.b + &rhs.b, symbol)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b, self.symbol.clone())
    }

    /// Exact test for `Im(a + b·s) = 0`, i.e. `Re(2πi·(a + b·s)) = 0`.
    /// Since `|s²|` is not a rational square, `s` is irrational relative to `Q(i)`.
    pub fn imag_is_zero(&self) -> bool {
        match &self.symbol {
            None => *self.a.im() == 0,
            Some(s) if s.is_imaginary() => *self.a.im() == 0 && *self.b.re() == 0,
            Some(_) => *self.a.im() == 0 && *self.b.im() == 0,
        }
    }

    pub fn to_complex(&self, bits: u32) -> Complex {
        let a = self.a.to_complex(bits);
        match &self.symbol {
            None => a,
            Some(s) => {
                let bs = Complex::with_val(bits, self.b.to_complex(bits) * s.to_complex(bits));
                Complex::with_val(bits, a + bs)
            }
        }
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.symbol {
            Some(s) if !self.b.is_zero() => {
                if self.a.is_zero() {
                    write!(f, "({})*s", self.b)?;
                } else {
                    write!(f, "{} + ({})*s", self.a, self.b)?;
                }
                write!(f, " [s^2 = {}]", s.square)
            }
            _ => write!(f, "{}", self.a),
        }
    }
}

impl fmt::Debug for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_squares_collapse() {
        match QuadSymbol::from_square(Rational::from((-9, 4))) {
            SquareRoot::Exact(z) => assert_eq!(z, "3/2i".parse().unwrap()),
            SquareRoot::Symbol(_) => panic!("expected exact root"),
        }
        assert!(matches!(QuadSymbol::from_square(Rational::from((-3, 5))), SquareRoot::Symbol(_)));
    }

    #[test]
    fn imaginary_part_test() {
        let SquareRoot::Symbol(s) = QuadSymbol::from_square(Rational::from((-3, 5))) else {
            panic!()
        };
        // (1/2)*s with s = i*sqrt(3/5) is purely imaginary
        let x = QuadNumber::new(ExactComplex::from_int(-3), ExactComplex::from_ratio(1, 2), Some(s.clone()));
        assert!(!x.imag_is_zero());
        let y = QuadNumber::new(ExactComplex::from_int(-3), ExactComplex::from_gaussian(0, 1), Some(s.clone()));
        assert!(y.imag_is_zero());
        let v = y.to_complex(128);
        assert!(v.imag().to_f64().abs() < 1e-30);
        assert!((v.real().to_f64() + 3.0 + (0.6f64).sqrt()).abs() < 1e-12);
    }
}
