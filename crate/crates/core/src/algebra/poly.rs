//! Dense univariate polynomials over `Q(i)`.

use std::fmt;

use num_complex::Complex64;
use rug::{Complex, Integer, Rational};

use super::exact::ExactComplex;
use crate::error::{Error, Result};

/// Coefficients in ascending degree; trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<ExactComplex>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<ExactComplex>) -> Self {
        while coeffs.last().is_some_and(ExactComplex::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactComplex::one())
    }

    pub fn constant(c: ExactComplex) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::new(vec![ExactComplex::zero(), ExactComplex::one()])
    }

    pub fn monomial(c: ExactComplex, k: usize) -> Self {
        let mut v = vec![ExactComplex::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `z - p`
    pub fn linear_root(p: &ExactComplex) -> Self {
        Self::new(vec![-p, ExactComplex::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&k| ExactComplex::from_int(k)).collect())
    }

    pub fn coeffs(&self) -> &[ExactComplex] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactComplex {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&ExactComplex> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactComplex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division: `self = q·rhs + r` with `deg r < deg rhs`.
    pub fn div_rem(&self, rhs: &Self) -> Result<(Self, Self)> {
        let d = rhs.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = rhs.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![ExactComplex::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(d);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division that must be exact.
    pub fn exact_div(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(rhs)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·rhs = g`, `g` monic.
    pub fn xgcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * &ExactComplex::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, z: &ExactComplex) -> ExactComplex {
        let mut acc = ExactComplex::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * z) + a;
        }
        acc
    }

    pub fn eval_complex(&self, z: &Complex) -> Complex {
        let bits = z.prec().0;
        let mut acc = Complex::new(bits);
        for a in self.coeffs.iter().rev() {
            acc *= z;
            acc += a.to_complex(bits);
        }
        acc
    }

    pub fn to_c64_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(ExactComplex::to_c64).collect()
    }

    pub fn to_complex_coeffs(&self, bits: u32) -> Vec<Complex> {
        self.coeffs.iter().map(|c| c.to_complex(bits)).collect()
    }

    /// Coefficients of `self(z + p)`, i.e. the Taylor expansion around `p`.
    pub fn taylor_shift(&self, p: &ExactComplex) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let t = &c[k + 1] * p;
                c[k] += &t;
            }
        }
        Self::new(c)
    }

    /// Reversal `z^n · self(1/z)` for `n >= deg`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v = vec![ExactComplex::zero(); n + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            v[n - k] = a.clone();
        }
        Self::new(v)
    }

    /// Number of leading zero coefficients (order of vanishing at 0).
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|a| !a.is_zero())
    }

    /// Multiplicity of the root `p`.
    pub fn multiplicity_at(&self, p: &ExactComplex) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.taylor_shift(p).low_order().unwrap())
    }

    /// Divides out every factor `(z - p)`; returns the quotient and the multiplicity.
    pub fn strip_root(&self, p: &ExactComplex) -> (Self, usize) {
        let m = self.multiplicity_at(p).unwrap_or(0);
        if m == 0 {
            return (self.clone(), 0);
        }
        let f = Self::linear_root(p).pow(m as u32);
        (self.exact_div(&f).unwrap(), m)
    }

    /// Yun's square-free decomposition: `self = lead · ∏ f_m^m` with monic,
    /// square-free, pairwise coprime `f_m`. Returns `(lead, [(m, f_m)])`,
    /// skipping trivial factors.
    pub fn squarefree(&self) -> Result<(ExactComplex, Vec<(usize, Polynomial)>)> {
        let lead = self.leading().cloned().ok_or(Error::ZeroPolynomial)?;
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return Ok((lead, out));
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0)?;
        let c = fp.exact_div(&a0)?;
        let mut d = c.sub(&b.derivative());
        let mut m = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((m, a.clone()));
            }
            let nb = b.exact_div(&a)?;
            let c = d.exact_div(&a)?;
            d = c.sub(&nb.derivative());
            b = nb;
            m += 1;
        }
        Ok((lead, out))
    }

    /// Clears denominators: returns the primitive integer-content scale factor
    /// so that comparisons of large coefficients stay cheap.
    pub fn content_denominator(&self) -> Integer {
        self.coeffs
            .iter()
            .fold(Integer::from(1), |acc, c| acc.lcm(&c.denom_lcm()))
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(ExactComplex::is_real)
    }

    pub fn substitute_scale(&self, s: &ExactComplex) -> Self {
        // p(s·z)
        let mut pow = ExactComplex::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &pow);
            pow = &pow * s;
        }
        Self::new(v)
    }

    pub fn from_rationals(c: &[Rational]) -> Self {
        Self::new(c.iter().cloned().map(ExactComplex::real).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let simple = a.is_real() || a.re().cmp0().is_eq();
            let coef = if simple { a.to_string() } else { format!("({a})") };
            match k {
                0 => write!(f, "{coef}")?,
                1 if a.is_one() => write!(f, "z")?,
                1 => write!(f, "{coef}·z")?,
                _ if a.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{coef}·z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
