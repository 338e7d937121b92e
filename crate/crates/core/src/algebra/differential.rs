//! Rational differentials `ω = r(z) dz`, optionally carrying a quadratic
//! prefactor: `ω = (r₀ + s·r₁) dz` with `s² ∈ Q`.

use std::fmt;

use num_complex::Complex64;
use rug::{Complex, Float};

use super::bigcomplex::{two_pi_i, BigComplex, Precision};
use super::exact::ExactComplex;
use super::poly::Polynomial;
use super::quad::{QuadNumber, QuadSymbol};
use super::rational::RationalMap;
use super::roots::{aberth, squarefree_roots};
use super::sphere::{ComplexValue, SpherePoint};
use crate::error::{Error, Result};

/// Default number of trapezoid nodes for contour integrals.
pub const DEFAULT_NODES: usize = 512;

#[derive(Clone, PartialEq)]
pub struct RationalDifferential {
    coeff: RationalMap,
    sym_coeff: RationalMap,
    symbol: Option<QuadSymbol>,
}

/// A residue, exact in `Q(i)[s]` or numeric.
#[derive(Clone, PartialEq, Debug)]
pub enum Residue {
    Exact(QuadNumber),
    Numeric(BigComplex),
}

impl Residue {
    pub fn to_complex(&self, bits: u32) -> Complex {
        match self {
            Residue::Exact(q) => q.to_complex(bits),
            Residue::Numeric(b) => Complex::with_val(bits, b.inner()),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        let c = self.to_complex(128);
        Complex64::new(c.real().to_f64(), c.imag().to_f64())
    }

    pub fn as_exact(&self) -> Option<&QuadNumber> {
        match self {
            Residue::Exact(q) => Some(q),
            Residue::Numeric(_) => None,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residue::Exact(q) => write!(f, "{q}"),
            Residue::Numeric(b) => write!(f, "≈{b}"),
        }
    }
}

impl RationalDifferential {
    pub fn new(coeff: RationalMap) -> Self {
        Self { coeff, sym_coeff: RationalMap::zero(), symbol: None }
    }

    /// `(coeff + s·sym_coeff) dz`. Without a symbol `sym_coeff` must vanish.
    pub fn with_symbol(coeff: RationalMap, sym_coeff: RationalMap, symbol: Option<QuadSymbol>) -> Self {
        match symbol {
            Some(s) if !sym_coeff.is_zero() => Self { coeff, sym_coeff, symbol: Some(s) },
            _ => {
                assert!(sym_coeff.is_zero(), "symbolic part without a symbol");
                Self::new(coeff)
            }
        }
    }

    pub fn coeff(&self) -> &RationalMap {
        &self.coeff
    }

    pub fn sym_coeff(&self) -> &RationalMap {
        &self.sym_coeff
    }

    pub fn symbol(&self) -> Option<&QuadSymbol> {
        self.symbol.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero() && self.sym_coeff.is_zero()
    }

    fn parts(&self) -> impl Iterator<Item = &RationalMap> {
        [&self.coeff, &self.sym_coeff].into_iter().filter(|r| !r.is_zero())
    }

    /// Order of the differential at `p`; at `∞` the `dz = −dw/w²` correction
    /// of `−2` is included. Leading Laurent coefficients `c₀ + s·c₁` with
    /// `c₀, c₁ ∈ Q(i)` cannot cancel, so the order is the minimum over parts.
    pub fn order_at(&self, p: &SpherePoint) -> Result<i64> {
        let mut best: Option<i64> = None;
        for r in self.parts() {
            let o = r.order_at(p)?;
            best = Some(best.map_or(o, |b| b.min(o)));
        }
        let o = best.ok_or(Error::ZeroMap)?;
        Ok(if p.is_infinity() { o - 2 } else { o })
    }

    /// Product of all denominators; its roots are the finite poles.
    pub fn pole_polynomial(&self) -> Polynomial {
        let mut d = self.coeff.den().clone();
        if !self.sym_coeff.is_zero() {
            let other = self.sym_coeff.den();
            let g = d.gcd(other);
            d = d.mul(&other.exact_div(&g).expect("gcd divides"));
        }
        d
    }

    /// Finite poles; exact `hints` are matched exactly.
    pub fn finite_poles(&self, prec: Precision, hints: &[ExactComplex]) -> Result<Vec<ComplexValue>> {
        let den = self.pole_polynomial();
        if den.is_constant() {
            return Ok(Vec::new());
        }
        let (_, factors) = den.squarefree()?;
        let mut out = Vec::new();
        for (_, q) in factors {
            out.extend(squarefree_roots(&q, prec, hints)?);
        }
        Ok(out)
    }

    pub fn eval(&self, z: &Complex) -> Option<Complex> {
        let bits = z.prec().0;
        let mut v = self.coeff.eval_complex(z)?;
        if let Some(s) = &self.symbol {
            let w = self.sym_coeff.eval_complex(z)?;
            v += Complex::with_val(bits, w * s.to_complex(bits));
        }
        Some(v)
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut v = self.coeff.eval_c64(z);
        if let Some(s) = &self.symbol {
            let sc = s.to_complex(64);
            v += self.sym_coeff.eval_c64(z) * Complex64::new(sc.real().to_f64(), sc.imag().to_f64());
        }
        v
    }

    /// Residue at `p`: exact Laurent coefficient at exact points and `∞`
    /// (with `Res_∞ = −[z⁻¹]` so that all residues sum to zero); numeric
    /// points fall back to a contour integral.
    pub fn residue_at(&self, p: &SpherePoint, prec: Precision) -> Result<Residue> {
        match p {
            SpherePoint::Infinity => Ok(Residue::Exact(self.exact_residue(|r| map_residue_at_infinity(r))?)),
            SpherePoint::Finite(ComplexValue::Exact(z)) => {
                Ok(Residue::Exact(self.exact_residue(|r| map_residue_at(r, z))?))
            }
            SpherePoint::Finite(ComplexValue::Numeric(z)) => {
                let bits = prec.working_bits();
                let center = Complex::with_val(bits, z.inner());
                let poles = self.finite_poles(prec, &[])?;
                let radius = contour_radius(&center, &poles);
                let integral = self.contour_integral(&center, radius, DEFAULT_NODES, prec)?;
                let r = Complex::with_val(bits, integral / two_pi_i(bits));
                Ok(Residue::Numeric(BigComplex::new(Complex::with_val(prec.bits(), r))?))
            }
        }
    }

    fn exact_residue<F: Fn(&RationalMap) -> Result<ExactComplex>>(&self, f: F) -> Result<QuadNumber> {
        let a = f(&self.coeff)?;
        let b = if self.sym_coeff.is_zero() { ExactComplex::zero() } else { f(&self.sym_coeff)? };
        Ok(QuadNumber::new(a, b, self.symbol.clone()))
    }

    /// Trapezoid rule on `n` equispaced nodes of the circle `|z − center| = radius`.
    pub fn contour_integral(&self, center: &Complex, radius: f64, n: usize, prec: Precision) -> Result<Complex> {
        let bits = prec.working_bits();
        let c = Complex::with_val(bits, center);
        let rho = Float::with_val(bits, radius);
        for pole in self.approx_poles()? {
            let d = (pole - c.to_c64_approx()).norm();
            if (d - radius).abs() <= 1e-12 * radius.max(1.0) {
                return Err(Error::PoleOnContour { center: format_c64(c.to_c64_approx()), radius });
            }
        }
        let two_pi = Float::with_val(bits, super::bigcomplex::pi(bits) * 2u32);
        let mut sum = Complex::new(bits);
        for k in 0..n {
            let theta = Float::with_val(bits, &two_pi * k as u32) / n as u32;
            let e = Complex::with_val(bits, (theta.clone().cos(), theta.sin()));
            let dz = Complex::with_val(bits, &e * &rho);
            let z = Complex::with_val(bits, &c + &dz);
            let v = self.eval(&z).ok_or_else(|| Error::PoleOnContour {
                center: format_c64(c.to_c64_approx()),
                radius,
            })?;
            // dz/dθ = i·ρ·e^{iθ}
            sum += Complex::with_val(bits, v * &dz);
        }
        let i = Complex::with_val(bits, (0, 1));
        let weight = Float::with_val(bits, &two_pi / n as u32);
        let out = Complex::with_val(bits, sum * i * weight);
        Ok(BigComplex::new(out)?.into_inner())
    }

    fn approx_poles(&self) -> Result<Vec<Complex64>> {
        let den = self.pole_polynomial();
        if den.is_constant() {
            return Ok(Vec::new());
        }
        let roots = aberth(&den.to_complex_coeffs(128), 128, 200)?;
        Ok(roots.roots.iter().map(|z| z.to_c64_approx()).collect())
    }

    /// `self · f` for an exact map `f`.
    pub fn mul_map(&self, f: &RationalMap) -> Self {
        Self::with_symbol(self.coeff.mul(f), self.sym_coeff.mul(f), self.symbol.clone())
    }
}

trait ToC64 {
    fn to_c64_approx(&self) -> Complex64;
}

impl ToC64 for Complex {
    fn to_c64_approx(&self) -> Complex64 {
        Complex64::new(self.real().to_f64(), self.imag().to_f64())
    }
}

fn format_c64(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// Half the distance from `center` to the nearest other pole, capped at 1/4.
pub fn contour_radius(center: &Complex, poles: &[ComplexValue]) -> f64 {
    let c = center.to_c64_approx();
    let mut best = f64::INFINITY;
    for p in poles {
        let d = (p.to_c64() - c).norm();
        if d > 1e-20 * c.norm().max(1.0) {
            best = best.min(d);
        }
    }
    (best / 2.0).min(0.25)
}

/// `[t^{m−1}] num(p+t)/q(p+t)` where `den = (z−p)^m q`.
pub fn map_residue_at(r: &RationalMap, p: &ExactComplex) -> Result<ExactComplex> {
    if r.is_zero() {
        return Ok(ExactComplex::zero());
    }
    let den = r.den().taylor_shift(p);
    let m = den.low_order().ok_or(Error::ZeroDenominator)?;
    if m == 0 {
        return Ok(ExactComplex::zero());
    }
    let num = r.num().taylor_shift(p);
    let q: Vec<ExactComplex> = den.coeffs()[m..].to_vec();
    let q0_inv = q[0].inv()?;
    let mut c: Vec<ExactComplex> = Vec::with_capacity(m);
    for k in 0..m {
        let mut acc = num.coeff(k);
        for j in 1..=k.min(q.len() - 1) {
            acc -= &(&q[j] * &c[k - j]);
        }
        c.push(&acc * &q0_inv);
    }
    Ok(c[m - 1].clone())
}

/// `Res_∞(r dz) = −[z⁻¹] r` in the expansion at `∞`.
pub fn map_residue_at_infinity(r: &RationalMap) -> Result<ExactComplex> {
    if r.is_zero() {
        return Ok(ExactComplex::zero());
    }
    let dd = r.den().degree_or_zero();
    if dd == 0 {
        return Ok(ExactComplex::zero());
    }
    let (_, rem) = r.num().div_rem(r.den())?;
    let c = &rem.coeff(dd - 1) / r.den().leading().unwrap();
    Ok(-c)
}

impl fmt::Display for RationalDifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.symbol {
            None => write!(f, "[{}] dz", self.coeff),
            Some(s) => write!(f, "[{} + s·({})] dz, s^2 = {}", self.coeff, self.sym_coeff, s.square()),
        }
    }
}

impl fmt::Debug for RationalDifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
