//! Minimal surfaces in R⁴ from Weierstrass data `(g₁, g₂, h dz)`.

use rug::Rational;
use serde::Serialize;

use crate::algebra::quad::SquareRoot;
use crate::algebra::{ComplexValue, ExactComplex, Precision, QuadSymbol, RationalDifferential, RationalMap, SpherePoint};
use crate::error::{Error, Result};
use crate::ramification::{ramification_profile, PuncturedSphere, RamificationProfile};
use crate::weierstrass::{
    self, check_in_domain, integrate_density, wronskian_vanishes, CurvatureField, EndReport, GaussMap, PeriodReport,
    QuadMap, RegularityReport, SphericalDensity, VerificationReport, VerifyOptions,
};

/// Weierstrass data `(g₁, g₂, h dz)`; either Gauss map may be constant, not
/// both. Each map may carry the shared prefactor `s` with `s²` rational.
#[derive(Clone, Debug, PartialEq)]
pub struct WData4 {
    g1: GaussMap,
    g2: GaussMap,
    h: RationalMap,
    symbol: Option<QuadSymbol>,
    domain: PuncturedSphere,
    inexact: bool,
}

impl WData4 {
    pub fn new(g1: RationalMap, g2: RationalMap, h: RationalMap, domain: PuncturedSphere) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::ZeroMap);
        }
        if g1.is_constant() && g2.is_constant() {
            return Err(Error::ConstantMap);
        }
        Ok(Self {
            g1: GaussMap::new(g1, false),
            g2: GaussMap::new(g2, false),
            h,
            symbol: None,
            domain,
            inexact: false,
        })
    }

    /// Data with `gᵢ` replaced by `s·gᵢ` where `scaled[i]` holds and `s² = sigma_sq`.
    pub fn with_sigma_sq(
        g1: RationalMap,
        g2: RationalMap,
        scaled: [bool; 2],
        sigma_sq: Rational,
        h: RationalMap,
        domain: PuncturedSphere,
    ) -> Result<Self> {
        match QuadSymbol::from_square(sigma_sq) {
            SquareRoot::Exact(r) => {
                let g1 = if scaled[0] { g1.scale(&r) } else { g1 };
                let g2 = if scaled[1] { g2.scale(&r) } else { g2 };
                Self::new(g1, g2, h, domain)
            }
            SquareRoot::Symbol(s) => {
                let mut w = Self::new(g1, g2, h, domain)?;
                w.g1.scaled = scaled[0];
                w.g2.scaled = scaled[1];
                if scaled.iter().any(|&b| b) {
                    w.symbol = Some(s);
                }
                Ok(w)
            }
        }
    }

    pub fn with_inexact(mut self, inexact: bool) -> Self {
        self.inexact = inexact;
        self
    }

    pub fn gauss(&self) -> [&GaussMap; 2] {
        [&self.g1, &self.g2]
    }

    pub fn g1(&self) -> &RationalMap {
        &self.g1.base
    }

    pub fn g2(&self) -> &RationalMap {
        &self.g2.base
    }

    pub fn h(&self) -> &RationalMap {
        &self.h
    }

    pub fn symbol(&self) -> Option<&QuadSymbol> {
        self.symbol.as_ref()
    }

    pub fn domain(&self) -> &PuncturedSphere {
        &self.domain
    }

    pub fn is_inexact(&self) -> bool {
        self.inexact
    }

    /// `(d₁, d₂)`, zero for a constant map.
    pub fn degrees(&self) -> (usize, usize) {
        (self.g1.degree(), self.g2.degree())
    }
}

/// `(φ₁, φ₂, φ₃, φ₄)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialQuad {
    pub phi: [RationalDifferential; 4],
}

/// `φ₁ = ½(1+g₁g₂)h`, `φ₂ = (i/2)(1−g₁g₂)h`, `φ₃ = ½(g₁−g₂)h`,
/// `φ₄ = −(i/2)(g₁+g₂)h`, each times `dz`.
pub fn phi_components4(w: &WData4) -> DifferentialQuad {
    let sym = w.symbol();
    let (g1, g2) = (w.g1.as_quad(), w.g2.as_quad());
    let prod = g1.mul(&g2, sym);
    let one = QuadMap::constant(ExactComplex::one());
    let half = ExactComplex::from_ratio(1, 2);
    let ihalf = ExactComplex::new(Rational::new(), Rational::from((1, 2)));
    let phi1 = one.add(&prod).scale(&half);
    let phi2 = one.sub(&prod).scale(&ihalf);
    let phi3 = g1.sub(&g2).scale(&half);
    let phi4 = g1.add(&g2).scale(&-&ihalf);
    let phi = [phi1, phi2, phi3, phi4].map(|q| q.mul_map(&w.h).into_differential(sym));
    DifferentialQuad { phi }
}

pub fn conformality_check4(q: &DifferentialQuad) -> bool {
    weierstrass::conformality_check(&q.phi)
}

fn weights(w: &WData4) -> [(&GaussMap, i64); 2] {
    [(&w.g1, 1), (&w.g2, 1)]
}

/// `(h dz)₀ = (g₁)_∞ + (g₂)_∞` on `Σ`; constant maps have no poles.
pub fn regularity_check4(w: &WData4, prec: Precision) -> Result<RegularityReport> {
    let mismatch = weierstrass::regularity(&w.h, &weights(w), &w.domain, prec)?;
    Ok(RegularityReport::new(mismatch))
}

pub fn period_check4(w: &WData4, opts: &VerifyOptions) -> Result<PeriodReport> {
    let q = phi_components4(w);
    weierstrass::period_check(&q.phi, &w.domain, opts.prec, opts.tol, !w.inexact, opts.cross_check)
}

/// `ord(h dz) + min(0, ord g₁) + min(0, ord g₂) ≤ −1` at each puncture.
pub fn completeness_check4(w: &WData4, prec: Precision) -> Result<Vec<EndReport>> {
    if !regularity_check4(w, prec)?.regular {
        return Err(Error::RegularityRequired);
    }
    weierstrass::completeness(&w.h, &weights(w), &w.domain)
}

pub fn verify4(w: &WData4, opts: &VerifyOptions) -> Result<VerificationReport> {
    let conformal = conformality_check4(&phi_components4(w));
    let regularity = regularity_check4(w, opts.prec)?;
    let periods = period_check4(w, opts)?;
    let ends = if regularity.regular {
        Some(weierstrass::completeness(&w.h, &weights(w), &w.domain)?)
    } else {
        None
    };
    Ok(VerificationReport::assemble(conformal, regularity, periods, ends))
}

/// `C(Σ) = −2π(d₁+d₂)` as the integer multiplier of `π`.
pub fn total_curvature4(w: &WData4) -> i64 {
    let (d1, d2) = w.degrees();
    -2 * (d1 + d2) as i64
}

/// Quadrature of `−Σᵢ 2|gᵢ′|²/(1+|gᵢ|²)²` as a multiple of `π`.
pub fn total_curvature4_numeric(w: &WData4, r_out: f64, eps: f64, grid: (usize, usize)) -> f64 {
    let a = SphericalDensity::new(&w.g1, w.symbol());
    let b = SphericalDensity::new(&w.g2, w.symbol());
    -2.0 * integrate_density(|z| a.density(z) + b.density(z), &w.domain, r_out, eps, grid)
}

pub fn curvature_field4(w: &WData4) -> Result<CurvatureField> {
    CurvatureField::new(&w.g1, &w.g2, &w.h, w.symbol())
}

/// Two-term Gauss curvature; exactly `0` where both `gᵢ′` vanish.
pub fn gauss_curvature_at4(w: &WData4, z: &ComplexValue, prec: Precision) -> Result<f64> {
    check_in_domain(z, &w.domain)?;
    if wronskian_vanishes(&w.g1, z, prec) && wronskian_vanishes(&w.g2, z, prec) {
        return Ok(0.0);
    }
    let k = curvature_field4(w)?.eval(z.to_c64());
    if !k.is_finite() {
        return Err(Error::OutsideDomain(format!("metric degenerates at {z}")));
    }
    Ok(k)
}

/// Points of `Σ` where both `g₁′` and `g₂′` vanish, with the smaller of the
/// two ramification multiplicities (a constant map vanishes everywhere).
pub fn flat_points4(w: &WData4, prec: Precision) -> Result<Vec<(SpherePoint, usize)>> {
    let [a, b] = [&w.g1, &w.g2];
    if a.is_constant() {
        return weierstrass::ramification_points_in_domain(b, &w.domain, prec);
    }
    if b.is_constant() {
        return weierstrass::ramification_points_in_domain(a, &w.domain, prec);
    }
    let pa = weierstrass::ramification_points_in_domain(a, &w.domain, prec)?;
    let pb = weierstrass::ramification_points_in_domain(b, &w.domain, prec)?;
    let tol = prec.half_tolerance();
    Ok(pa
        .into_iter()
        .filter_map(|(p, m)| pb.iter().find(|(q, _)| q.approx_eq(&p, tol)).map(|(_, n)| (p, m.min(*n))))
        .collect())
}

/// Which coordinate differential vanishes identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decomposability {
    None,
    Phi3Zero,
    Phi4Zero,
    Both,
}

pub fn decomposability_check(w: &WData4) -> Decomposability {
    let q = phi_components4(w);
    match (q.phi[2].is_zero(), q.phi[3].is_zero()) {
        (false, false) => Decomposability::None,
        (true, false) => Decomposability::Phi3Zero,
        (false, true) => Decomposability::Phi4Zero,
        (true, true) => Decomposability::Both,
    }
}

/// Profiles of the nonconstant Gauss maps (`None` for a constant map).
pub fn gauss_profiles4(w: &WData4, prec: Precision) -> Result<[Option<RamificationProfile>; 2]> {
    let one = |g: &GaussMap| -> Result<Option<RamificationProfile>> {
        if g.is_constant() {
            Ok(None)
        } else {
            ramification_profile(&g.base, &w.domain, prec).map(Some)
        }
    };
    Ok([one(&w.g1)?, one(&w.g2)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;

    fn map(n: &[i64], d: &[i64]) -> RationalMap {
        RationalMap::new(Polynomial::from_ints(n), Polynomial::from_ints(d)).unwrap()
    }

    fn zero_inf() -> PuncturedSphere {
        PuncturedSphere::new(vec![SpherePoint::from_int(0), SpherePoint::Infinity]).unwrap()
    }

    #[test]
    fn lagrangian_catenoid() {
        let w = WData4::new(map(&[0, 0, -1], &[1]), map(&[0], &[1]), map(&[-1], &[0, 0, 1]), zero_inf()).unwrap();
        assert!(verify4(&w, &VerifyOptions::default()).unwrap().overall);
        assert_eq!(total_curvature4(&w), -4);
        let ends = completeness_check4(&w, Precision::default()).unwrap();
        let inf = ends.iter().find(|e| e.puncture == "inf").unwrap();
        assert_eq!(inf.growth, -2);
    }

    #[test]
    fn conjugate_pair_decomposes() {
        let w = WData4::new(map(&[0, 1], &[1]), map(&[0, -1], &[1]), map(&[1], &[0, 0, 1]), zero_inf()).unwrap();
        assert_eq!(decomposability_check(&w), Decomposability::Phi4Zero);
        let k = gauss_curvature_at4(&w, &ComplexValue::Exact(ExactComplex::one()), Precision::default()).unwrap();
        assert!(k < 0.0 && k.is_finite());
    }

    #[test]
    fn both_constant_rejected() {
        let e = WData4::new(map(&[1], &[1]), map(&[2], &[1]), map(&[1], &[1]), PuncturedSphere::plane());
        assert!(matches!(e, Err(Error::ConstantMap)));
    }

    #[test]
    fn plane_mismatch() {
        let w = WData4::new(map(&[1], &[0, 1]), map(&[5], &[1]), map(&[1], &[1]), PuncturedSphere::plane()).unwrap();
        let r = regularity_check4(&w, Precision::default()).unwrap();
        assert!(!r.regular);
        assert_eq!(r.mismatch.order_at(&SpherePoint::from_int(0)), -1);
    }
}
