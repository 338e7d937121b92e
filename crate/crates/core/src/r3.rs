//! Minimal surfaces in R³ from Weierstrass data `(g, h dz)`.

use rug::Rational;

use crate::algebra::{ComplexValue, ExactComplex, Precision, QuadSymbol, RationalDifferential, RationalMap, SpherePoint};
use crate::algebra::quad::SquareRoot;
use crate::error::{Error, Result};
use crate::ramification::{ramification_profile, PuncturedSphere, RamificationProfile};
use crate::weierstrass::{
    self, check_in_domain, integrate_density, wronskian_vanishes, CurvatureField, EndReport, GaussMap, PeriodReport,
    QuadMap, RegularityReport, SphericalDensity, VerificationReport, VerifyOptions,
};

/// Weierstrass data `(g, h dz)` on a punctured sphere. The Gauss map may carry
/// a prefactor `s` with `s²` rational and not a perfect square.
#[derive(Clone, Debug, PartialEq)]
pub struct WData3 {
    g: GaussMap,
    h: RationalMap,
    symbol: Option<QuadSymbol>,
    domain: PuncturedSphere,
    inexact: bool,
}

impl WData3 {
    pub fn new(g: RationalMap, h: RationalMap, domain: PuncturedSphere) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::ZeroMap);
        }
        Ok(Self { g: GaussMap::new(g, false), h, symbol: None, domain, inexact: false })
    }

    /// Data with Gauss map `s·g` where `s² = sigma_sq`. A perfect-square
    /// `|sigma_sq|` is folded into `g` exactly.
    pub fn with_sigma_sq(g: RationalMap, sigma_sq: Rational, h: RationalMap, domain: PuncturedSphere) -> Result<Self> {
        match QuadSymbol::from_square(sigma_sq) {
            SquareRoot::Exact(r) => Self::new(g.scale(&r), h, domain),
            SquareRoot::Symbol(s) => {
                let mut w = Self::new(g, h, domain)?;
                w.g.scaled = true;
                w.symbol = Some(s);
                Ok(w)
            }
        }
    }

    /// Marks data converted from floating-point input: periods are then
    /// judged against a tolerance instead of exactly.
    pub fn with_inexact(mut self, inexact: bool) -> Self {
        self.inexact = inexact;
        self
    }

    pub fn gauss(&self) -> &GaussMap {
        &self.g
    }

    /// The Gauss map without its prefactor.
    pub fn g(&self) -> &RationalMap {
        &self.g.base
    }

    pub fn h(&self) -> &RationalMap {
        &self.h
    }

    pub fn symbol(&self) -> Option<&QuadSymbol> {
        self.symbol.as_ref()
    }

    pub fn sigma_sq(&self) -> Option<&Rational> {
        self.symbol.as_ref().map(QuadSymbol::square)
    }

    pub fn domain(&self) -> &PuncturedSphere {
        &self.domain
    }

    pub fn is_inexact(&self) -> bool {
        self.inexact
    }

    /// `deg g` (0 for a constant map).
    pub fn degree(&self) -> usize {
        self.g.degree()
    }

    fn require_nonflat(&self) -> Result<()> {
        if self.g.is_constant() {
            Err(Error::FlatSurface)
        } else {
            Ok(())
        }
    }
}

/// `(φ₁, φ₂, φ₃)`, each a rational differential.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialTriple {
    pub phi: [RationalDifferential; 3],
}

/// `φ₁ = ½(1−g²)h dz`, `φ₂ = (i/2)(1+g²)h dz`, `φ₃ = g h dz`.
pub fn phi_components(w: &WData3) -> DifferentialTriple {
    let sym = w.symbol();
    let g = w.g.as_quad();
    let g2 = g.mul(&g, sym);
    let one = QuadMap::constant(ExactComplex::one());
    let half = ExactComplex::from_ratio(1, 2);
    let ihalf = ExactComplex::new(Rational::new(), Rational::from((1, 2)));
    let phi1 = one.sub(&g2).scale(&half).mul_map(&w.h);
    let phi2 = one.add(&g2).scale(&ihalf).mul_map(&w.h);
    let phi3 = g.mul_map(&w.h);
    DifferentialTriple {
        phi: [phi1.into_differential(sym), phi2.into_differential(sym), phi3.into_differential(sym)],
    }
}

/// Exact test `φ₁² + φ₂² + φ₃² ≡ 0`.
pub fn conformality_check(t: &DifferentialTriple) -> bool {
    weierstrass::conformality_check(&t.phi)
}

/// `(h dz)₀ = 2(g)_∞` on `Σ` with no poles of `h dz` in `Σ`.
pub fn regularity_check(w: &WData3, prec: Precision) -> Result<RegularityReport> {
    let mismatch = weierstrass::regularity(&w.h, &[(&w.g, 2)], &w.domain, prec)?;
    Ok(RegularityReport::new(mismatch))
}

/// Periods of `φ₁, φ₂, φ₃` around every puncture.
pub fn period_check(w: &WData3, opts: &VerifyOptions) -> Result<PeriodReport> {
    let t = phi_components(w);
    weierstrass::period_check(&t.phi, &w.domain, opts.prec, opts.tol, !w.inexact, opts.cross_check)
}

/// Order-count completeness `ord(h dz) + 2·min(0, ord g) ≤ −1` at each puncture.
pub fn completeness_check(w: &WData3, prec: Precision) -> Result<Vec<EndReport>> {
    if !regularity_check(w, prec)?.regular {
        return Err(Error::RegularityRequired);
    }
    weierstrass::completeness(&w.h, &[(&w.g, 2)], &w.domain)
}

/// Full verification.
pub fn verify(w: &WData3, opts: &VerifyOptions) -> Result<VerificationReport> {
    w.require_nonflat()?;
    let conformal = conformality_check(&phi_components(w));
    let regularity = regularity_check(w, opts.prec)?;
    let periods = period_check(w, opts)?;
    let ends = if regularity.regular {
        Some(weierstrass::completeness(&w.h, &[(&w.g, 2)], &w.domain)?)
    } else {
        None
    };
    Ok(VerificationReport::assemble(conformal, regularity, periods, ends))
}

/// `C(Σ) = −4π·deg g`, returned as the integer multiplier of `π`.
pub fn total_curvature(w: &WData3) -> Result<i64> {
    w.require_nonflat()?;
    Ok(-4 * w.degree() as i64)
}

/// Midpoint quadrature of `−(2|g′|/(1+|g|²))²` over `|z| ≤ r_out` minus
/// `eps`-disks at finite punctures, as a multiple of `π`.
pub fn total_curvature_numeric(w: &WData3, r_out: f64, eps: f64, grid: (usize, usize)) -> Result<f64> {
    w.require_nonflat()?;
    let rho = SphericalDensity::new(&w.g, w.symbol());
    Ok(-4.0 * integrate_density(|z| rho.density(z), &w.domain, r_out, eps, grid))
}

/// Double-precision evaluator of `K`.
pub fn curvature_field(w: &WData3) -> Result<CurvatureField> {
    w.require_nonflat()?;
    CurvatureField::new(&w.g, &w.g, &w.h, w.symbol())
}

/// `K(z) = −4|g′|²/((1+|g|²)⁴|h|²)`; exactly `0` where `g′` vanishes.
pub fn gauss_curvature_at(w: &WData3, z: &ComplexValue, prec: Precision) -> Result<f64> {
    w.require_nonflat()?;
    check_in_domain(z, &w.domain)?;
    if wronskian_vanishes(&w.g, z, prec) {
        return Ok(0.0);
    }
    let k = curvature_field(w)?.eval(z.to_c64());
    if !k.is_finite() {
        return Err(Error::OutsideDomain(format!("metric degenerates at {z}")));
    }
    Ok(k)
}

/// Zeros of `g′` in `Σ` (ramification points of `g`), multiplicity `e − 1`.
pub fn flat_points(w: &WData3, prec: Precision) -> Result<Vec<(SpherePoint, usize)>> {
    weierstrass::ramification_points_in_domain(&w.g, &w.domain, prec)
}

/// Ramification profile of the Gauss map on `Σ`. A prefactor `s` rescales
/// values by `s` and leaves `D` and `ν` unchanged; the profile lists values
/// of the unscaled map.
pub fn gauss_profile(w: &WData3, prec: Precision) -> Result<RamificationProfile> {
    w.require_nonflat()?;
    ramification_profile(&w.g.base, &w.domain, prec)
}
