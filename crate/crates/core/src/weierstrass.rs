//! Machinery shared by the R³ and R⁴ Weierstrass representations: maps with a
//! quadratic prefactor, conformality, regularity, periods, completeness and
//! curvature quadrature.

use num_complex::Complex64;
use rayon::prelude::*;
use rug::{Complex, Float};
use serde::Serialize;

use crate::algebra::bigcomplex::two_pi_i;
use crate::algebra::differential::{contour_radius, DEFAULT_NODES};
use crate::algebra::divisor::point_cmp;
use crate::algebra::rational::horner_c64;
use crate::algebra::roots::squarefree_roots;
use crate::algebra::{
    ComplexValue, Divisor, ExactComplex, Polynomial, Precision, QuadNumber, QuadSymbol, RationalDifferential,
    RationalMap, Residue, SpherePoint,
};
use crate::error::{Error, Result};
use crate::ramification::PuncturedSphere;

/// `r₀ + s·r₁` with `s² = q` rational; `r₁ = 0` when there is no symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadMap {
    pub r0: RationalMap,
    pub r1: RationalMap,
}

impl QuadMap {
    pub fn exact(r0: RationalMap) -> Self {
        Self { r0, r1: RationalMap::zero() }
    }

    pub fn symbolic(r1: RationalMap) -> Self {
        Self { r0: RationalMap::zero(), r1 }
    }

    pub fn constant(c: ExactComplex) -> Self {
        Self::exact(RationalMap::constant(c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self { r0: self.r0.add(&rhs.r0), r1: self.r1.add(&rhs.r1) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self { r0: self.r0.sub(&rhs.r0), r1: self.r1.sub(&rhs.r1) }
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        Self { r0: self.r0.scale(c), r1: self.r1.scale(c) }
    }

    pub fn mul_map(&self, f: &RationalMap) -> Self {
        Self { r0: self.r0.mul(f), r1: self.r1.mul(f) }
    }

    /// Product using `s² = q` (zero when there is no symbol).
    pub fn mul(&self, rhs: &Self, symbol: Option<&QuadSymbol>) -> Self {
        let q = symbol.map_or(ExactComplex::zero(), |s| ExactComplex::real(s.square().clone()));
        let r0 = self.r0.mul(&rhs.r0).add(&self.r1.mul(&rhs.r1).scale(&q));
        let r1 = self.r0.mul(&rhs.r1).add(&self.r1.mul(&rhs.r0));
        Self { r0, r1 }
    }

    pub fn is_zero(&self) -> bool {
        self.r0.is_zero() && self.r1.is_zero()
    }

    pub fn into_differential(self, symbol: Option<&QuadSymbol>) -> RationalDifferential {
        RationalDifferential::with_symbol(self.r0, self.r1, symbol.cloned())
    }

    pub fn from_differential(w: &RationalDifferential) -> Self {
        Self { r0: w.coeff().clone(), r1: w.sym_coeff().clone() }
    }
}

/// A Gauss map `s^e·base` with `e ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussMap {
    pub base: RationalMap,
    pub scaled: bool,
}

impl GaussMap {
    pub fn new(base: RationalMap, scaled: bool) -> Self {
        Self { base, scaled }
    }

    pub fn as_quad(&self) -> QuadMap {
        if self.scaled {
            QuadMap::symbolic(self.base.clone())
        } else {
            QuadMap::exact(self.base.clone())
        }
    }

    pub fn is_constant(&self) -> bool {
        self.base.is_constant()
    }

    pub fn degree(&self) -> usize {
        if self.base.is_constant() {
            0
        } else {
            self.base.degree()
        }
    }

    /// `|s|²` for scaled maps, 1 otherwise.
    pub fn scale_norm_sqr(&self, symbol: Option<&QuadSymbol>) -> f64 {
        match (self.scaled, symbol) {
            (true, Some(s)) => s.square().to_f64().abs(),
            _ => 1.0,
        }
    }

    /// Order at `p`; `None` for the zero map.
    pub fn order_at(&self, p: &SpherePoint) -> Result<Option<i64>> {
        if self.base.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.base.order_at(p)?))
    }
}

/// Exact test `Σ φᵢ² ≡ 0`. Components must share the same symbol (or none).
pub fn conformality_check(phis: &[RationalDifferential]) -> bool {
    let symbol = phis.iter().find_map(|w| w.symbol()).cloned();
    if phis.iter().any(|w| w.symbol().is_some() && w.symbol() != symbol.as_ref()) {
        return false;
    }
    let mut sum = QuadMap::exact(RationalMap::zero());
    for w in phis {
        let m = QuadMap::from_differential(w);
        sum = sum.add(&m.mul(&m, symbol.as_ref()));
    }
    sum.is_zero()
}

/// Fast double-precision evaluation of a rational map.
#[derive(Clone, Debug)]
pub struct C64Map {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

impl C64Map {
    pub fn new(f: &RationalMap) -> Self {
        Self { num: f.num().to_c64_coeffs(), den: f.den().to_c64_coeffs() }
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        Self { num: p.to_c64_coeffs(), den: vec![Complex64::new(1.0, 0.0)] }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner_c64(&self.num, z) / horner_c64(&self.den, z)
    }
}

/// Spherical-area density `|g'|²/(1+|g|²)²` of a Gauss map in a form that
/// stays finite at poles: `|s|²|W|²/(|Q|² + |s|²|P|²)²`.
#[derive(Clone, Debug)]
pub struct SphericalDensity {
    p: C64Map,
    q: C64Map,
    w: C64Map,
    s2: f64,
}

impl SphericalDensity {
    pub fn new(g: &GaussMap, symbol: Option<&QuadSymbol>) -> Self {
        Self {
            p: C64Map::from_poly(g.base.num()),
            q: C64Map::from_poly(g.base.den()),
            w: C64Map::from_poly(&g.base.wronskian()),
            s2: g.scale_norm_sqr(symbol),
        }
    }

    /// Returns `(|s|²|W|², T)` with `T = |Q|² + |s|²|P|²`.
    pub fn parts(&self, z: Complex64) -> (f64, f64) {
        let w = self.w.eval(z).norm_sqr() * self.s2;
        let t = self.q.eval(z).norm_sqr() + self.s2 * self.p.eval(z).norm_sqr();
        (w, t)
    }

    pub fn density(&self, z: Complex64) -> f64 {
        let (w, t) = self.parts(z);
        w / (t * t)
    }
}

/// Subdivision per side of cells straddling an excluded disk boundary.
const BOUNDARY_SUBDIVISION: usize = 16;

/// `∫ density dA / π` over the log-polar annulus `r_min ≤ |z| ≤ r_out` minus
/// the disks of radius `eps` about finite punctures other than the origin, by
/// the midpoint rule. Cells cut by a disk boundary are refined so that the
/// excluded region is resolved below the cell size. `r_min = eps` when the
/// origin is a puncture.
pub fn integrate_density<F: Fn(Complex64) -> f64 + Sync>(
    density: F,
    domain: &PuncturedSphere,
    r_out: f64,
    eps: f64,
    grid: (usize, usize),
) -> f64 {
    let origin_punctured = domain.is_puncture(&SpherePoint::from_int(0));
    let r_min = if origin_punctured { eps } else { 1e-6_f64.min(eps) };
    let others: Vec<Complex64> = domain
        .finite_punctures()
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.to_c64())
        .collect();
    let (nr, nt) = grid;
    let (u0, u1) = (r_min.ln(), r_out.ln());
    let du = (u1 - u0) / nr as f64;
    let dt = std::f64::consts::TAU / nt as f64;
    let outside = |z: Complex64| others.iter().all(|p| (z - p).norm() >= eps);
    let rows: Vec<f64> = (0..nr)
        .into_par_iter()
        .map(|i| {
            let u = u0 + (i as f64 + 0.5) * du;
            let r = u.exp();
            // Distance from a cell centre to its farthest corner.
            let reach = r * ((du / 2.0).exp() - 1.0).hypot(dt / 2.0);
            let mut acc = 0.0;
            for j in 0..nt {
                let t = (j as f64 + 0.5) * dt;
                let z = Complex64::from_polar(r, t);
                let near = others.iter().map(|p| (z - p).norm()).fold(f64::INFINITY, f64::min);
                if near >= eps + reach {
                    acc += density(z) * r * r;
                } else if near > eps - reach {
                    let n = BOUNDARY_SUBDIVISION;
                    let (su, st) = (du / n as f64, dt / n as f64);
                    let mut sub = 0.0;
                    for a in 0..n {
                        let rs = (u - du / 2.0 + (a as f64 + 0.5) * su).exp();
                        for b in 0..n {
                            let zs = Complex64::from_polar(rs, t - dt / 2.0 + (b as f64 + 0.5) * st);
                            if outside(zs) {
                                sub += density(zs) * rs * rs;
                            }
                        }
                    }
                    acc += sub / (n * n) as f64;
                }
            }
            acc * du * dt
        })
        .collect();
    rows.iter().sum::<f64>() / std::f64::consts::PI
}

/// One period: `∮_c φ = 2πi·residue`.
#[derive(Clone, Debug)]
pub struct PeriodValue {
    pub residue: Residue,
    pub integral: Complex64,
    /// Exact vanishing of the real part; `None` for numeric residues.
    pub real_part_zero: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct PeriodEntry {
    pub puncture: SpherePoint,
    pub values: Vec<PeriodValue>,
    /// `max |contour − 2πi·residue|` over the components (finite punctures).
    pub contour_deviation: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct PeriodReport {
    pub entries: Vec<PeriodEntry>,
    pub real_max: f64,
    pub exact_mode: bool,
    pub tol: f64,
    pub residue_sums_vanish: bool,
    pub passed: bool,
}

fn period_value(r: Residue, bits: u32) -> PeriodValue {
    let v = Complex::with_val(bits, r.to_complex(bits) * two_pi_i(bits));
    let integral = Complex64::new(v.real().to_f64(), v.imag().to_f64());
    let real_part_zero = r.as_exact().map(QuadNumber::imag_is_zero);
    PeriodValue { residue: r, integral, real_part_zero }
}

/// Sum of the residues of `w` over all of its poles and `∞`.
pub fn residue_sum(w: &RationalDifferential, prec: Precision, hints: &[ExactComplex]) -> Result<(Complex, bool)> {
    let bits = prec.working_bits();
    let mut sum = w.residue_at(&SpherePoint::Infinity, prec)?.to_complex(bits);
    let mut exact_sum = w.residue_at(&SpherePoint::Infinity, prec)?.as_exact().cloned();
    for p in w.finite_poles(prec, hints)? {
        let r = w.residue_at(&SpherePoint::Finite(p), prec)?;
        sum += r.to_complex(bits);
        exact_sum = match (exact_sum, r.as_exact()) {
            (Some(a), Some(b)) => Some(a.add(b)),
            _ => None,
        };
    }
    Ok((sum, exact_sum.is_some_and(|q| q.is_zero())))
}

/// Periods of each `φᵢ` around every puncture. Residues at finite punctures
/// are exact and cross-checked with a trapezoid contour integral; the entry
/// for `∞` is exact and consistent with the residue sum.
///
/// Exact data passes iff every real part vanishes exactly; data converted
/// from floating-point input passes iff `max |Re ∮| < tol`.
pub fn period_check(
    phis: &[RationalDifferential],
    domain: &PuncturedSphere,
    prec: Precision,
    tol: f64,
    exact_mode: bool,
    cross_check: bool,
) -> Result<PeriodReport> {
    let bits = prec.working_bits();
    let hints = domain.finite_punctures();
    let mut entries = Vec::new();
    let mut real_max: f64 = 0.0;
    let mut all_zero = true;
    let poles: Vec<Vec<ComplexValue>> = phis.iter().map(|w| w.finite_poles(prec, &hints)).collect::<Result<_>>()?;
    for p in domain.punctures() {
        let mut values = Vec::new();
        let mut deviation: Option<f64> = None;
        for (w, w_poles) in phis.iter().zip(&poles) {
            let r = w.residue_at(p, prec)?;
            let v = period_value(r, bits);
            if cross_check {
                if let SpherePoint::Finite(ComplexValue::Exact(z)) = p {
                    let center = z.to_complex(bits);
                    let radius = contour_radius(&center, w_poles);
                    let c = contour_with_shrink(w, &center, radius, prec)?;
                    let exact = Complex::with_val(bits, v.residue.to_complex(bits) * two_pi_i(bits));
                    let d = Complex::with_val(bits, c - exact);
                    let d = Float::with_val(bits, d.abs_ref()).to_f64();
                    deviation = Some(deviation.map_or(d, |x: f64| x.max(d)));
                }
            }
            real_max = real_max.max(v.integral.re.abs());
            all_zero &= v.real_part_zero.unwrap_or(false);
            values.push(v);
        }
        entries.push(PeriodEntry { puncture: p.clone(), values, contour_deviation: deviation });
    }
    entries.sort_by(|a, b| point_cmp(&a.puncture, &b.puncture));
    let mut residue_sums_vanish = true;
    for w in phis {
        let (s, exact_zero) = residue_sum(w, prec, &hints)?;
        let mag = Float::with_val(bits, s.abs_ref()).to_f64();
        residue_sums_vanish &= exact_zero || mag < prec.half_tolerance();
    }
    let passed = if exact_mode { all_zero } else { real_max < tol };
    Ok(PeriodReport { entries, real_max, exact_mode, tol, residue_sums_vanish, passed })
}

fn contour_with_shrink(w: &RationalDifferential, center: &Complex, radius: f64, prec: Precision) -> Result<Complex> {
    let mut rho = radius;
    let mut last = None;
    for _ in 0..4 {
        match w.contour_integral(center, rho, DEFAULT_NODES, prec) {
            Ok(v) => return Ok(v),
            Err(e @ Error::PoleOnContour { .. }) => {
                last = Some(e);
                rho *= 0.5;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Completeness data at one puncture.
#[derive(Clone, Debug, Serialize)]
pub struct EndReport {
    pub puncture: String,
    /// Order of `h dz` (differential order, `−2` correction at `∞`).
    pub hdz_order: i64,
    /// Orders of the Gauss maps; `None` for the zero map.
    pub gauss_orders: Vec<Option<i64>>,
    /// `ord(h dz) + Σ weightᵢ·min(0, ord gᵢ)`; complete iff `≤ −1`.
    pub growth: i64,
    pub complete: bool,
}

/// Order-count completeness criterion at each puncture: the metric factor has
/// a pole when `ord(h dz) + Σ cᵢ·min(0, ord gᵢ) ≤ −1` (`c = 2` for the single
/// R³ map, `c = 1` for each R⁴ map).
pub fn completeness(
    h: &RationalMap,
    gauss: &[(&GaussMap, i64)],
    domain: &PuncturedSphere,
) -> Result<Vec<EndReport>> {
    let hdz = RationalDifferential::new(h.clone());
    let mut out = Vec::new();
    let mut punctures = domain.punctures().to_vec();
    punctures.sort_by(point_cmp);
    for p in &punctures {
        let m = hdz.order_at(p)?;
        let mut growth = m;
        let mut orders = Vec::new();
        for (g, c) in gauss {
            let n = g.order_at(p)?;
            if let Some(n) = n {
                growth += c * n.min(0);
            }
            orders.push(n);
        }
        out.push(EndReport { puncture: p.to_string(), hdz_order: m, gauss_orders: orders, growth, complete: growth <= -1 });
    }
    Ok(out)
}

/// Regularity through `M = h / (product of Gauss map denominators)`: the data
/// is regular on the finite part of `Σ` iff `M` has neither zeros nor poles
/// there. At `∞ ∈ Σ` the order of `h dz` must equal the weighted pole orders.
/// Returns the mismatch divisor `div(h dz)|_Σ − Σ cᵢ·(gᵢ)_∞|_Σ`.
pub fn regularity(
    h: &RationalMap,
    gauss: &[(&GaussMap, i64)],
    domain: &PuncturedSphere,
    prec: Precision,
) -> Result<Divisor> {
    let mut den = Polynomial::one();
    for (g, c) in gauss {
        den = den.mul(&g.base.den().pow(*c as u32));
    }
    let m = h.div(&RationalMap::new(den, Polynomial::one())?)?;
    let hints = domain.finite_punctures();
    let mut num = m.num().clone();
    let mut mden = m.den().clone();
    for p in &hints {
        num = num.strip_root(p).0;
        mden = mden.strip_root(p).0;
    }
    let mut mismatch = Divisor::new();
    for (poly, sign) in [(&num, 1i64), (&mden, -1i64)] {
        if poly.is_constant() {
            continue;
        }
        let (_, factors) = poly.squarefree()?;
        for (mult, q) in factors {
            for z in squarefree_roots(&q, prec, &hints)? {
                mismatch.add_point(SpherePoint::Finite(z), sign * mult as i64);
            }
        }
    }
    if !domain.contains_infinity() {
        let hdz = RationalDifferential::new(h.clone());
        let ord = hdz.order_at(&SpherePoint::Infinity)?;
        let mut poles = 0;
        for (g, c) in gauss {
            if let Some(n) = g.order_at(&SpherePoint::Infinity)? {
                poles += c * (-n).max(0);
            }
        }
        mismatch.add_point(SpherePoint::Infinity, ord - poles);
    }
    Ok(mismatch)
}

/// Exact zero test of `W(z)` for exact points, thresholded at `10^(−P/2)`
/// relative to the coefficient scale for numeric points.
pub fn wronskian_vanishes(g: &GaussMap, z: &ComplexValue, prec: Precision) -> bool {
    let w = g.base.wronskian();
    if w.is_zero() {
        return true;
    }
    match z {
        ComplexValue::Exact(e) => w.eval(e).is_zero(),
        ComplexValue::Numeric(b) => {
            let bits = prec.working_bits();
            let zc = Complex::with_val(bits, b.inner());
            let v = w.eval_complex(&zc);
            let r = b.abs_f64().max(1.0);
            let scale: f64 = w
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c.to_c64().norm() * r.powi(k as i32))
                .sum();
            Float::with_val(bits, v.abs_ref()).to_f64() <= prec.half_tolerance() * scale.max(1.0)
        }
    }
}

/// Ramification points of `g` lying in `Σ`, with multiplicity `e − 1`.
pub fn ramification_points_in_domain(
    g: &GaussMap,
    domain: &PuncturedSphere,
    prec: Precision,
) -> Result<Vec<(SpherePoint, usize)>> {
    if g.base.is_constant() {
        return Err(Error::FlatSurface);
    }
    let crit = crate::algebra::critical_points(&g.base, prec, &domain.finite_punctures(), &[])?;
    let mut out: Vec<(SpherePoint, usize)> = crit
        .into_iter()
        .filter(|c| !domain.is_puncture(&c.point))
        .map(|c| (c.point, c.multiplicity - 1))
        .collect();
    out.sort_by(|a, b| point_cmp(&a.0, &b.0));
    Ok(out)
}

/// Rejects points at (or numerically on top of) punctures.
pub fn check_in_domain(z: &ComplexValue, domain: &PuncturedSphere) -> Result<()> {
    let p = SpherePoint::Finite(z.clone());
    if domain.punctures().iter().any(|q| q.approx_eq(&p, 1e-30)) {
        return Err(Error::OutsideDomain(p.to_string()));
    }
    Ok(())
}

/// Regularity verdict with the mismatch divisor (zero iff regular).
#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub regular: bool,
    pub mismatch: Divisor,
}

impl RegularityReport {
    pub fn new(mismatch: Divisor) -> Self {
        Self { regular: mismatch.is_zero(), mismatch }
    }
}

/// Numeric knobs of a verification run.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub prec: Precision,
    /// Threshold on `|Re ∮|` for data converted from floating-point input.
    pub tol: f64,
    /// Cross-check exact residues against trapezoid contour integrals.
    pub cross_check: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { prec: Precision::default(), tol: 1e-10, cross_check: true }
    }
}

/// Conformality, regularity, periods and completeness of one surface.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub conformal: bool,
    pub regularity: RegularityReport,
    pub periods: PeriodReport,
    /// Per-puncture completeness; `None` when regularity fails.
    pub ends: Option<Vec<EndReport>>,
    pub complete: bool,
    pub overall: bool,
}

impl VerificationReport {
    pub fn assemble(
        conformal: bool,
        regularity: RegularityReport,
        periods: PeriodReport,
        ends: Option<Vec<EndReport>>,
    ) -> Self {
        let complete = ends.as_ref().is_some_and(|e| e.iter().all(|x| x.complete));
        let overall = conformal && regularity.regular && periods.passed && complete;
        Self { conformal, regularity, periods, ends, complete, overall }
    }
}

/// Gauss curvature from two Gauss maps (the R³ case uses `g₁ = g₂ = g`):
/// `K = −2/(T₁T₂|M|²)·(w₁/T₁² + w₂/T₂²)` with `M = h/(Q₁Q₂)`,
/// `Tᵢ = |Qᵢ|² + |sᵢ|²|Pᵢ|²` and `wᵢ = |sᵢ|²|Wᵢ|²`.
#[derive(Clone, Debug)]
pub struct CurvatureField {
    first: SphericalDensity,
    second: SphericalDensity,
    m: C64Map,
}

impl CurvatureField {
    pub fn new(g1: &GaussMap, g2: &GaussMap, h: &RationalMap, symbol: Option<&QuadSymbol>) -> Result<Self> {
        let den = g1.base.den().mul(g2.base.den());
        let m = h.div(&RationalMap::polynomial(den))?;
        Ok(Self {
            first: SphericalDensity::new(g1, symbol),
            second: SphericalDensity::new(g2, symbol),
            m: C64Map::new(&m),
        })
    }

    pub fn eval(&self, z: Complex64) -> f64 {
        let (w1, t1) = self.first.parts(z);
        let (w2, t2) = self.second.parts(z);
        let m2 = self.m.eval(z).norm_sqr();
        -2.0 / (t1 * t2 * m2) * (w1 / (t1 * t1) + w2 / (t2 * t2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn conformality_examples() {
        let dz = RationalDifferential::new(RationalMap::constant(ExactComplex::one()));
        assert!(!conformality_check(&[dz.clone(), dz.clone(), dz]));
        let half = ExactComplex::from_ratio(1, 2);
        let ihalf = ExactComplex::new(rug::Rational::new(), rug::Rational::from((1, 2)));
        let phi1 = RationalDifferential::new(RationalMap::polynomial(p(&[1, 0, -1]).scale(&half)));
        let phi2 = RationalDifferential::new(RationalMap::polynomial(p(&[1, 0, 1]).scale(&ihalf)));
        let phi3 = RationalDifferential::new(RationalMap::identity());
        assert!(conformality_check(&[phi1, phi2, phi3]));
    }

    #[test]
    fn plane_regularity_mismatch() {
        // g = 1/z, h = 1 on C: pole of g at 0 without a zero of h
        let g = GaussMap::new(RationalMap::new(p(&[1]), p(&[0, 1])).unwrap(), false);
        let h = RationalMap::constant(ExactComplex::one());
        let d = regularity(&h, &[(&g, 2)], &PuncturedSphere::plane(), Precision::default()).unwrap();
        assert_eq!(d, Divisor::from_terms([(SpherePoint::from_int(0), -2)]));
    }
}
