//! Omitted and totally ramified values of rational maps on punctured spheres.

use std::fmt;

use rug::Rational;

use crate::algebra::divisor::point_cmp;
use crate::algebra::fiber::{critical_points, fiber, multiplicity_at_infinity, CriticalPoint};
use crate::algebra::{ComplexValue, ExactComplex, Precision, RationalMap, SpherePoint};
use crate::error::{Error, Result};

/// `Σ = C̄ \ {p₁,…,p_k}` of genus zero; punctures are exact points or `∞`.
#[derive(Clone, PartialEq)]
pub struct PuncturedSphere {
    punctures: Vec<SpherePoint>,
}

impl PuncturedSphere {
    pub fn new(punctures: Vec<SpherePoint>) -> Result<Self> {
        for (i, p) in punctures.iter().enumerate() {
            if matches!(p, SpherePoint::Finite(ComplexValue::Numeric(_))) {
                return Err(Error::InvalidTopology(format!("puncture {p} is not exact")));
            }
            if punctures[..i].contains(p) {
                return Err(Error::DuplicatePuncture(p.to_string()));
            }
        }
        Ok(Self { punctures })
    }

    /// The plane `C = C̄ \ {∞}`.
    pub fn plane() -> Self {
        Self { punctures: vec![SpherePoint::Infinity] }
    }

    pub fn punctures(&self) -> &[SpherePoint] {
        &self.punctures
    }

    pub fn k(&self) -> usize {
        self.punctures.len()
    }

    pub fn genus(&self) -> usize {
        0
    }

    pub fn is_puncture(&self, p: &SpherePoint) -> bool {
        self.punctures.contains(p)
    }

    pub fn contains_infinity(&self) -> bool {
        self.punctures.iter().any(SpherePoint::is_infinity)
    }

    /// Finite punctures, used as exact root hints.
    pub fn finite_punctures(&self) -> Vec<ExactComplex> {
        self.punctures.iter().filter_map(|p| p.as_exact().cloned()).collect()
    }
}

impl fmt::Debug for PuncturedSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C̄ \\ {{")?;
        for (i, p) in self.punctures.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Order `ν` of a totally ramified value; omitted values have `ν = ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RamificationOrder {
    Finite(usize),
    Infinite,
}

impl RamificationOrder {
    /// `1 − 1/ν`, equal to 1 for `ν = ∞`.
    pub fn weight(&self) -> Rational {
        match self {
            RamificationOrder::Finite(n) => Rational::from(1) - Rational::from((1, *n as u64)),
            RamificationOrder::Infinite => Rational::from(1),
        }
    }
}

impl fmt::Display for RamificationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RamificationOrder::Finite(n) => write!(f, "{n}"),
            RamificationOrder::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Regular,
    Omitted,
    TotallyRamified(usize),
}

/// A value whose preimages in `Σ` all have multiplicity at least `ν ≥ 2`.
#[derive(Clone, Debug)]
pub struct RamifiedValue {
    pub value: SpherePoint,
    pub order: RamificationOrder,
    pub preimages: Vec<(SpherePoint, usize)>,
    pub preimages_at_punctures: Vec<(SpherePoint, usize)>,
}

impl RamifiedValue {
    pub fn weight(&self) -> Rational {
        self.order.weight()
    }

    pub fn is_omitted(&self) -> bool {
        self.order == RamificationOrder::Infinite
    }
}

#[derive(Clone, Debug)]
pub struct RamificationProfile {
    pub d: usize,
    /// `D_f`, the number of omitted values.
    pub omitted: usize,
    /// `ν_f`, the total weight of the totally ramified values.
    pub nu: Rational,
    pub ramified: Vec<RamifiedValue>,
    pub n0: usize,
    pub nr: usize,
    pub nf: usize,
    /// Non-omitted values with at least one ramification point in `Σ`.
    pub l: usize,
    pub candidates: Vec<SpherePoint>,
    pub critical_points: Vec<CriticalPoint>,
}

/// Fiber data of one candidate value assembled from the critical points.
struct CandidateFiber {
    value: SpherePoint,
    /// Critical points over the value, in `Σ`.
    critical_in_domain: Vec<(SpherePoint, usize)>,
    /// Preimages at punctures (critical or simple).
    at_punctures: Vec<(SpherePoint, usize)>,
    /// Simple preimages lying in `Σ`.
    simple_in_domain: usize,
    branching: usize,
}

impl CandidateFiber {
    fn classify(&self) -> Classification {
        if self.critical_in_domain.is_empty() && self.simple_in_domain == 0 {
            Classification::Omitted
        } else if self.simple_in_domain == 0 {
            Classification::TotallyRamified(self.critical_in_domain.iter().map(|x| x.1).min().unwrap())
        } else {
            Classification::Regular
        }
    }
}

fn require_nonconstant(f: &RationalMap) -> Result<()> {
    if f.is_constant() {
        Err(Error::ConstantMap)
    } else {
        Ok(())
    }
}

fn puncture_images(f: &RationalMap, sigma: &PuncturedSphere) -> Result<Vec<(SpherePoint, SpherePoint)>> {
    sigma
        .punctures()
        .iter()
        .map(|p| Ok((p.clone(), f.value_at_exact(p)?)))
        .collect()
}

fn push_unique(values: &mut Vec<SpherePoint>, v: SpherePoint, tol: f64) {
    if !values.iter().any(|w| w.approx_eq(&v, tol)) {
        values.push(v);
    }
}

/// Puncture images together with the critical values of `f` on `C̄`, with
/// numeric values merged at relative tolerance `10^(−P/2)`.
pub fn candidate_values(f: &RationalMap, sigma: &PuncturedSphere, prec: Precision) -> Result<Vec<SpherePoint>> {
    require_nonconstant(f)?;
    let images = puncture_images(f, sigma)?;
    let exact: Vec<SpherePoint> = images.iter().map(|x| x.1.clone()).collect();
    let crit = critical_points(f, prec, &sigma.finite_punctures(), &exact)?;
    Ok(collect_candidates(&exact, &crit, prec))
}

fn collect_candidates(images: &[SpherePoint], crit: &[CriticalPoint], prec: Precision) -> Vec<SpherePoint> {
    let tol = prec.half_tolerance();
    let mut values = Vec::new();
    for v in images {
        push_unique(&mut values, v.clone(), tol);
    }
    for c in crit {
        push_unique(&mut values, c.value.clone(), tol);
    }
    values.sort_by(point_cmp);
    values
}

/// Classifies `a` from its fiber: punctures are removed; an empty remainder
/// means omitted, all multiplicities at least 2 means totally ramified.
pub fn classify_value(f: &RationalMap, sigma: &PuncturedSphere, a: &SpherePoint, prec: Precision) -> Result<Classification> {
    require_nonconstant(f)?;
    let fib = fiber(f, a, prec, &sigma.finite_punctures())?;
    Ok(classify_fiber(&fib, sigma))
}

/// Classification of an explicit fiber relative to `Σ`.
pub fn classify_fiber(fib: &[(SpherePoint, usize)], sigma: &PuncturedSphere) -> Classification {
    let inside: Vec<usize> = fib.iter().filter(|(p, _)| !sigma.is_puncture(p)).map(|x| x.1).collect();
    match inside.iter().min() {
        None => Classification::Omitted,
        Some(&m) if m >= 2 => Classification::TotallyRamified(m),
        Some(_) => Classification::Regular,
    }
}

/// Omitted values, totally ramified values with orders, and the branching
/// counts `n₀`, `n_r`, `n_f = 2d − 2`.
pub fn ramification_profile(f: &RationalMap, sigma: &PuncturedSphere, prec: Precision) -> Result<RamificationProfile> {
    require_nonconstant(f)?;
    let d = f.degree();
    let tol = prec.half_tolerance();
    let images = puncture_images(f, sigma)?;
    let exact: Vec<SpherePoint> = images.iter().map(|x| x.1.clone()).collect();
    let crit = critical_points(f, prec, &sigma.finite_punctures(), &exact)?;
    let candidates = collect_candidates(&exact, &crit, prec);

    let mut fibers = Vec::new();
    for v in &candidates {
        let over: Vec<&CriticalPoint> = crit.iter().filter(|c| c.value.approx_eq(v, tol)).collect();
        let crit_mult: usize = over.iter().map(|c| c.multiplicity).sum();
        if crit_mult > d {
            return Err(Error::ClusterAmbiguity(format!("critical multiplicities over {v} exceed d = {d}")));
        }
        let mut at_punctures = Vec::new();
        let mut critical_in_domain = Vec::new();
        for c in &over {
            if sigma.is_puncture(&c.point) {
                at_punctures.push((c.point.clone(), c.multiplicity));
            } else {
                critical_in_domain.push((c.point.clone(), c.multiplicity));
            }
        }
        let simple_punctures = images
            .iter()
            .filter(|(p, w)| w == v && !over.iter().any(|c| &c.point == p))
            .map(|(p, _)| p.clone())
            .collect::<Vec<_>>();
        let simple = d - crit_mult;
        if simple_punctures.len() > simple {
            return Err(Error::ClusterAmbiguity(format!("inconsistent puncture fiber over {v}")));
        }
        for p in &simple_punctures {
            at_punctures.push((p.clone(), 1));
        }
        at_punctures.sort_by(|a, b| point_cmp(&a.0, &b.0));
        critical_in_domain.sort_by(|a, b| point_cmp(&a.0, &b.0));
        fibers.push(CandidateFiber {
            value: v.clone(),
            critical_in_domain,
            at_punctures,
            simple_in_domain: simple - simple_punctures.len(),
            branching: over.iter().map(|c| c.multiplicity - 1).sum(),
        });
    }

    let nf: usize = crit.iter().map(|c| c.multiplicity - 1).sum();
    let (mut omitted, mut n0, mut nr, mut l) = (0, 0, 0, 0);
    let mut nu = Rational::new();
    let mut ramified = Vec::new();
    for fib in &fibers {
        let class = fib.classify();
        if class != Classification::Omitted && !fib.critical_in_domain.is_empty() {
            l += 1;
        }
        let order = match class {
            Classification::Regular => continue,
            Classification::Omitted => {
                omitted += 1;
                n0 += fib.branching;
                RamificationOrder::Infinite
            }
            Classification::TotallyRamified(n) => {
                nr += fib.branching;
                RamificationOrder::Finite(n)
            }
        };
        nu += order.weight();
        ramified.push(RamifiedValue {
            value: fib.value.clone(),
            order,
            preimages: fib.critical_in_domain.clone(),
            preimages_at_punctures: fib.at_punctures.clone(),
        });
    }
    assert_eq!(nf, 2 * d - 2, "Riemann-Hurwitz count");
    assert!(n0 + nr <= nf);
    assert!(Rational::from(omitted) <= nu, "D_f <= nu_f");
    Ok(RamificationProfile { d, omitted, nu, ramified, n0, nr, nf, l, candidates, critical_points: crit })
}

/// Local degree of `f` at an exact point or `∞`.
pub fn local_degree(f: &RationalMap, p: &SpherePoint) -> Result<usize> {
    require_nonconstant(f)?;
    match p {
        SpherePoint::Infinity => multiplicity_at_infinity(f),
        _ => {
            let a = f.value_at_exact(p)?;
            let shifted = f.shifted_numerator(&a)?;
            Ok(shifted.multiplicity_at(p.as_exact().expect("exact point"))?)
        }
    }
}

/// Which genus-zero bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSpace {
    /// A single Gauss map of degree `d` (R³, or an R⁴ map with constant partner).
    Single { d: usize },
    /// Two nonconstant Gauss maps of an R⁴ surface.
    Pair { d1: usize, d2: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Genus0Bound {
    /// `2 + (k − 2)/d`.
    Single(Rational),
    /// `R₁ + R₂` with `Rᵢ = dᵢ/(k − 2)`, or `None` when `k ≤ 2` (the bound is
    /// vacuous there since `νᵢ ≤ 2`), together with the single-map bounds.
    Pair { reciprocal_sum: Option<Rational>, singles: [Rational; 2] },
}

pub fn single_bound(d: usize, k: usize) -> Result<Rational> {
    if d < 1 {
        return Err(Error::InvalidTopology(format!("degree {d} < 1")));
    }
    Ok(Rational::from(2) + Rational::from((k as i64 - 2, d as i64)))
}

pub fn genus0_bound(k: usize, space: BoundSpace) -> Result<Genus0Bound> {
    match space {
        BoundSpace::Single { d } => Ok(Genus0Bound::Single(single_bound(d, k)?)),
        BoundSpace::Pair { d1, d2 } => {
            let singles = [single_bound(d1, k)?, single_bound(d2, k)?];
            let reciprocal_sum = (k >= 3).then(|| Rational::from((d1 as i64 + d2 as i64, k as i64 - 2)));
            Ok(Genus0Bound::Pair { reciprocal_sum, singles })
        }
    }
}

/// `2 + (k − 2)/d − l/d`.
pub fn refined_bound(d: usize, k: usize, l: usize) -> Result<Rational> {
    Ok(single_bound(d, k)? - Rational::from((l as i64, d as i64)))
}
