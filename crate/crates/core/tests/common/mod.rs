//! Shared generators and an exact brute-force ramification oracle.
#![allow(dead_code)]

use minsurf::algebra::{ExactComplex, Polynomial, RationalMap, SpherePoint};
use minsurf::ramification::PuncturedSphere;
use rand::Rng;
use rug::Rational;

/// Gaussian rational with small numerators and denominators.
pub fn gaussian<R: Rng>(rng: &mut R, span: i64) -> ExactComplex {
    let den = rng.gen_range(1..=3);
    let re = Rational::from((rng.gen_range(-span..=span), den));
    let im = Rational::from((rng.gen_range(-span..=span), rng.gen_range(1..=3)));
    ExactComplex::new(re, im)
}

pub fn random_poly<R: Rng>(rng: &mut R, deg: usize, span: i64) -> Polynomial {
    let mut c: Vec<ExactComplex> = (0..=deg).map(|_| gaussian(rng, span)).collect();
    while c[deg].is_zero() {
        c[deg] = gaussian(rng, span);
    }
    Polynomial::new(c)
}

/// Random reduced nonconstant map of degree `1..=max_deg`.
pub fn random_map<R: Rng>(rng: &mut R, max_deg: usize) -> RationalMap {
    loop {
        let (dn, dd) = (rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg));
        let num = random_poly(rng, dn, 4);
        let den = random_poly(rng, dd, 4);
        let f = RationalMap::new(num, den).expect("nonzero denominator");
        if (1..=max_deg).contains(&f.degree()) {
            return f;
        }
    }
}

/// A Möbius transformation `(a z + b)/(c z + e)`.
#[derive(Clone, Debug)]
pub struct Mobius {
    pub a: ExactComplex,
    pub b: ExactComplex,
    pub c: ExactComplex,
    pub e: ExactComplex,
}

impl Mobius {
    pub fn identity() -> Self {
        Self { a: 1.into(), b: 0.into(), c: 0.into(), e: 1.into() }
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let m = Self {
                a: ExactComplex::from_gaussian(rng.gen_range(-2..=2), rng.gen_range(-2..=2)),
                b: ExactComplex::from_gaussian(rng.gen_range(-2..=2), rng.gen_range(-2..=2)),
                c: ExactComplex::from_gaussian(rng.gen_range(-2..=2), rng.gen_range(-2..=2)),
                e: ExactComplex::from_gaussian(rng.gen_range(-2..=2), rng.gen_range(-2..=2)),
            };
            if !(&(&m.a * &m.e) - &(&m.b * &m.c)).is_zero() {
                return m;
            }
        }
    }

    /// Preimage of `w`.
    pub fn inverse_at(&self, w: &SpherePoint) -> SpherePoint {
        // Inverse is (e w − b)/(−c w + a).
        match w {
            SpherePoint::Infinity => ratio(&self.e, &-&self.c),
            _ => {
                let w = w.as_exact().expect("exact point");
                ratio(&(&(&self.e * w) - &self.b), &(&self.a - &(&self.c * w)))
            }
        }
    }
}

fn ratio(n: &ExactComplex, d: &ExactComplex) -> SpherePoint {
    if d.is_zero() {
        SpherePoint::Infinity
    } else {
        SpherePoint::exact(n / d)
    }
}

/// Polynomial `∫ c ∏ (z − cᵢ)^{kᵢ} + c₀`, returned with its finite critical points.
fn integrated_poly<R: Rng>(rng: &mut R, d: usize) -> (Polynomial, Vec<ExactComplex>) {
    let mut deriv = Polynomial::constant(ExactComplex::from_gaussian(rng.gen_range(1..=3), rng.gen_range(-1..=1)));
    let mut crit = Vec::new();
    let mut left = d - 1;
    while left > 0 {
        let k = rng.gen_range(1..=left);
        let c = gaussian(rng, 2);
        if crit.contains(&c) {
            continue;
        }
        deriv = deriv.mul(&Polynomial::linear_root(&c).pow(k as u32));
        crit.push(c);
        left -= k;
    }
    let mut coeffs = vec![gaussian(rng, 2)];
    for (k, a) in deriv.coeffs().iter().enumerate() {
        coeffs.push(a / &ExactComplex::from_int(k as i64 + 1));
    }
    (Polynomial::new(coeffs), crit)
}

/// `num/den` of `M₁ ∘ p ∘ M₂` for a polynomial `p`.
fn compose(p: &Polynomial, m1: &Mobius, m2: &Mobius) -> RationalMap {
    let d = p.degree_or_zero();
    let top = Polynomial::new(vec![m2.b.clone(), m2.a.clone()]);
    let bottom = Polynomial::new(vec![m2.e.clone(), m2.c.clone()]);
    let mut n = Polynomial::zero();
    for (k, a) in p.coeffs().iter().enumerate() {
        n = n.add(&top.pow(k as u32).mul(&bottom.pow((d - k) as u32)).scale(a));
    }
    let dd = bottom.pow(d as u32);
    let num = n.scale(&m1.a).add(&dd.scale(&m1.b));
    let den = n.scale(&m1.c).add(&dd.scale(&m1.e));
    RationalMap::new(num, den).expect("Möbius composition has a nonzero denominator")
}

/// A map with all critical points in `Q(i) ∪ {∞}`, together with them.
#[derive(Clone, Debug)]
pub struct KnownCritical {
    pub f: RationalMap,
    pub critical: Vec<SpherePoint>,
    /// A point whose fiber is a single point of multiplicity `d`.
    pub total_point: SpherePoint,
}

pub fn known_critical_map<R: Rng>(rng: &mut R, d: usize) -> KnownCritical {
    let (p, crit) = integrated_poly(rng, d);
    let m1 = if rng.gen_bool(0.3) { Mobius::identity() } else { Mobius::random(rng) };
    let m2 = if rng.gen_bool(0.3) { Mobius::identity() } else { Mobius::random(rng) };
    let f = compose(&p, &m1, &m2);
    let mut critical: Vec<SpherePoint> = crit.iter().map(|c| m2.inverse_at(&SpherePoint::exact(c.clone()))).collect();
    let total_point = m2.inverse_at(&SpherePoint::Infinity);
    if d >= 2 {
        critical.push(total_point.clone());
    }
    KnownCritical { f, critical, total_point }
}

/// Random punctures for a known-critical map: some random points, sometimes
/// a full fiber or a critical point.
pub fn random_punctures<R: Rng>(rng: &mut R, m: &KnownCritical) -> PuncturedSphere {
    let mut pts: Vec<SpherePoint> = Vec::new();
    let push = |p: SpherePoint, pts: &mut Vec<SpherePoint>| {
        if !pts.contains(&p) {
            pts.push(p);
        }
    };
    if rng.gen_bool(0.5) {
        push(m.total_point.clone(), &mut pts);
    }
    if rng.gen_bool(0.4) && !m.critical.is_empty() {
        let i = rng.gen_range(0..m.critical.len());
        push(m.critical[i].clone(), &mut pts);
    }
    if rng.gen_bool(0.4) {
        push(SpherePoint::Infinity, &mut pts);
    }
    for _ in 0..rng.gen_range(0..=2) {
        push(SpherePoint::exact(gaussian(rng, 3)), &mut pts);
    }
    if pts.is_empty() {
        pts.push(SpherePoint::Infinity);
    }
    PuncturedSphere::new(pts).expect("distinct exact punctures")
}

// ---------------------------------------------------------------------------
// Oracle: exact local degrees only, no root finding.
// ---------------------------------------------------------------------------

/// Exact value of `f` at an exact point.
pub fn value_at(f: &RationalMap, p: &SpherePoint) -> SpherePoint {
    match p {
        SpherePoint::Infinity => {
            let (n, m) = (f.num().degree_or_zero(), f.den().degree_or_zero());
            if n > m {
                SpherePoint::Infinity
            } else if n < m {
                SpherePoint::exact(ExactComplex::zero())
            } else {
                SpherePoint::exact(f.num().leading().unwrap() / f.den().leading().unwrap())
            }
        }
        _ => {
            let z = p.as_exact().expect("exact point");
            ratio(&f.num().eval(z), &f.den().eval(z))
        }
    }
}

/// Local degree of `f` at an exact point, from the order of vanishing of
/// `num − a·den` (or `den` for `a = ∞`) in a local coordinate.
pub fn local_degree(f: &RationalMap, p: &SpherePoint) -> usize {
    let a = value_at(f, p);
    let d = f.degree();
    let (num, den, at) = match p {
        SpherePoint::Infinity => (f.num().reversed(d), f.den().reversed(d), ExactComplex::zero()),
        _ => (f.num().clone(), f.den().clone(), p.as_exact().unwrap().clone()),
    };
    let shifted = match &a {
        SpherePoint::Infinity => den,
        _ => num.sub(&den.scale(a.as_exact().unwrap())),
    };
    shifted.taylor_shift(&at).low_order().expect("nonzero")
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleProfile {
    pub d: usize,
    pub omitted: usize,
    pub nu: Rational,
    /// Totally ramified values with order (`None` for omitted).
    pub ramified: Vec<(SpherePoint, Option<usize>)>,
}

/// Profile of `f` on `sigma` given a claimed complete list of critical points.
/// Returns `None` when the list fails the exact Riemann–Hurwitz certificate.
pub fn oracle_profile(f: &RationalMap, sigma: &PuncturedSphere, critical: &[SpherePoint]) -> Option<OracleProfile> {
    let d = f.degree();
    let mut crit: Vec<(SpherePoint, usize)> = Vec::new();
    for c in critical {
        if crit.iter().any(|(p, _)| p == c) {
            continue;
        }
        let e = local_degree(f, c);
        if e < 2 {
            return None;
        }
        crit.push((c.clone(), e));
    }
    let branching: usize = crit.iter().map(|(_, e)| e - 1).sum();
    if branching != 2 * d - 2 {
        return None;
    }
    let mut values: Vec<SpherePoint> = Vec::new();
    for p in crit.iter().map(|(p, _)| p).chain(sigma.punctures()) {
        let v = value_at(f, p);
        if !values.contains(&v) {
            values.push(v);
        }
    }
    let mut ramified = Vec::new();
    for a in values {
        let mut known: Vec<(SpherePoint, usize)> = crit.iter().filter(|(p, _)| value_at(f, p) == a).cloned().collect();
        for p in sigma.punctures() {
            if value_at(f, p) == a && !known.iter().any(|(q, _)| q == p) {
                known.push((p.clone(), local_degree(f, p)));
            }
        }
        let known_mult: usize = known.iter().map(|(_, e)| e).sum();
        assert!(known_mult <= d, "fiber over {a} overfull");
        let simple_in_sigma = d - known_mult;
        let mut orders: Vec<usize> = known.iter().filter(|(p, _)| !sigma.is_puncture(p)).map(|(_, e)| *e).collect();
        orders.extend(std::iter::repeat(1).take(simple_in_sigma));
        match orders.iter().min() {
            None => ramified.push((a, None)),
            Some(&nu) if nu >= 2 => ramified.push((a, Some(nu))),
            _ => {}
        }
    }
    let omitted = ramified.iter().filter(|(_, o)| o.is_none()).count();
    let mut nu = Rational::new();
    for (_, o) in &ramified {
        nu += match o {
            None => Rational::from(1),
            Some(n) => Rational::from(1) - Rational::from((1, *n as u64)),
        };
    }
    Some(OracleProfile { d, omitted, nu, ramified })
}
