//! Property tests for algebraic and geometric invariants.

mod common;

use minsurf::algebra::{critical_points, fiber, ComplexValue, ExactComplex, Polynomial, Precision, RationalDifferential, RationalMap, SpherePoint};
use minsurf::catalog::{instantiate_default, list_families, Surface};
use minsurf::r3::{gauss_curvature_at, total_curvature_numeric, WData3};
use minsurf::r4::gauss_curvature_at4;
use minsurf::ramification::{ramification_profile, PuncturedSphere, RamificationOrder};
use minsurf::wdata;
use minsurf::weierstrass::residue_sum;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;

fn gaussian() -> impl Strategy<Value = ExactComplex> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| ExactComplex::new(Rational::from((a, b)), Rational::from((c, d))))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(gaussian(), 1..=max_deg + 1).prop_map(Polynomial::new)
}

fn nonconstant_map(max_deg: usize) -> impl Strategy<Value = RationalMap> {
    (poly(max_deg), poly(max_deg))
        .prop_filter_map("nonconstant with nonzero denominator", |(n, d)| {
            RationalMap::new(n, d).ok().filter(|f| f.degree() >= 1)
        })
}

fn prec() -> Precision {
    Precision::default()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn squarefree_reconstructs(base in poly(3), extra in poly(2), k in 1u32..=3) {
        prop_assume!(!base.is_zero() && !extra.is_zero());
        let p = base.mul(&extra.pow(k));
        prop_assume!(!p.is_constant());
        let (lead, factors) = p.squarefree().unwrap();
        let mut q = Polynomial::constant(lead);
        for (m, f) in &factors {
            prop_assert!(f.gcd(&f.derivative()).is_constant(), "factor {} not square-free", f);
            q = q.mul(&f.pow(*m as u32));
        }
        prop_assert_eq!(q, p);
        for (i, (_, a)) in factors.iter().enumerate() {
            for (_, b) in &factors[i + 1..] {
                prop_assert!(a.gcd(b).is_constant());
            }
        }
    }

    #[test]
    fn riemann_hurwitz(f in nonconstant_map(5)) {
        let crit = critical_points(&f, prec(), &[], &[]).unwrap();
        let branching: usize = crit.iter().map(|c| c.multiplicity - 1).sum();
        prop_assert_eq!(branching, 2 * f.degree() - 2);
    }

    #[test]
    fn fiber_sums_to_degree(f in nonconstant_map(5), a in gaussian()) {
        let fib = fiber(&f, &SpherePoint::exact(a), prec(), &[]).unwrap();
        prop_assert_eq!(fib.iter().map(|x| x.1).sum::<usize>(), f.degree());
        let fib = fiber(&f, &SpherePoint::Infinity, prec(), &[]).unwrap();
        prop_assert_eq!(fib.iter().map(|x| x.1).sum::<usize>(), f.degree());
    }

    #[test]
    fn residues_sum_to_zero(f in nonconstant_map(4), roots in prop::collection::vec(gaussian(), 1..=3)) {
        // Force exact poles as well as arbitrary ones.
        let mut den = f.den().clone();
        for r in &roots {
            den = den.mul(&Polynomial::linear_root(r));
        }
        let w = RationalDifferential::new(RationalMap::new(f.num().clone(), den).unwrap());
        let (sum, _) = residue_sum(&w, prec(), &roots).unwrap();
        let scale = 1.0 + f.num().to_c64_coeffs().iter().map(|c| c.norm()).sum::<f64>();
        let s = num_complex::Complex64::new(sum.real().to_f64(), sum.imag().to_f64());
        prop_assert!(s.norm() < 1e-30 * scale, "residue sum {}", s);
    }

    #[test]
    fn profile_matches_oracle(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::known_critical_map(&mut rng, d);
        let sigma = common::random_punctures(&mut rng, &m);
        let o = common::oracle_profile(&m.f, &sigma, &m.critical).expect("certified critical list");
        let p = ramification_profile(&m.f, &sigma, prec()).unwrap();
        prop_assert_eq!((p.d, p.omitted, p.nu.clone()), (o.d, o.omitted, o.nu.clone()));
        prop_assert_eq!(p.ramified.len(), o.ramified.len());
        for (value, order) in &o.ramified {
            let want = order.map_or(RamificationOrder::Infinite, RamificationOrder::Finite);
            prop_assert!(p.ramified.iter().any(|r| r.order == want && r.value.approx_eq(value, 1e-12)));
        }
    }

    #[test]
    fn explicit_wdata_round_trips(g in nonconstant_map(3), h in nonconstant_map(3), pts in prop::collection::vec(gaussian(), 0..=2)) {
        let mut punctures = vec![SpherePoint::Infinity];
        for p in pts {
            let p = SpherePoint::exact(p);
            if !punctures.contains(&p) {
                punctures.push(p);
            }
        }
        let w = WData3::new(g, h, PuncturedSphere::new(punctures).unwrap()).unwrap();
        let s = Surface::R3(w);
        let back = wdata::from_json_str(&wdata::to_json_string(&s)).unwrap();
        prop_assert_eq!(back, s);
    }
}

/// Points of `Σ` at least `0.05` away from every finite puncture.
fn sample_points(s: &Surface, rng: &mut ChaCha8Rng, n: usize) -> Vec<ComplexValue> {
    use rand::Rng;
    let finite: Vec<num_complex::Complex64> = s.domain().punctures().iter().filter_map(|p| p.finite().map(|z| z.to_c64())).collect();
    let mut out = Vec::new();
    while out.len() < n {
        let z = num_complex::Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        if finite.iter().all(|p| (z - p).norm() > 0.05) {
            out.push(ComplexValue::Exact(ExactComplex::from_f64(z.re, z.im).unwrap()));
        }
    }
    out
}

#[test]
fn gauss_curvature_is_nonpositive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for fam in list_families() {
        let s = instantiate_default(fam.name).unwrap();
        for z in sample_points(&s, &mut rng, 40) {
            let k = match &s {
                Surface::R3(w) => gauss_curvature_at(w, &z, prec()),
                Surface::R4(w) => gauss_curvature_at4(w, &z, prec()),
            };
            let k = k.unwrap_or_else(|e| panic!("{}: {e} at {z}", fam.name));
            assert!(k <= 0.0, "{}: K({z}) = {k}", fam.name);
        }
    }
}

#[test]
fn numeric_curvature_converges_under_refinement() {
    for (name, exact) in [("new-surface", -16.0), ("ms1994", -8.0)] {
        let Surface::R3(w) = instantiate_default(name).unwrap() else { unreachable!() };
        let v: Vec<f64> = [(100, 50), (200, 100), (400, 200), (800, 400)]
            .iter()
            .map(|&g| total_curvature_numeric(&w, 100.0, 0.01, g).unwrap())
            .collect();
        let steps: Vec<f64> = v.windows(2).map(|p| (p[1] - p[0]).abs()).collect();
        assert!(steps.windows(2).all(|s| s[1] < s[0]), "{name}: values {v:?}");
        assert!(((v[3] - exact) / exact).abs() < 1e-3, "{name}: values {v:?}");
    }
}

#[test]
fn numeric_curvature_converges_as_truncation_shrinks() {
    let Surface::R3(w) = instantiate_default("catenoid").unwrap() else { unreachable!() };
    let errs: Vec<f64> = [(10.0, 0.1), (100.0, 0.01), (1000.0, 0.001)]
        .iter()
        .map(|&(r, e)| (total_curvature_numeric(&w, r, e, (800, 400)).unwrap() + 4.0).abs())
        .collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "errors {errs:?}");
}
