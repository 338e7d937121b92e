//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach standard output; the process
//! exits nonzero when any criterion fails.

mod common;

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};

use minsurf::algebra::{critical_points, fiber, ExactComplex, Polynomial, Precision, RationalMap, SpherePoint};
use minsurf::audit::{audit, audit_r3_unchecked, AuditCase, AuditReport};
use minsurf::catalog::{instantiate, list_families, ParamValue, Params, Surface};
use minsurf::mesh::{immerse_surface, MeshOptions, MeshSpec};
use minsurf::r3::{self, WData3};
use minsurf::r4::{self, Decomposability, WData4};
use minsurf::ramification::{ramification_profile, PuncturedSphere, RamificationOrder};
use minsurf::weierstrass::{PeriodReport, VerifyOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

/// Absolute tolerance on period integrals and point locations.
const PERIOD_TOL: f64 = 1e-10;
/// Relative tolerance of the numeric total curvature.
const CURVATURE_REL_TOL: f64 = 1e-3;
/// Outer radius and puncture exclusion radius of the curvature quadrature.
const CURVATURE_R: f64 = 100.0;
const CURVATURE_EPS: f64 = 0.01;
/// Log-polar quadrature cells (radial x angular).
const CURVATURE_GRID: (usize, usize) = (800, 400);
/// Largest admissible real part of a mesh cell loop integral.
const CLOSURE_TOL: f64 = 1e-8;
/// Random maps for the Riemann–Hurwitz check and random values per map.
const RH_MAPS: usize = 200;
const RH_MAX_DEGREE: usize = 6;
const RH_VALUES: usize = 100;
/// Random maps compared against the oracle.
const ORACLE_MAPS: usize = 50;
const ORACLE_MAX_DEGREE: usize = 4;
const SEED: u64 = 0x6d69_6e73_7572_66;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(z: num_complex::Complex64, re: f64, im: f64) -> bool {
    (z.re - re).abs() < PERIOD_TOL && (z.im - im).abs() < PERIOD_TOL
}

fn prec() -> Precision {
    Precision::default()
}

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn surface(name: &str, params: &[(&str, &str)]) -> Surface {
    let p: Params = params
        .iter()
        .map(|(k, v)| (k.to_string(), ParamValue::exact(v.parse().expect("exact literal"))))
        .collect();
    instantiate(name, &p).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn r3_of(s: Surface) -> WData3 {
    match s {
        Surface::R3(w) => w,
        Surface::R4(_) => panic!("expected R3 data"),
    }
}

fn r4_of(s: Surface) -> WData4 {
    match s {
        Surface::R4(w) => w,
        Surface::R3(_) => panic!("expected R4 data"),
    }
}

fn q(n: i64, d: u64) -> Rational {
    Rational::from((n, d))
}

fn ipt(re: i64, im: i64) -> SpherePoint {
    SpherePoint::exact(ExactComplex::from_gaussian(re, im))
}

/// Period integrals of every component at one puncture.
fn periods_at(r: &PeriodReport, p: &SpherePoint) -> Vec<num_complex::Complex64> {
    r.entries
        .iter()
        .find(|e| &e.puncture == p)
        .unwrap_or_else(|| panic!("no period entry at {p}"))
        .values
        .iter()
        .map(|v| v.integral)
        .collect()
}

fn principal(r: &AuditReport) -> Option<&minsurf::audit::BoundCheck> {
    r.principal.map(|i| &r.checks[i])
}

fn c1_single_map_sharpness() -> Outcome {
    for d in 1..=6u32 {
        let f = RationalMap::polynomial(Polynomial::monomial(ExactComplex::one(), d as usize));
        let p = ramification_profile(&f, &PuncturedSphere::plane(), prec()).map_err(|e| e.to_string())?;
        let want = Rational::from(2) - q(1, d as u64);
        ensure(p.omitted == 1 && p.nu == want, || format!("z^{d}: D = {}, nu = {}, want 1, {want}", p.omitted, p.nu))?;
    }
    Ok(())
}

fn c2_riemann_hurwitz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 0..RH_MAPS {
        let f = common::random_map(&mut rng, RH_MAX_DEGREE);
        let d = f.degree();
        let crit = critical_points(&f, prec(), &[], &[]).map_err(|e| format!("map {n} ({f}): {e}"))?;
        let branching: usize = crit.iter().map(|c| c.multiplicity - 1).sum();
        ensure(branching == 2 * d - 2, || format!("map {n} ({f}): branching {branching}, d = {d}"))?;
        for _ in 0..RH_VALUES {
            let a = SpherePoint::exact(common::gaussian(&mut rng, 5));
            let fib = fiber(&f, &a, prec(), &[]).map_err(|e| format!("map {n} ({f}) over {a}: {e}"))?;
            let total: usize = fib.iter().map(|x| x.1).sum();
            ensure(total == d, || format!("map {n} ({f}) over {a}: fiber sum {total}, d = {d}"))?;
        }
        for c in &crit {
            let fib = fiber(&f, &c.value, prec(), &[]).map_err(|e| format!("map {n} ({f}) over {}: {e}", c.value))?;
            let total: usize = fib.iter().map(|x| x.1).sum();
            ensure(total == d, || format!("map {n} ({f}) over critical value {}: fiber sum {total}", c.value))?;
        }
    }
    Ok(())
}

fn c3_new_surface() -> Outcome {
    let w = r3_of(surface("new-surface", &[("a", "0"), ("b", "2")]));
    let v = r3::verify(&w, &opts()).map_err(|e| e.to_string())?;
    ensure(v.overall, || format!("verification failed: {v:?}"))?;
    let p = r3::gauss_profile(&w, prec()).map_err(|e| e.to_string())?;
    ensure(p.nu == q(5, 2), || format!("nu = {}", p.nu))?;
    let c = r3::total_curvature(&w).map_err(|e| e.to_string())?;
    ensure(c == -16, || format!("C = {c}π"))?;
    let per = periods_at(&v.periods, &ipt(0, 1));
    ensure(close(per[1], 0.0, -6.0 * PI), || format!("phi2 period at i: {}", per[1]))?;
    ensure(close(per[2], 0.0, 2.0 * PI * (3.0f64 / 5.0).sqrt()), || format!("phi3 period at i: {}", per[2]))?;
    ensure(v.periods.exact_mode, || "periods not exact in symbol mode".into())?;
    let flat = r3::flat_points(&w, prec()).map_err(|e| e.to_string())?;
    let s2 = 2f64.sqrt();
    let hit = |im: f64| {
        flat.iter().any(|(p, m)| *m == 1 && p.finite().is_some_and(|z| close(z.to_c64(), 0.0, im)))
    };
    ensure(flat.len() == 2 && hit(s2) && hit(-s2), || format!("flat points {flat:?}"))?;
    let a = audit(&Surface::R3(w), &opts()).map_err(|e| e.to_string())?;
    let b = principal(&a).ok_or("no principal bound")?;
    ensure(a.sharp && b.rhs == q(5, 2) && !a.contradiction, || format!("audit {a:?}"))
}

fn c4_ms1994() -> Outcome {
    let w = r3_of(surface("ms1994", &[("a", "-1"), ("t", "2")]));
    let p = r3::gauss_profile(&w, prec()).map_err(|e| e.to_string())?;
    ensure(p.nu == q(5, 2), || format!("nu = {}", p.nu))?;
    let c = r3::total_curvature(&w).map_err(|e| e.to_string())?;
    ensure(c == -8, || format!("C = {c}π"))?;
    let a = audit(&Surface::R3(w), &opts()).map_err(|e| e.to_string())?;
    let b = principal(&a).ok_or("no principal bound")?;
    ensure(a.sharp && b.rhs == q(5, 2) && !a.contradiction, || format!("audit {a:?}"))
}

fn c5_catenoid() -> Outcome {
    let s = surface("catenoid", &[]);
    let w = r3_of(s.clone());
    let p = r3::gauss_profile(&w, prec()).map_err(|e| e.to_string())?;
    ensure(p.omitted == 2 && p.nu == 2, || format!("D = {}, nu = {}", p.omitted, p.nu))?;
    let c = r3::total_curvature(&w).map_err(|e| e.to_string())?;
    ensure(c == -4, || format!("C = {c}π"))?;
    let num = r3::total_curvature_numeric(&w, CURVATURE_R, CURVATURE_EPS, CURVATURE_GRID).map_err(|e| e.to_string())?;
    let rel = ((num - c as f64) / c as f64).abs();
    ensure(rel < CURVATURE_REL_TOL, || format!("numeric C = {num}π, relative error {rel:e}"))?;
    let spec = MeshSpec::default_for(w.domain(), (64, 64), CURVATURE_EPS, CURVATURE_R);
    let mesh = immerse_surface(&s, &MeshOptions::new(spec), &opts()).map_err(|e| e.to_string())?;
    ensure(mesh.closure_max < CLOSURE_TOL, || format!("closure {:e}", mesh.closure_max))
}

fn c6_hkw() -> Outcome {
    let w = r4_of(surface("hkw-r4", &[("a", "1"), ("b", "3")]));
    let v = r4::verify4(&w, &opts()).map_err(|e| e.to_string())?;
    ensure(v.overall, || "verification failed".into())?;
    let per = periods_at(&v.periods, &ipt(0, 1));
    let want = [(0.0, 0.0), (0.0, -2.0 * PI), (0.0, 0.0), (0.0, 2.0 * PI)];
    for (k, (z, (re, im))) in per.iter().zip(want).enumerate() {
        ensure(close(*z, re, im), || format!("phi{} period at i: {z}", k + 1))?;
    }
    let [p1, p2] = r4::gauss_profiles4(&w, prec()).map_err(|e| e.to_string())?;
    let (p1, p2) = (p1.ok_or("g1 constant")?, p2.ok_or("g2 constant")?);
    ensure(p1.nu == q(5, 2) && p2.nu == q(5, 2), || format!("nu = {}, {}", p1.nu, p2.nu))?;
    let c = r4::total_curvature4(&w);
    ensure(c == -8, || format!("C = {c}π"))?;
    let a = audit(&Surface::R4(w), &opts()).map_err(|e| e.to_string())?;
    let b = principal(&a).ok_or("no principal bound")?;
    ensure(
        a.case == AuditCase::ReciprocalSum && a.sharp && b.lhs == 4 && b.rhs == 4 && !a.contradiction,
        || format!("audit {a:?}"),
    )
}

fn c7_lagrangian_catenoid() -> Outcome {
    let w = r4_of(surface("lagrangian-catenoid", &[("c", "0")]));
    let [p1, p2] = r4::gauss_profiles4(&w, prec()).map_err(|e| e.to_string())?;
    let p1 = p1.ok_or("g1 constant")?;
    ensure(p2.is_none(), || "g2 not constant".into())?;
    ensure(p1.omitted == 2 && p1.nu == 2, || format!("D1 = {}, nu1 = {}", p1.omitted, p1.nu))?;
    let c = r4::total_curvature4(&w);
    ensure(c == -4, || format!("C = {c}π"))?;
    let a = audit(&Surface::R4(w), &opts()).map_err(|e| e.to_string())?;
    let b = principal(&a).ok_or("no principal bound")?;
    ensure(
        a.case == AuditCase::ConstantPartner && a.sharp && b.rhs == 2 && !a.contradiction,
        || format!("audit {a:?}"),
    )
}

fn c8_omit_two() -> Outcome {
    let w = r4_of(surface("omit2-r4", &[("a", "2"), ("b", "3"), ("l", "2"), ("m", "2"), ("n", "2")]));
    let v = r4::verify4(&w, &opts()).map_err(|e| e.to_string())?;
    ensure(v.overall, || "verification failed".into())?;
    let per = periods_at(&v.periods, &ipt(0, 0));
    ensure(per.len() == 4 && per.iter().all(|z| close(*z, 0.0, 0.0)), || format!("periods at 0: {per:?}"))?;
    let [p1, p2] = r4::gauss_profiles4(&w, prec()).map_err(|e| e.to_string())?;
    let (p1, p2) = (p1.ok_or("g1 constant")?, p2.ok_or("g2 constant")?);
    ensure(p1.omitted == 2 && p2.omitted == 2, || format!("D = {}, {}", p1.omitted, p2.omitted))?;
    let c = r4::total_curvature4(&w);
    ensure(c == -8, || format!("C = {c}π"))
}

fn c9_conjugate_pair() -> Outcome {
    let w = r4_of(surface("conjugate-pair-r4", &[("a", "1")]));
    let v = r4::verify4(&w, &opts()).map_err(|e| e.to_string())?;
    ensure(v.overall, || "verification failed".into())?;
    let per = periods_at(&v.periods, &ipt(0, 0));
    ensure(close(per[2], 0.0, 2.0 * PI) && close(per[3], 0.0, 0.0), || format!("periods at 0: {per:?}"))?;
    let c = r4::total_curvature4(&w);
    ensure(c == -4, || format!("C = {c}π"))?;
    let dec = r4::decomposability_check(&w);
    ensure(matches!(dec, Decomposability::Phi4Zero | Decomposability::Both), || format!("decomposability {dec:?}"))
}

fn c10_voss_negative() -> Outcome {
    let w = r3_of(surface("voss", &[]));
    let r = r3::period_check(&w, &opts()).map_err(|e| e.to_string())?;
    ensure(!r.passed, || "period check passed".into())?;
    let per = periods_at(&r, &ipt(0, 0));
    let m = per.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
    ensure((m - PI / 2.0).abs() < PERIOD_TOL, || format!("largest real period at 0: {m}"))
}

fn c11_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x11);
    let (mut with_omitted, mut with_finite) = (0, 0);
    for n in 0..ORACLE_MAPS {
        let d = rng.gen_range(1..=ORACLE_MAX_DEGREE);
        let m = common::known_critical_map(&mut rng, d);
        let sigma = common::random_punctures(&mut rng, &m);
        let o = common::oracle_profile(&m.f, &sigma, &m.critical)
            .ok_or_else(|| format!("map {n} ({}): critical list fails the certificate", m.f))?;
        let p = ramification_profile(&m.f, &sigma, prec()).map_err(|e| format!("map {n} ({}): {e}", m.f))?;
        let mismatch = || format!("map {n} ({}) on {sigma:?}: library D={} nu={}, oracle {o:?}", m.f, p.omitted, p.nu);
        ensure(p.d == o.d && p.omitted == o.omitted && p.nu == o.nu, mismatch)?;
        ensure(p.ramified.len() == o.ramified.len(), mismatch)?;
        for (value, order) in &o.ramified {
            let want = match order {
                None => RamificationOrder::Infinite,
                Some(k) => RamificationOrder::Finite(*k),
            };
            ensure(p.ramified.iter().any(|r| r.order == want && r.value.approx_eq(value, PERIOD_TOL)), mismatch)?;
        }
        with_omitted += usize::from(o.omitted > 0);
        with_finite += usize::from(o.ramified.iter().any(|r| r.1.is_some()));
    }
    println!("    {ORACLE_MAPS} maps: {with_omitted} with omitted values, {with_finite} with finite total ramification");
    Ok(())
}

/// Literal sharpness table: bounds attained exactly for the examples of
/// criteria 3, 4, 6 and 7, strict elsewhere.
const EXPECTED_SHARP: [(&str, bool); 9] = [
    ("catenoid", false),
    ("enneper", false),
    ("voss", false),
    ("ms1994", true),
    ("new-surface", true),
    ("lagrangian-catenoid", true),
    ("hkw-r4", true),
    ("omit2-r4", false),
    ("conjugate-pair-r4", false),
];

fn c12_bound_battery() -> Outcome {
    let mut problems = Vec::new();
    ensure(list_families().len() == EXPECTED_SHARP.len(), || "catalog size".into())?;
    for (name, want) in EXPECTED_SHARP {
        let s = surface(name, &[]);
        match audit(&s, &opts()) {
            Ok(a) => {
                if a.contradiction {
                    let failed: Vec<&str> = a.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
                    problems.push(format!("{name}: failing inequalities {failed:?}"));
                }
                if a.sharp != want {
                    let b = principal(&a).map(|b| format!("{} {} {}", b.lhs, b.relation, b.rhs)).unwrap_or_default();
                    problems.push(format!("{name}: sharp = {}, expected {want} (principal {b})", a.sharp));
                }
            }
            // Bounds apply to verified surfaces only; report the unverified
            // evaluation for context.
            Err(minsurf::Error::NotVerified(why)) if name == "voss" => {
                let Surface::R3(w) = &s else { unreachable!() };
                let u = audit_r3_unchecked(w, prec()).map_err(|e| e.to_string())?;
                let failed: Vec<&str> = u.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
                println!("    voss: not verified ({why}); unverified data violates {failed:?}");
            }
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    ensure(problems.is_empty(), || problems.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("1 single-map sharpness z^d", c1_single_map_sharpness),
        ("2 Riemann-Hurwitz and fiber sums", c2_riemann_hurwitz),
        ("3 new surface (0,2)", c3_new_surface),
        ("4 MS1994 (-1,2)", c4_ms1994),
        ("5 catenoid", c5_catenoid),
        ("6 HKW R4 (1,3)", c6_hkw),
        ("7 Lagrangian catenoid", c7_lagrangian_catenoid),
        ("8 two omitted values (2,3,2,2,2)", c8_omit_two),
        ("9 conjugate pair a=1", c9_conjugate_pair),
        ("10 Voss periods", c10_voss_negative),
        ("11 oracle equivalence", c11_oracle),
        ("12 bound battery", c12_bound_battery),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, f) in criteria {
        let start = std::time::Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
