//! Deterministic JSON reports. Rationals are emitted as exact `"p/q"` strings
//! and object keys are sorted.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::algebra::{CriticalPoint, Divisor, Precision, Residue, SpherePoint};
use crate::audit::{AuditReport, BoundCheck};
use crate::catalog::{Family, Space, Surface};
use crate::error::Result;
use crate::mesh::Mesh;
use crate::r3::{flat_points, gauss_profile, total_curvature, total_curvature_numeric};
use crate::r4::{decomposability_check, flat_points4, gauss_profiles4, total_curvature4, total_curvature4_numeric};
use crate::ramification::{RamificationProfile, RamifiedValue};
use crate::wdata::point_json;
use crate::weierstrass::{PeriodReport, VerificationReport};

pub const SCHEMA_VERSION: u64 = 1;

/// Log-polar cells (radial, angular) of the total curvature quadrature.
pub const DEFAULT_QUADRATURE_GRID: (usize, usize) = (800, 400);

fn c64(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn divisor_json(d: &Divisor) -> Value {
    Value::Array(d.terms().iter().map(|(p, n)| json!({"point": point_json(p), "order": n})).collect())
}

/// Points with multiplicities.
pub fn multipoints(v: &[(SpherePoint, usize)]) -> Value {
    Value::Array(v.iter().map(|(p, m)| json!({"point": point_json(p), "multiplicity": m})).collect())
}

fn residue_json(r: &Residue) -> Value {
    match r {
        Residue::Exact(q) => json!({"exact": q.to_string()}),
        Residue::Numeric(b) => json!({"approx": c64(b.to_c64())}),
    }
}

fn periods_json(p: &PeriodReport) -> Value {
    let entries: Vec<Value> = p
        .entries
        .iter()
        .map(|e| {
            let values: Vec<Value> = e
                .values
                .iter()
                .map(|v| json!({"residue": residue_json(&v.residue), "integral": c64(v.integral), "real_part_zero": v.real_part_zero}))
                .collect();
            json!({"puncture": point_json(&e.puncture), "components": values, "contour_deviation": e.contour_deviation})
        })
        .collect();
    json!({
        "entries": entries,
        "real_max": p.real_max,
        "exact_mode": p.exact_mode,
        "tol": p.tol,
        "residue_sums_vanish": p.residue_sums_vanish,
        "passed": p.passed,
    })
}

pub fn space_name(s: Space) -> &'static str {
    match s {
        Space::R3 => "R3",
        Space::R4 => "R4",
    }
}

pub fn verification_json(space: Space, r: &VerificationReport) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "verification",
        "space": space_name(space),
        "conformal": r.conformal,
        "regularity": {"regular": r.regularity.regular, "mismatch": divisor_json(&r.regularity.mismatch)},
        "periods": periods_json(&r.periods),
        "ends": r.ends,
        "complete": r.complete,
        "overall": r.overall,
    })
}

fn ramified_json(v: &RamifiedValue) -> Value {
    json!({
        "value": point_json(&v.value),
        "order": v.order.to_string(),
        "weight": v.weight().to_string(),
        "preimages": multipoints(&v.preimages),
        "preimages_at_punctures": multipoints(&v.preimages_at_punctures),
    })
}

fn critical_json(c: &CriticalPoint) -> Value {
    json!({"point": point_json(&c.point), "multiplicity": c.multiplicity, "value": point_json(&c.value)})
}

pub fn profile_json(p: &RamificationProfile) -> Value {
    json!({
        "d": p.d,
        "omitted": p.omitted,
        "nu": p.nu.to_string(),
        "ramified": p.ramified.iter().map(ramified_json).collect::<Vec<_>>(),
        "n0": p.n0,
        "nr": p.nr,
        "nf": p.nf,
        "l": p.l,
        "candidates": p.candidates.iter().map(point_json).collect::<Vec<_>>(),
        "critical_points": p.critical_points.iter().map(critical_json).collect::<Vec<_>>(),
    })
}

fn check_json(c: &BoundCheck) -> Value {
    json!({
        "name": c.name,
        "lhs": c.lhs.to_string(),
        "relation": c.relation,
        "rhs": c.rhs.to_string(),
        "holds": c.holds,
        "attained": c.attained,
        "slack": c.slack.to_string(),
    })
}

pub fn audit_json(r: &AuditReport) -> Value {
    let maps: Vec<Value> = r
        .maps
        .iter()
        .map(|m| json!({"name": m.name, "degree": m.degree, "profile": m.profile.as_ref().map(profile_json)}))
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "audit",
        "space": space_name(r.space),
        "genus": r.genus,
        "k": r.k,
        "maps": maps,
        "case": r.case,
        "checks": r.checks.iter().map(check_json).collect::<Vec<_>>(),
        "principal": r.principal.map(|i| r.checks[i].name.clone()),
        "sharp": r.sharp,
        "contradiction": r.contradiction,
    })
}

/// Exact total curvature `multiplier·π` with an optional quadrature value,
/// the latter given as a multiple of `π`.
pub fn curvature_json(space: Space, multiplier: i64, numeric_pi: Option<f64>, flat: &[(SpherePoint, usize)]) -> Value {
    let pi = std::f64::consts::PI;
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "curvature",
        "space": space_name(space),
        "total_curvature_pi_multiple": multiplier,
        "total_curvature": multiplier as f64 * pi,
        "numeric_pi_multiple": numeric_pi,
        "numeric": numeric_pi.map(|n| n * pi),
        "numeric_relative_error": numeric_pi.map(|n| ((n - multiplier as f64) / multiplier as f64).abs()),
        "flat_points": multipoints(flat),
    })
}

/// Profile of each Gauss map, flat points and, in R⁴, decomposability.
pub fn analysis_json(s: &Surface, prec: Precision) -> Result<Value> {
    let mut v = match s {
        Surface::R3(w) => json!({
            "maps": [{"name": "g", "profile": profile_json(&gauss_profile(w, prec)?)}],
            "flat_points": multipoints(&flat_points(w, prec)?),
        }),
        Surface::R4(w) => {
            let [p1, p2] = gauss_profiles4(w, prec)?;
            json!({
                "maps": [
                    {"name": "g1", "profile": p1.as_ref().map(profile_json)},
                    {"name": "g2", "profile": p2.as_ref().map(profile_json)},
                ],
                "flat_points": multipoints(&flat_points4(w, prec)?),
                "decomposability": decomposability_check(w),
            })
        }
    };
    v["schema"] = json!(SCHEMA_VERSION);
    v["kind"] = json!("analysis");
    v["space"] = json!(space_name(s.space()));
    Ok(v)
}

/// Exact and quadrature total curvature over `eps ≤ |z − pⱼ|`, `|z| ≤ r_out`.
pub fn curvature_report(
    s: &Surface,
    prec: Precision,
    r_out: f64,
    eps: f64,
    grid: (usize, usize),
    verified: bool,
) -> Result<Value> {
    let (mult, numeric, flat) = match s {
        Surface::R3(w) => (total_curvature(w)?, total_curvature_numeric(w, r_out, eps, grid)?, flat_points(w, prec)?),
        Surface::R4(w) => (total_curvature4(w), total_curvature4_numeric(w, r_out, eps, grid), flat_points4(w, prec)?),
    };
    let mut v = curvature_json(s.space(), mult, Some(numeric), &flat);
    v["verified"] = json!(verified);
    Ok(v)
}

pub fn families_json(families: &[Family]) -> Value {
    json!({"schema": SCHEMA_VERSION, "kind": "families", "families": families})
}

pub fn mesh_summary_json(m: &Mesh) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "mesh",
        "dim": m.dim,
        "vertices": m.positions.len(),
        "faces": m.faces.len(),
        "base_vertex": m.base_vertex,
        "base_point": c64(m.base_point),
        "closure_max": m.closure_max,
        "seam_max": m.seam_max,
        "positions": m.positions,
        "faces_list": m.faces,
        "curvature": m.curvature,
    })
}

pub fn to_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}
