//! Exact evaluation of the ramification bounds on verified genus-zero surfaces.

use std::fmt;

use rug::Rational;
use serde::Serialize;

use crate::algebra::Precision;
use crate::catalog::{Space, Surface};
use crate::error::{Error, Result};
use crate::r3::{gauss_profile, verify, WData3};
use crate::r4::{gauss_profiles4, verify4, WData4};
use crate::ramification::{genus0_bound, refined_bound, single_bound, BoundSpace, Genus0Bound, RamificationProfile};
use crate::weierstrass::{VerificationReport, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        })
    }
}

/// One inequality `lhs (relation) rhs`, evaluated exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
    pub holds: bool,
    /// Equality attained (never for strict relations that hold).
    pub attained: bool,
    /// Distance to the bound in the direction of the inequality.
    pub slack: Rational,
}

impl BoundCheck {
    pub fn new(name: impl Into<String>, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let holds = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        };
        let slack = match relation {
            Relation::Le | Relation::Lt => Rational::from(&rhs - &lhs),
            Relation::Ge | Relation::Gt => Rational::from(&lhs - &rhs),
        };
        Self { name: name.into(), attained: lhs == rhs, lhs, relation, rhs, holds, slack }
    }
}

/// Which family of bounds applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditCase {
    /// One Gauss map in R³.
    Single,
    /// Both R⁴ maps nonconstant with `ν₁, ν₂ > 2`: reciprocal-sum bound.
    ReciprocalSum,
    /// One R⁴ map constant: single-map bound for its partner.
    ConstantPartner,
    /// Both R⁴ maps nonconstant but some `νᵢ ≤ 2`: no reciprocal bound applies.
    Vacuous,
}

#[derive(Clone, Debug)]
pub struct MapAudit {
    pub name: &'static str,
    pub degree: usize,
    pub profile: Option<RamificationProfile>,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub space: Space,
    pub genus: usize,
    pub k: usize,
    pub maps: Vec<MapAudit>,
    pub case: AuditCase,
    pub checks: Vec<BoundCheck>,
    /// Index of the main total-weight bound of the applicable case.
    pub principal: Option<usize>,
    /// The principal bound is attained.
    pub sharp: bool,
    /// Some audited inequality fails on a verified surface.
    pub contradiction: bool,
}

impl AuditReport {
    fn finish(
        space: Space,
        k: usize,
        maps: Vec<MapAudit>,
        case: AuditCase,
        checks: Vec<BoundCheck>,
        principal: Option<usize>,
    ) -> Self {
        let sharp = principal.is_some_and(|i| checks[i].attained && checks[i].holds);
        let contradiction = checks.iter().any(|c| !c.holds);
        Self { space, genus: 0, k, maps, case, checks, principal, sharp, contradiction }
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn require_verified(report: &VerificationReport) -> Result<()> {
    if report.overall {
        return Ok(());
    }
    let mut failed = Vec::new();
    if !report.conformal {
        failed.push("conformality");
    }
    if !report.regularity.regular {
        failed.push("regularity");
    }
    if !report.periods.passed {
        failed.push("periods");
    }
    if !report.complete {
        failed.push("completeness");
    }
    Err(Error::NotVerified(failed.join(", ")))
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

fn r3_checks(p: &RamificationProfile, k: usize) -> Result<(Vec<BoundCheck>, usize)> {
    let d = p.d;
    let nu = p.nu.clone();
    let omitted = int(p.omitted as i64);
    let checks = vec![
        BoundCheck::new("nu <= 2+(k-2)/d", nu.clone(), Relation::Le, single_bound(d, k)?),
        BoundCheck::new("nu < 3", nu.clone(), Relation::Lt, int(3)),
        BoundCheck::new("D <= nu", omitted.clone(), Relation::Le, nu),
        BoundCheck::new("D <= 2", omitted.clone(), Relation::Le, int(2)),
        BoundCheck::new("D <= 2+(k-2)/d-l/d", omitted, Relation::Le, refined_bound(d, k, p.l)?),
    ];
    Ok((checks, 0))
}

/// Audit of an R³ surface; the data must pass full verification.
pub fn audit_r3(w: &WData3, opts: &VerifyOptions) -> Result<AuditReport> {
    require_verified(&verify(w, opts)?)?;
    audit_r3_unchecked(w, opts.prec)
}

/// Bound evaluation without the verification gate.
pub fn audit_r3_unchecked(w: &WData3, prec: Precision) -> Result<AuditReport> {
    let k = w.domain().k();
    let p = gauss_profile(w, prec)?;
    let (checks, principal) = r3_checks(&p, k)?;
    let maps = vec![MapAudit { name: "g", degree: p.d, profile: Some(p) }];
    Ok(AuditReport::finish(Space::R3, k, maps, AuditCase::Single, checks, Some(principal)))
}

/// Audit of an R⁴ surface; the data must pass full verification.
pub fn audit_r4(w: &WData4, opts: &VerifyOptions) -> Result<AuditReport> {
    require_verified(&verify4(w, opts)?)?;
    audit_r4_unchecked(w, opts.prec)
}

pub fn audit_r4_unchecked(w: &WData4, prec: Precision) -> Result<AuditReport> {
    let k = w.domain().k();
    let (d1, d2) = w.degrees();
    let [p1, p2] = gauss_profiles4(w, prec)?;
    let mut checks = Vec::new();
    let (case, principal) = match (&p1, &p2) {
        (Some(a), Some(b)) => {
            checks.push(BoundCheck::new("D1 <= nu1", int(a.omitted as i64), Relation::Le, a.nu.clone()));
            checks.push(BoundCheck::new("D2 <= nu2", int(b.omitted as i64), Relation::Le, b.nu.clone()));
            let dmin = a.omitted.min(b.omitted) as i64;
            checks.push(BoundCheck::new("min(D1,D2) <= 2", int(dmin), Relation::Le, int(2)));
            let two = int(2);
            let reciprocal_sum = genus0_bound(k, BoundSpace::Pair { d1, d2 })?;
            match reciprocal_sum {
                Genus0Bound::Pair { reciprocal_sum: Some(rsum), .. } if a.nu > two && b.nu > two => {
                    let lhs = Rational::from(&a.nu - &two).recip() + Rational::from(&b.nu - &two).recip();
                    checks.push(BoundCheck::new("1/(nu1-2)+1/(nu2-2) >= R1+R2", lhs.clone(), Relation::Ge, rsum));
                    let principal = checks.len() - 1;
                    checks.push(BoundCheck::new("1/(nu1-2)+1/(nu2-2) > 2", lhs, Relation::Gt, two));
                    (AuditCase::ReciprocalSum, Some(principal))
                }
                _ => (AuditCase::Vacuous, None),
            }
        }
        (Some(p), None) | (None, Some(p)) => {
            let i = if p1.is_some() { 1 } else { 2 };
            let nu = p.nu.clone();
            let omitted = int(p.omitted as i64);
            checks.push(BoundCheck::new(format!("nu{i} <= 2+1/R{i}"), nu.clone(), Relation::Le, single_bound(p.d, k)?));
            checks.push(BoundCheck::new(format!("nu{i} < 3"), nu.clone(), Relation::Lt, int(3)));
            checks.push(BoundCheck::new(format!("D{i} <= nu{i}"), omitted.clone(), Relation::Le, nu));
            checks.push(BoundCheck::new(format!("D{i} <= 2"), omitted, Relation::Le, int(2)));
            (AuditCase::ConstantPartner, Some(0))
        }
        (None, None) => return Err(Error::ConstantMap),
    };
    let maps = vec![
        MapAudit { name: "g1", degree: d1, profile: p1 },
        MapAudit { name: "g2", degree: d2, profile: p2 },
    ];
    Ok(AuditReport::finish(Space::R4, k, maps, case, checks, principal))
}

pub fn audit(s: &Surface, opts: &VerifyOptions) -> Result<AuditReport> {
    match s {
        Surface::R3(w) => audit_r3(w, opts),
        Surface::R4(w) => audit_r4(w, opts),
    }
}
