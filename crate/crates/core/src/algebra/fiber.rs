//! Fibers `f⁻¹(a)` with multiplicities, and critical points of rational maps.

use rug::{Complex, Float};

use super::bigcomplex::{BigComplex, Precision};
use super::exact::ExactComplex;
use super::poly::Polynomial;
use super::rational::RationalMap;
use super::roots::{aberth, squarefree_roots};
use super::sphere::{ComplexValue, SpherePoint};
use crate::error::{Error, Result};

/// A point where `f` is not locally injective: `e ≥ 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint {
    pub point: SpherePoint,
    pub multiplicity: usize,
    pub value: SpherePoint,
}

/// Local degree `e_∞` of `f` at `∞`.
pub fn multiplicity_at_infinity(f: &RationalMap) -> Result<usize> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let d = f.degree();
    match f.value_at_infinity() {
        SpherePoint::Infinity => Ok(f.num().degree_or_zero() - f.den().degree_or_zero()),
        SpherePoint::Finite(ComplexValue::Exact(c)) => {
            let shifted = f.num().sub(&f.den().scale(&c));
            Ok(d - shifted.degree_or_zero())
        }
        SpherePoint::Finite(ComplexValue::Numeric(_)) => unreachable!("value at infinity is exact"),
    }
}

/// Exact fiber over an exact value or `∞`. Roots equal to one of the exact
/// `hints` are reported exactly.
fn exact_fiber(f: &RationalMap, a: &SpherePoint, prec: Precision, hints: &[ExactComplex]) -> Result<Vec<(SpherePoint, usize)>> {
    let d = f.degree();
    let shifted = f.shifted_numerator(a)?;
    let mut out = Vec::new();
    if !shifted.is_constant() {
        let (_, factors) = shifted.squarefree()?;
        for (m, q) in factors {
            for z in squarefree_roots(&q, prec, hints)? {
                out.push((SpherePoint::Finite(z), m));
            }
        }
    }
    let at_inf = d - shifted.degree_or_zero();
    if at_inf > 0 {
        out.push((SpherePoint::Infinity, at_inf));
    }
    Ok(out)
}

/// All solutions of `f = a` on the sphere with multiplicities summing to `d`.
///
/// Exact values are handled by exact square-free decomposition of
/// `num − a·den`. Numeric values take multiplicities from the critical points
/// of `f` (exact Wronskian factorization) and locate the remaining simple
/// roots by simultaneous iteration; each multiple root must be matched by a
/// tight group of numeric roots, otherwise the result is `ClusterAmbiguity`.
pub fn fiber(f: &RationalMap, a: &SpherePoint, prec: Precision, hints: &[ExactComplex]) -> Result<Vec<(SpherePoint, usize)>> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let out = match a {
        SpherePoint::Finite(ComplexValue::Numeric(v)) => numeric_fiber(f, v, prec, hints)?,
        _ => exact_fiber(f, a, prec, hints)?,
    };
    let total: usize = out.iter().map(|(_, m)| m).sum();
    if total != f.degree() {
        return Err(Error::ClusterAmbiguity(format!(
            "fiber over {a} has total multiplicity {total}, expected {}",
            f.degree()
        )));
    }
    Ok(out)
}

fn numeric_fiber(f: &RationalMap, a: &BigComplex, prec: Precision, hints: &[ExactComplex]) -> Result<Vec<(SpherePoint, usize)>> {
    let d = f.degree();
    let bits = prec.working_bits();
    let tol = prec.half_tolerance();
    let target = SpherePoint::numeric(a.clone());
    let crit = critical_points(f, prec, hints, &[])?;

    let e_inf = if f.value_at_infinity().approx_eq(&target, tol) { multiplicity_at_infinity(f)? } else { 0 };
    let multiple: Vec<&CriticalPoint> = crit
        .iter()
        .filter(|c| !c.point.is_infinity() && c.value.approx_eq(&target, tol))
        .collect();
    let used: usize = e_inf + multiple.iter().map(|c| c.multiplicity).sum::<usize>();
    if used > d {
        return Err(Error::ClusterAmbiguity(format!("critical multiplicities over {a} exceed the degree")));
    }
    let mut out: Vec<(SpherePoint, usize)> = multiple.iter().map(|c| (c.point.clone(), c.multiplicity)).collect();
    if e_inf > 0 {
        out.push((SpherePoint::Infinity, e_inf));
    }
    let simple = d - used;
    if simple == 0 {
        return Ok(out);
    }

    let av = Complex::with_val(bits, a.inner());
    let finite = d - e_inf;
    let mut coeffs: Vec<Complex> = (0..=finite)
        .map(|k| {
            let n = f.num().coeff(k).to_complex(bits);
            let m = f.den().coeff(k).to_complex(bits);
            Complex::with_val(bits, n - Complex::with_val(bits, &av * m))
        })
        .collect();
    coeffs.truncate(finite + 1);
    let mut roots = aberth(&coeffs, bits, 400)?.roots;

    for c in &multiple {
        let center = c.point.finite().expect("finite critical point").to_complex(bits);
        let scale = Float::with_val(53, center.abs_ref()).to_f64().max(1.0);
        let group_tol = 10f64.powf(-(prec.decimal_digits() as f64) / (2.0 * c.multiplicity as f64)) * scale;
        let mut dist: Vec<(f64, usize)> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (distance(r, &center), i))
            .collect();
        dist.sort_by(|x, y| x.0.total_cmp(&y.0));
        if dist.len() < c.multiplicity || dist[c.multiplicity - 1].0 > group_tol {
            return Err(Error::ClusterAmbiguity(format!(
                "no tight root group of size {} near {}",
                c.multiplicity, c.point
            )));
        }
        let mut take: Vec<usize> = dist[..c.multiplicity].iter().map(|x| x.1).collect();
        take.sort_unstable_by(|x, y| y.cmp(x));
        for i in take {
            roots.remove(i);
        }
    }
    for i in 0..roots.len() {
        let scale = Float::with_val(53, roots[i].abs_ref()).to_f64().max(1.0);
        for j in i + 1..roots.len() {
            if distance(&roots[i], &roots[j]) <= tol * scale {
                return Err(Error::ClusterAmbiguity(format!("unexpected multiple root over {a}")));
            }
        }
    }
    for r in roots {
        out.push((SpherePoint::numeric(BigComplex::new(Complex::with_val(prec.bits(), r))?), 1));
    }
    Ok(out)
}

fn distance(a: &Complex, b: &Complex) -> f64 {
    let bits = a.prec().0;
    let d = Complex::with_val(bits, a - b);
    Float::with_val(bits, d.abs_ref()).to_f64()
}

/// Critical points of `f` on the sphere with local degree `e ≥ 2` and exact
/// multiplicities from the square-free factorization of the Wronskian.
///
/// Critical values are exact whenever possible: factors sharing roots with
/// `den` or with `num − a·den` for an exact `a` in `exact_values` are split off
/// by gcd; a remaining factor `q` whose residue `num·den⁻¹ mod q` is constant
/// maps all of its roots to that constant. Other values are numeric.
pub fn critical_points(
    f: &RationalMap,
    prec: Precision,
    hints: &[ExactComplex],
    exact_values: &[SpherePoint],
) -> Result<Vec<CriticalPoint>> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let d = f.degree();
    let bits = prec.working_bits();
    let w = f.wronskian();
    let mut out = Vec::new();
    if !w.is_constant() {
        let (_, factors) = w.squarefree()?;
        for (m, q) in factors {
            for (piece, value) in split_by_value(f, &q, exact_values)? {
                for z in squarefree_roots(&piece, prec, hints)? {
                    let point = SpherePoint::Finite(z.clone());
                    let value = match (&value, &z) {
                        (Some(v), _) => v.clone(),
                        (None, ComplexValue::Exact(_)) => f.value_at_exact(&point)?,
                        (None, ComplexValue::Numeric(_)) => {
                            let zc = z.to_complex(bits);
                            let v = f.eval_complex(&zc).ok_or(Error::DivisionByZero)?;
                            SpherePoint::numeric(BigComplex::new(v)?)
                        }
                    };
                    out.push(CriticalPoint { point, multiplicity: m + 1, value });
                }
            }
        }
    }
    let e_inf = multiplicity_at_infinity(f)?;
    if e_inf >= 2 {
        out.push(CriticalPoint { point: SpherePoint::Infinity, multiplicity: e_inf, value: f.value_at_infinity() });
    }
    let branching: usize = out.iter().map(|c| c.multiplicity - 1).sum();
    if branching != 2 * d - 2 {
        return Err(Error::ClusterAmbiguity(format!(
            "total branching {branching} differs from 2d-2 = {}",
            2 * d - 2
        )));
    }
    Ok(out)
}

/// Splits a square-free factor of the Wronskian into pieces whose roots share
/// one exact value (`Some`) and a remainder with unknown values (`None`).
fn split_by_value(f: &RationalMap, q: &Polynomial, exact_values: &[SpherePoint]) -> Result<Vec<(Polynomial, Option<SpherePoint>)>> {
    let mut pieces = Vec::new();
    let mut rest = q.clone();
    let mut take = |rest: &mut Polynomial, other: &Polynomial, value: SpherePoint| -> Result<()> {
        if rest.is_constant() {
            return Ok(());
        }
        let g = rest.gcd(other);
        if !g.is_constant() {
            *rest = rest.exact_div(&g)?;
            pieces.push((g, Some(value)));
        }
        Ok(())
    };
    take(&mut rest, f.den(), SpherePoint::Infinity)?;
    for a in exact_values {
        if let SpherePoint::Finite(ComplexValue::Exact(c)) = a {
            let shifted = f.num().sub(&f.den().scale(c));
            if !shifted.is_zero() {
                take(&mut rest, &shifted, a.clone())?;
            }
        }
    }
    if !rest.is_constant() {
        let value = constant_residue(f, &rest)?.map(SpherePoint::exact);
        pieces.push((rest, value));
    }
    Ok(pieces)
}

/// `num·den⁻¹ mod q` when it reduces to a constant.
fn constant_residue(f: &RationalMap, q: &Polynomial) -> Result<Option<ExactComplex>> {
    let (g, s, _) = f.den().xgcd(q);
    if !g.is_constant() {
        return Ok(None);
    }
    let g_inv = g.coeff(0).inv()?;
    let (_, r) = f.num().mul(&s).scale(&g_inv).div_rem(q)?;
    Ok(if r.is_constant() { Some(r.coeff(0)) } else { None })
}
