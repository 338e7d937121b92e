//! Simultaneous (Aberth–Ehrlich) root finding, root clustering and exact
//! recognition of Gaussian-rational roots.

use num_complex::Complex64;
use rug::{Complex, Float, Rational};

use super::bigcomplex::{BigComplex, Precision};
use super::exact::ExactComplex;
use super::poly::Polynomial;
use super::sphere::ComplexValue;
use crate::error::{Error, Result};

/// Roots returned by [`aberth`] together with whether the corrections fell
/// below the requested threshold.
#[derive(Clone, Debug)]
pub struct AberthRoots {
    pub roots: Vec<Complex>,
    pub converged: bool,
}

fn eval_with_derivative(coeffs: &[Complex], z: &Complex, bits: u32) -> (Complex, Complex) {
    let mut p = Complex::new(bits);
    let mut dp = Complex::new(bits);
    for a in coeffs.iter().rev() {
        dp *= z;
        dp += &p;
        p *= z;
        p += a;
    }
    (p, dp)
}

fn eval_with_derivative_f64(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    // Fujiwara-type bound on root moduli
    let mut r: f64 = 0.0;
    for (k, a) in coeffs.iter().enumerate().take(n) {
        let q = (a.norm() / lead).powf(1.0 / (n - k) as f64);
        r = r.max(q);
    }
    let r = if r.is_finite() && r > 0.0 { r } else { 1.0 };
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(r, t)
        })
        .collect()
}

fn aberth_f64(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) || coeffs[n].norm() == 0.0 {
        return None;
    }
    let mut z = initial_guesses(coeffs);
    for _ in 0..800 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval_with_derivative_f64(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += 1.0 / (z[k] - z[j]);
                }
            }
            let delta = ratio / (1.0 - ratio * s);
            if !delta.re.is_finite() || !delta.im.is_finite() {
                return None;
            }
            z[k] -= delta;
            worst = worst.max(delta.norm() / z[k].norm().max(1.0));
        }
        if worst < 1e-15 {
            break;
        }
    }
    z.iter().all(|w| w.re.is_finite() && w.im.is_finite()).then_some(z)
}

/// All roots of the polynomial with the given coefficients (ascending order,
/// nonzero leading coefficient) at `bits` of precision.
pub fn aberth(coeffs: &[Complex], bits: u32, max_iter: usize) -> Result<AberthRoots> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(AberthRoots { roots: vec![], converged: true });
    }
    let lead = &coeffs[n];
    if lead.real().is_zero() && lead.imag().is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if n == 1 {
        let r = Complex::with_val(bits, -Complex::with_val(bits, &coeffs[0] / lead));
        return Ok(AberthRoots { roots: vec![r], converged: true });
    }
    let c64: Vec<Complex64> = coeffs
        .iter()
        .map(|c| Complex64::new(c.real().to_f64(), c.imag().to_f64()))
        .collect();
    let start = aberth_f64(&c64).unwrap_or_else(|| initial_guesses(&c64));
    let mut z: Vec<Complex> = start
        .iter()
        .map(|w| Complex::with_val(bits, (w.re, w.im)))
        .collect();
    let threshold = Float::with_val(bits, 1) >> (bits.saturating_sub(16).max(8));
    let one = Complex::with_val(bits, 1);
    let mut converged = false;
    for _ in 0..max_iter {
        let mut all_small = true;
        for k in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, &z[k], bits);
            if p.real().is_zero() && p.imag().is_zero() {
                continue;
            }
            let mut s = Complex::new(bits);
            for j in 0..n {
                if j != k {
                    let d = Complex::with_val(bits, &z[k] - &z[j]);
                    if d.real().is_zero() && d.imag().is_zero() {
                        continue;
                    }
                    s += Complex::with_val(bits, &one / &d);
                }
            }
            let delta = if dp.real().is_zero() && dp.imag().is_zero() {
                // stationary point: nudge
                Complex::with_val(bits, (1e-6, 5e-7))
            } else {
                let ratio = Complex::with_val(bits, &p / &dp);
                let denom = Complex::with_val(bits, &one - Complex::with_val(bits, &ratio * &s));
                Complex::with_val(bits, &ratio / &denom)
            };
            if !delta.real().is_finite() || !delta.imag().is_finite() {
                return Err(Error::NoConvergence("non-finite Aberth correction".into()));
            }
            z[k] -= &delta;
            let size = Float::with_val(bits, z[k].abs_ref()).max(&Float::with_val(bits, 1));
            let rel = Float::with_val(bits, delta.abs_ref()) / size;
            if rel > threshold {
                all_small = false;
            }
        }
        if all_small {
            converged = true;
            break;
        }
    }
    Ok(AberthRoots { roots: z, converged })
}

/// Best rational approximation of `x` with denominator at most `max_den`.
fn rational_approx(x: &Rational, max_den: &rug::Integer) -> Rational {
    let (mut h0, mut h1) = (rug::Integer::from(0), rug::Integer::from(1));
    let (mut k0, mut k1) = (rug::Integer::from(1), rug::Integer::from(0));
    let mut r = x.clone();
    for _ in 0..200 {
        let a = r.clone().floor().numer().clone();
        let h2 = rug::Integer::from(&a * &h1) + &h0;
        let k2 = rug::Integer::from(&a * &k1) + &k0;
        if k2 > *max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = Rational::from(&r - &a);
        if frac.cmp0().is_eq() {
            break;
        }
        r = frac.recip();
    }
    if k1 == 0 {
        return Rational::new();
    }
    Rational::from((h1, k1))
}

/// Tries to identify a numeric root of the exact polynomial `poly` as a
/// Gaussian rational with small denominators; the candidate is verified exactly.
pub fn recognize_exact_root(poly: &Polynomial, z: &Complex) -> Option<ExactComplex> {
    let max_den = rug::Integer::from(10u64.pow(12));
    let re = z.real().to_rational()?;
    let im = z.imag().to_rational()?;
    let cand = ExactComplex::new(rational_approx(&re, &max_den), rational_approx(&im, &max_den));
    poly.eval(&cand).is_zero().then_some(cand)
}

fn newton_polish(poly: &Polynomial, z: &mut Complex, bits: u32) {
    let coeffs = poly.to_complex_coeffs(bits);
    for _ in 0..4 {
        let (p, dp) = eval_with_derivative(&coeffs, z, bits);
        if dp.real().is_zero() && dp.imag().is_zero() {
            return;
        }
        let step = Complex::with_val(bits, &p / &dp);
        *z -= step;
    }
}

/// Roots of a square-free exact polynomial. Exact `hints` that are roots are
/// split off exactly; linear factors give exact roots; every other root is
/// computed numerically at the working precision and then, when it is a
/// Gaussian rational with small denominators, replaced by the verified exact value.
pub fn squarefree_roots(
    poly: &Polynomial,
    prec: Precision,
    hints: &[ExactComplex],
) -> Result<Vec<ComplexValue>> {
    let mut q = poly.clone();
    let mut out = Vec::new();
    for h in hints {
        if q.degree().unwrap_or(0) == 0 {
            break;
        }
        if q.eval(h).is_zero() {
            q = q.exact_div(&Polynomial::linear_root(h))?;
            out.push(ComplexValue::Exact(h.clone()));
        }
    }
    match q.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(out),
        Some(1) => {
            let r = -(&q.coeff(0) / &q.coeff(1));
            out.push(ComplexValue::Exact(r));
            return Ok(out);
        }
        Some(_) => {}
    }
    let bits = prec.working_bits();
    let found = aberth(&q.to_complex_coeffs(bits), bits, 400)?;
    for mut z in found.roots {
        newton_polish(&q, &mut z, bits);
        match recognize_exact_root(&q, &z) {
            Some(e) => out.push(ComplexValue::Exact(e)),
            None => out.push(ComplexValue::Numeric(BigComplex::new(z)?)),
        }
    }
    Ok(out)
}

/// Groups points whose mutual relative distance is at most `tol` (single
/// linkage). Returns `(representative, count)` with the representative being
/// the cluster mean.
pub fn cluster(points: &[Complex], tol: f64) -> Vec<(Complex, usize)> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let bits = points[i].prec().0;
            let d = Complex::with_val(bits, &points[i] - &points[j]);
            let d = Float::with_val(bits, d.abs_ref()).to_f64();
            let s = Float::with_val(bits, points[i].abs_ref()).to_f64().max(1.0);
            if d <= tol * s {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, v)) => v.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    groups
        .into_iter()
        .map(|(_, idx)| {
            let bits = points[idx[0]].prec().0;
            let mut sum = Complex::new(bits);
            for &i in &idx {
                sum += &points[i];
            }
            sum /= idx.len() as u32;
            (sum, idx.len())
        })
        .collect()
}
