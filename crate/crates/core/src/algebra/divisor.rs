//! Finite formal sums of points of the sphere.

use std::cmp::Ordering;
use std::fmt;

use super::sphere::{ComplexValue, SpherePoint};

/// Relative tolerance used to identify numeric points.
const POINT_TOL: f64 = 1e-24;

/// A divisor `Σ n_p·p`; points are distinct and every order is nonzero.
#[derive(Clone, Default)]
pub struct Divisor {
    terms: Vec<(SpherePoint, i64)>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (SpherePoint, i64)>>(terms: I) -> Self {
        let mut d = Self::new();
        for (p, n) in terms {
            d.add_point(p, n);
        }
        d
    }

    pub fn terms(&self) -> &[(SpherePoint, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(_, n)| n).sum()
    }

    pub fn order_at(&self, p: &SpherePoint) -> i64 {
        self.terms
            .iter()
            .find(|(q, _)| q.approx_eq(p, POINT_TOL))
            .map_or(0, |(_, n)| *n)
    }

    pub fn add_point(&mut self, p: SpherePoint, n: i64) {
        if n == 0 {
            return;
        }
        if let Some(i) = self.terms.iter().position(|(q, _)| q.approx_eq(&p, POINT_TOL)) {
            self.terms[i].1 += n;
            if self.terms[i].1 == 0 {
                self.terms.remove(i);
            }
        } else {
            self.terms.push((p, n));
        }
        self.terms.sort_by(|a, b| point_cmp(&a.0, &b.0));
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut d = self.clone();
        for (p, n) in &rhs.terms {
            d.add_point(p.clone(), *n);
        }
        d
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::new();
        }
        Self { terms: self.terms.iter().map(|(p, n)| (p.clone(), n * k)).collect() }
    }

    /// Keeps only the points accepted by `keep`.
    pub fn restrict<F: Fn(&SpherePoint) -> bool>(&self, keep: F) -> Self {
        Self { terms: self.terms.iter().filter(|(p, _)| keep(p)).cloned().collect() }
    }

    /// Positive part.
    pub fn zeros(&self) -> Self {
        Self { terms: self.terms.iter().filter(|(_, n)| *n > 0).cloned().collect() }
    }

    /// Negated negative part, so poles appear with positive orders.
    pub fn poles(&self) -> Self {
        Self { terms: self.terms.iter().filter(|(_, n)| *n < 0).map(|(p, n)| (p.clone(), -n)).collect() }
    }
}

impl PartialEq for Divisor {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

/// Deterministic ordering: exact points by (re, im), then numeric points by
/// their approximate coordinates, then `∞`.
pub fn point_cmp(a: &SpherePoint, b: &SpherePoint) -> Ordering {
    use ComplexValue::*;
    match (a, b) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => Ordering::Equal,
        (SpherePoint::Infinity, _) => Ordering::Greater,
        (_, SpherePoint::Infinity) => Ordering::Less,
        (SpherePoint::Finite(x), SpherePoint::Finite(y)) => match (x, y) {
            (Exact(p), Exact(q)) => p.re().cmp(q.re()).then_with(|| p.im().cmp(q.im())),
            (Exact(_), Numeric(_)) => Ordering::Less,
            (Numeric(_), Exact(_)) => Ordering::Greater,
            (Numeric(p), Numeric(q)) => {
                let (pr, pi) = (p.re_f64(), p.im_f64());
                let (qr, qi) = (q.re_f64(), q.im_f64());
                pr.total_cmp(&qr).then_with(|| pi.total_cmp(&qi))
            }
        },
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, n)| format!("{n}·[{p}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_equality() {
        let a = Divisor::from_terms([(SpherePoint::from_int(0), 2), (SpherePoint::Infinity, -1)]);
        let b = Divisor::from_terms([(SpherePoint::Infinity, 1), (SpherePoint::from_int(1), 3)]);
        let s = a.add(&b);
        assert_eq!(s, Divisor::from_terms([(SpherePoint::from_int(1), 3), (SpherePoint::from_int(0), 2)]));
        assert_eq!(s.degree(), 5);
        assert_eq!(a.scale(2).order_at(&SpherePoint::from_int(0)), 4);
        assert!(a.sub(&a).is_zero());
        let finite = a.restrict(|p| !p.is_infinity());
        assert_eq!(finite.terms().len(), 1);
        assert_eq!(a.poles().order_at(&SpherePoint::Infinity), 1);
    }
}
