//! Real algebraic numbers as (squarefree integer polynomial, isolating interval).
//!
//! Values are immutable. Operations that need tighter intervals refine private
//! copies by bisection, so two representations of the same number may carry
//! different intervals; all comparisons are exact.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Polynomial;
use super::rational::{format_rational, int, parse_rational, simplest_between, Rational};
use super::sturm::{count_in, sturm_chain};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RealAlgebraic {
    defining: Polynomial,
    lo: Rational,
    hi: Rational,
}

impl RealAlgebraic {
    /// Validates that `(lo, hi)` isolates exactly one root of `poly`.
    ///
    /// The stored polynomial is the squarefree part of `poly`, primitive with
    /// positive leading coefficient.
    pub fn new(poly: &Polynomial, lo: Rational, hi: Rational) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if lo >= hi {
            return Err(Error::EmptyInterval);
        }
        let defining = poly.squarefree_part().primitive();
        if defining.eval(&lo).is_zero() || defining.eval(&hi).is_zero() {
            return Err(Error::EndpointRoot);
        }
        let n = count_in(&sturm_chain(&defining), &lo, &hi);
        if n != 1 {
            return Err(Error::Invalid(format!(
                "interval ({}, {}) holds {n} roots of {defining}",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(RealAlgebraic { defining, lo, hi })
    }

    pub fn from_rational(q: &Rational) -> Self {
        RealAlgebraic {
            defining: Polynomial::linear_root(q).primitive(),
            lo: q - Rational::one(),
            hi: q + Rational::one(),
        }
    }

    pub fn defining(&self) -> &Polynomial {
        &self.defining
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    /// Exact value when the defining polynomial is linear.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.defining.degree() == Some(1) {
            let c = self.defining.coeffs();
            Some(-&c[0] / &c[1])
        } else {
            None
        }
    }

    pub fn approx(&self) -> f64 {
        let mut a = self.clone();
        while &a.hi - &a.lo > Rational::new(1.into(), (1u64 << 40).into()) && a.as_rational().is_none() {
            a.bisect();
        }
        let mid = a.as_rational().unwrap_or_else(|| (&a.lo + &a.hi) / int(2));
        mid.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
            / mid.denom().to_string().parse::<f64>().unwrap_or(f64::NAN)
    }

    fn sign_lo(&self) -> i8 {
        self.defining.sign_at(&self.lo)
    }

    /// Halves the isolating interval. If the midpoint is the root itself the
    /// interval is recentred on it.
    pub(crate) fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / int(2);
        let s = self.defining.sign_at(&mid);
        if s == 0 {
            let quarter = (&self.hi - &self.lo) / int(4);
            self.lo = &mid - &quarter;
            self.hi = &mid + quarter;
        } else if s == self.sign_lo() {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refined(&self) -> Self {
        let mut a = self.clone();
        a.bisect();
        a
    }

    /// Copies with interval width at most `w`.
    pub fn refined_to(&self, w: &Rational) -> Self {
        let mut a = self.clone();
        while &(&a.hi - &a.lo) > w {
            a.bisect();
        }
        a
    }

    /// Exact sign of `g` at this number.
    pub fn sign_of(&self, g: &Polynomial) -> i8 {
        if g.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return g.sign_at(&q);
        }
        let h = g.gcd(&self.defining);
        if !h.is_constant() && h.sign_at(&self.lo) * h.sign_at(&self.hi) < 0 {
            return 0;
        }
        let gs = g.squarefree_part();
        let chain = sturm_chain(&gs);
        let mut a = self.clone();
        loop {
            if let Some(q) = a.as_rational() {
                return g.sign_at(&q);
            }
            let (sl, sh) = (gs.sign_at(&a.lo), gs.sign_at(&a.hi));
            if sl != 0 && sh != 0 && count_in(&chain, &a.lo, &a.hi) == 0 {
                return g.sign_at(&a.lo);
            }
            a.bisect();
        }
    }

    pub fn compare_rational(&self, q: &Rational) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(q);
        }
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        let s = self.defining.sign_at(q);
        if s == 0 {
            Ordering::Equal
        } else if s == self.sign_lo() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Exact comparison on the real line.
    pub fn compare(&self, other: &RealAlgebraic) -> Ordering {
        if let Some(q) = other.as_rational() {
            return self.compare_rational(&q);
        }
        if let Some(q) = self.as_rational() {
            return other.compare_rational(&q).reverse();
        }
        let g = self.defining.gcd(&other.defining);
        if !g.is_constant()
            && g.sign_at(&self.lo) * g.sign_at(&self.hi) < 0
            && g.sign_at(&other.lo) * g.sign_at(&other.hi) < 0
        {
            let lo = (&self.lo).max(&other.lo);
            let hi = (&self.hi).min(&other.hi);
            if lo < hi && count_in(&sturm_chain(&g), lo, hi) > 0 {
                return Ordering::Equal;
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            a.bisect();
            b.bisect();
        }
    }

    /// A rational strictly between `self` and a strictly larger `other`.
    pub fn rational_between(&self, other: &RealAlgebraic) -> Rational {
        debug_assert_eq!(self.compare(other), Ordering::Less);
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            let ua = a.as_rational().map(|q| (q.clone(), q));
            let ub = b.as_rational().map(|q| (q.clone(), q));
            let (_, a_hi) = ua.unwrap_or((a.lo.clone(), a.hi.clone()));
            let (b_lo, _) = ub.unwrap_or((b.lo.clone(), b.hi.clone()));
            if a_hi < b_lo {
                return simplest_between(&a_hi, &b_lo);
            }
            if a_hi == b_lo && a.as_rational().is_none() && b.as_rational().is_none() {
                return a_hi;
            }
            a.bisect();
            b.bisect();
        }
    }

    /// A rational strictly below this number.
    pub fn rational_below(&self) -> Rational {
        (&self.lo - Rational::one()).floor()
    }

    /// A rational strictly above this number.
    pub fn rational_above(&self) -> Rational {
        (&self.hi + Rational::one()).ceil()
    }

    pub fn is_positive(&self) -> bool {
        self.compare_rational(&Rational::zero()) == Ordering::Greater
    }

    pub fn signum(&self) -> i8 {
        match self.compare_rational(&Rational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn neg(&self) -> RealAlgebraic {
        let d = self.defining.compose(&Polynomial::from_i64(&[0, -1]));
        RealAlgebraic { defining: d.primitive(), lo: -&self.hi, hi: -&self.lo }
    }
}

/// All distinct real roots of `p`, strictly increasing.
pub fn isolate_real_roots(p: &Polynomial) -> Result<Vec<RealAlgebraic>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let defining = p.squarefree_part().primitive();
    let chain = sturm_chain(&defining);
    let b = defining.root_bound();
    let mut out = Vec::new();
    isolate_in(&defining, &chain, -b.clone(), b, &mut out);
    Ok(out)
}

fn isolate_in(p: &Polynomial, chain: &[Polynomial], lo: Rational, hi: Rational, out: &mut Vec<RealAlgebraic>) {
    let n = count_in(chain, &lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RealAlgebraic { defining: p.clone(), lo, hi });
        return;
    }
    let mid = (&lo + &hi) / int(2);
    if p.eval(&mid).is_zero() {
        let mut delta = (&hi - &lo) / int(4);
        loop {
            let (a, b) = (&mid - &delta, &mid + &delta);
            if !p.eval(&a).is_zero() && !p.eval(&b).is_zero() && count_in(chain, &a, &b) == 1 {
                isolate_in(p, chain, lo, a.clone(), out);
                out.push(RealAlgebraic { defining: p.clone(), lo: a, hi: b.clone() });
                isolate_in(p, chain, b, hi, out);
                return;
            }
            delta /= int(2);
        }
    }
    isolate_in(p, chain, lo, mid.clone(), out);
    isolate_in(p, chain, mid, hi, out);
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for RealAlgebraic {}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{}", format_rational(&q)),
            None => write!(f, "root({}; {}..{})", self.defining, format_rational(&self.lo), format_rational(&self.hi)),
        }
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} ~ {:.6}", self.approx())
    }
}

#[derive(Serialize, Deserialize)]
struct RealAlgebraicJson {
    poly: Polynomial,
    lo: String,
    hi: String,
}

impl Serialize for RealAlgebraic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RealAlgebraicJson { poly: self.defining.clone(), lo: format_rational(&self.lo), hi: format_rational(&self.hi) }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealAlgebraic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RealAlgebraicJson::deserialize(d)?;
        let lo = parse_rational(&j.lo).map_err(serde::de::Error::custom)?;
        let hi = parse_rational(&j.hi).map_err(serde::de::Error::custom)?;
        RealAlgebraic::new(&j.poly, lo, hi).map_err(serde::de::Error::custom)
    }
}

/// Sign of a polynomial at a real algebraic number, `{-1, 0, 1}`.
pub fn sign_at(g: &Polynomial, alpha: &RealAlgebraic) -> i8 {
    alpha.sign_of(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    fn sqrt2() -> RealAlgebraic {
        RealAlgebraic::new(&p(&[-2, 0, 1]), int(1), int(2)).unwrap()
    }

    #[test]
    fn isolation_examples() {
        let r = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].approx() + 2f64.sqrt()).abs() < 1e-9);
        assert!((r[1].approx() - 2f64.sqrt()).abs() < 1e-9);
        assert!(isolate_real_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        let r = isolate_real_roots(&p(&[0, -2, 0, 1])).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[1].as_rational(), None);
        assert_eq!(r[1].compare_rational(&int(0)), Ordering::Equal);
        assert!(r[0] < r[1] && r[1] < r[2]);
        assert_eq!(isolate_real_roots(&Polynomial::zero()).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn sign_examples() {
        let a = sqrt2();
        assert_eq!(sign_at(&p(&[0, 1]), &a), 1);
        assert_eq!(sign_at(&p(&[-2, 0, 1]), &a), 0);
        assert_eq!(sign_at(&p(&[-3, 0, 0, 1]), &a), -1);
        // common factor but at the other root: x + sqrt2 style
        assert_eq!(sign_at(&(&p(&[-2, 0, 1]) * &p(&[1, 1])), &a), 0);
    }

    #[test]
    fn compare_examples() {
        let a = sqrt2();
        assert_eq!(a.compare(&RealAlgebraic::from_rational(&rat(3, 2))), Ordering::Less);
        let b = RealAlgebraic::new(&p(&[0, -2, 0, 1]), rat(13, 10), int(3)).unwrap();
        assert_eq!(a.compare(&b), Ordering::Equal);
        let c = RealAlgebraic::new(&p(&[-1, -3, 0, 1]), int(1), int(2)).unwrap();
        assert_eq!(c.compare(&a), Ordering::Greater);
    }

    #[test]
    fn constructor_validation() {
        assert!(RealAlgebraic::new(&p(&[-2, 0, 1]), int(-2), int(2)).is_err());
        assert_eq!(RealAlgebraic::new(&p(&[-1, 0, 1]), int(1), int(2)).unwrap_err(), Error::EndpointRoot);
    }

    #[test]
    fn rational_between_roots() {
        let r = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        let q = r[0].rational_between(&r[1]);
        assert_eq!(q, int(0));
        let s = RealAlgebraic::from_rational(&rat(7, 5));
        let q = s.rational_between(&r[1]);
        assert!(q > rat(7, 5) && r[1].compare_rational(&q) == Ordering::Greater);
    }

    #[test]
    fn negation() {
        let a = sqrt2().neg();
        assert_eq!(a.compare(&isolate_real_roots(&p(&[-2, 0, 1])).unwrap()[0]), Ordering::Equal);
    }
}
