//! Elements of the rational function field `k(t)` in factored form, and the
//! places of `P^1_k`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::field::{Base, FieldDesc, FieldElem};
use crate::arith::rational::{format_rational, sign};
use crate::arith::{
    factor_over_q, isolate_real_roots, parse_polynomial, real_root_count, Polynomial, Rational, RealAlgebraic,
};
use crate::error::{Error, Result};

/// An irreducible factor of an element of `k(t)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Factor {
    /// Monic irreducible over the rationals.
    Poly(Polynomial),
    /// `t - alpha` for an irrational real algebraic `alpha`; only over the real closure.
    Linear(RealAlgebraic),
}

impl Factor {
    fn linear(alpha: &RealAlgebraic) -> Factor {
        match alpha.as_rational() {
            Some(q) => Factor::Poly(Polynomial::linear_root(&q)),
            None => Factor::Linear(alpha.clone()),
        }
    }

    fn sign_at_rational(&self, x: &Rational) -> i8 {
        match self {
            Factor::Poly(g) => g.sign_at(x),
            Factor::Linear(a) => match a.compare_rational(x) {
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => -1,
            },
        }
    }

    fn real_roots(&self) -> Vec<RealAlgebraic> {
        match self {
            Factor::Poly(g) => isolate_real_roots(g).expect("nonzero factor"),
            Factor::Linear(a) => vec![a.clone()],
        }
    }

    fn degree(&self) -> usize {
        match self {
            Factor::Poly(g) => g.deg(),
            Factor::Linear(_) => 1,
        }
    }
}

/// `constant * prod factor^exponent` with nonzero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalFunction {
    constant: Rational,
    factors: BTreeMap<Factor, i32>,
}

impl RationalFunction {
    pub fn one() -> Self {
        RationalFunction { constant: Rational::one(), factors: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::SignOfZero);
        }
        Ok(RationalFunction { constant: c, factors: BTreeMap::new() })
    }

    pub fn t() -> Self {
        Self::from_factor(Factor::Poly(Polynomial::x()), 1)
    }

    pub fn from_factor(f: Factor, e: i32) -> Self {
        let mut factors = BTreeMap::new();
        if e != 0 {
            factors.insert(f, e);
        }
        RationalFunction { constant: Rational::one(), factors }
    }

    /// `t - alpha`.
    pub fn linear(alpha: &RealAlgebraic) -> Self {
        Self::from_factor(Factor::linear(alpha), 1)
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let f = factor_over_q(p)?;
        let mut factors = BTreeMap::new();
        for (g, e) in f.factors {
            factors.insert(Factor::Poly(g), e as i32);
        }
        Ok(RationalFunction { constant: f.content, factors })
    }

    pub fn from_fraction(num: &Polynomial, den: &Polynomial) -> Result<Self> {
        Ok(Self::from_polynomial(num)?.mul(&Self::from_polynomial(den)?.inv()))
    }

    pub fn parse(src: &str) -> Result<Self> {
        let (n, d) = crate::arith::parse_fraction(src)?;
        Self::from_fraction(&n, &d)
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Factor, i32)> {
        self.factors.iter().map(|(f, e)| (f, *e))
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn base_compatible(&self, base: Base) -> bool {
        base == Base::RealClosure || self.factors.keys().all(|f| matches!(f, Factor::Poly(_)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (f, e) in &other.factors {
            let v = factors.entry(f.clone()).or_insert(0);
            *v += e;
            if *v == 0 {
                factors.remove(f);
            }
        }
        RationalFunction { constant: &self.constant * &other.constant, factors }
    }

    pub fn inv(&self) -> Self {
        RationalFunction {
            constant: self.constant.recip(),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Self {
        if k == 0 {
            return Self::one();
        }
        let c = if k > 0 { self.constant.clone() } else { self.constant.recip() };
        let mut constant = Rational::one();
        for _ in 0..k.unsigned_abs() {
            constant *= &c;
        }
        RationalFunction { constant, factors: self.factors.iter().map(|(f, e)| (f.clone(), e * k)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction { constant: &self.constant * c, factors: self.factors.clone() }
    }

    /// Sign at a rational point; 0 at zeros and poles.
    pub fn sign_at_rational(&self, x: &Rational) -> i8 {
        let mut s = sign(&self.constant);
        for (f, e) in &self.factors {
            let v = f.sign_at_rational(x);
            if v == 0 {
                return 0;
            }
            if e % 2 != 0 {
                s *= v;
            }
        }
        s
    }

    /// Sign for `t` near `+inf` (`at_pos = true`) or `-inf`.
    pub fn sign_at_infinity(&self, at_pos: bool) -> i8 {
        let mut s = sign(&self.constant);
        if !at_pos {
            for (f, e) in &self.factors {
                if (f.degree() as i64 * *e as i64) % 2 != 0 {
                    s = -s;
                }
            }
        }
        s
    }

    /// Distinct real zeros and poles, sorted; when `odd_only` only those of odd order.
    pub fn real_roots(&self, odd_only: bool) -> Vec<RealAlgebraic> {
        let mut out: Vec<RealAlgebraic> = Vec::new();
        for (f, e) in &self.factors {
            if odd_only && e % 2 == 0 {
                continue;
            }
            out.extend(f.real_roots());
        }
        out.sort();
        out.dedup();
        if odd_only {
            out.retain(|a| self.ord_at(&Place::Point(ClosedPoint::Real(a.clone()))) % 2 != 0);
        }
        out
    }

    /// Closed points of `A^1_base` at which this function has a zero or pole.
    pub fn support(&self, base: Base) -> Vec<ClosedPoint> {
        let mut out = Vec::new();
        for f in self.factors.keys() {
            match (base, f) {
                (Base::Q, Factor::Poly(g)) => out.push(ClosedPoint::Poly(g.clone())),
                (_, Factor::Poly(g)) => out.extend(ClosedPoint::over_real_closure(g)),
                (_, Factor::Linear(a)) => out.push(ClosedPoint::Real(a.clone())),
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn ord_at(&self, place: &Place) -> i32 {
        match place {
            Place::Infinity => -self.factors.iter().map(|(f, e)| f.degree() as i32 * e).sum::<i32>(),
            Place::Point(ClosedPoint::Poly(p)) => self.factors.get(&Factor::Poly(p.clone())).copied().unwrap_or(0),
            Place::Point(ClosedPoint::Real(a)) => self
                .factors
                .iter()
                .filter(|(f, _)| match f {
                    Factor::Poly(g) => a.sign_of(g) == 0,
                    Factor::Linear(b) => a == b,
                })
                .map(|(_, e)| *e)
                .sum(),
            Place::Point(ClosedPoint::Complex { poly, .. }) => {
                self.factors.get(&Factor::Poly(poly.clone())).copied().unwrap_or(0)
            }
        }
    }

    /// Residue of `self / g^ord` for the canonical uniformizer `g` of the place
    /// (the monic generator, `t - alpha`, or `1/t` at infinity).
    pub fn lead_at(&self, place: &Place, base: Base) -> FieldElem {
        match place {
            Place::Infinity => match base {
                Base::Q => FieldElem::Rational(self.constant.clone()),
                Base::RealClosure => FieldElem::RealSign(sign(&self.constant)),
            },
            Place::Point(ClosedPoint::Poly(p)) => {
                let mut num = Polynomial::constant(self.constant.clone());
                let mut den = Polynomial::one();
                for (f, e) in &self.factors {
                    let Factor::Poly(g) = f else { unreachable!("linear factor over Q") };
                    if g == p {
                        continue;
                    }
                    let r = g.rem(p);
                    if *e > 0 {
                        num = (&num * &r.pow(*e as u32)).rem(p);
                    } else {
                        den = (&den * &r.pow((-e) as u32)).rem(p);
                    }
                }
                let inv = super::field::nf_inverse(&den, p).expect("unit at the place");
                let v = (&num * &inv).rem(p);
                if p.deg() == 1 {
                    FieldElem::Rational(v.coeff(0))
                } else {
                    FieldElem::Algebraic(v)
                }
            }
            Place::Point(ClosedPoint::Real(a)) => {
                let mut s = sign(&self.constant);
                for (f, e) in &self.factors {
                    let v = match f {
                        Factor::Poly(g) => {
                            let v = a.sign_of(g);
                            if v == 0 {
                                a.sign_of(&g.derivative())
                            } else {
                                v
                            }
                        }
                        Factor::Linear(b) => match a.compare(b) {
                            std::cmp::Ordering::Less => -1,
                            std::cmp::Ordering::Equal => 1,
                            std::cmp::Ordering::Greater => 1,
                        },
                    };
                    if e % 2 != 0 {
                        s *= v;
                    }
                }
                FieldElem::RealSign(s)
            }
            Place::Point(ClosedPoint::Complex { .. }) => FieldElem::Complex,
        }
    }

    pub fn display_var(&self, var: &str) -> String {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (f, e) in &self.factors {
            let base = match f {
                Factor::Poly(g) => g.display_var(var),
                Factor::Linear(a) => format!("{var} - {a}"),
            };
            let wrapped = if base.contains(' ') { format!("({base})") } else { base };
            let k = e.unsigned_abs();
            let term = if k == 1 { wrapped } else { format!("{wrapped}^{k}") };
            if *e > 0 {
                num.push(term);
            } else {
                den.push(term);
            }
        }
        let c = format_rational(&self.constant);
        let mut out = if num.is_empty() {
            c
        } else if self.constant.is_one() {
            num.join("*")
        } else if c == "-1" {
            format!("-{}", num.join("*"))
        } else {
            format!("{c}*{}", num.join("*"))
        };
        if !den.is_empty() {
            let d = den.join("*");
            if den.len() == 1 && !d.contains('^') {
                out = format!("{out}/{d}");
            } else {
                out = format!("{out}/({d})");
            }
        }
        out
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// A closed point of `A^1` over the rationals or over the real closure.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosedPoint {
    /// Over the rationals: the zero set of a monic irreducible polynomial.
    Poly(Polynomial),
    /// Over the real closure: a real point.
    Real(RealAlgebraic),
    /// Over the real closure: the `index`-th conjugate pair of non-real roots of
    /// a monic irreducible rational polynomial.
    Complex { poly: Polynomial, index: usize },
}

impl ClosedPoint {
    pub fn rational(q: &Rational) -> ClosedPoint {
        ClosedPoint::Poly(Polynomial::linear_root(q))
    }

    /// Points over the real closure lying over a rational irreducible `g`.
    pub fn over_real_closure(g: &Polynomial) -> Vec<ClosedPoint> {
        let mut out: Vec<ClosedPoint> =
            isolate_real_roots(g).expect("nonzero").into_iter().map(ClosedPoint::Real).collect();
        let pairs = (g.deg() - out.len()) / 2;
        out.extend((0..pairs).map(|index| ClosedPoint::Complex { poly: g.monic(), index }));
        out
    }

    pub fn base(&self) -> Base {
        match self {
            ClosedPoint::Poly(_) => Base::Q,
            _ => Base::RealClosure,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Poly(p) => p.deg(),
            ClosedPoint::Real(_) => 1,
            ClosedPoint::Complex { .. } => 2,
        }
    }

    pub fn residue_field(&self) -> FieldDesc {
        match self {
            ClosedPoint::Poly(p) if p.deg() == 1 => FieldDesc::Q,
            ClosedPoint::Poly(p) => FieldDesc::FiniteExt { base: Base::Q, modulus: p.clone() },
            ClosedPoint::Real(_) => FieldDesc::RealClosure,
            ClosedPoint::Complex { .. } => FieldDesc::complex(),
        }
    }

    /// Real points over this closed point, sorted.
    pub fn real_points(&self) -> Vec<RealAlgebraic> {
        match self {
            ClosedPoint::Poly(p) => isolate_real_roots(p).expect("nonzero"),
            ClosedPoint::Real(a) => vec![a.clone()],
            ClosedPoint::Complex { .. } => Vec::new(),
        }
    }

    /// The monic generator (over the real closure, `t - alpha`; for a
    /// conjugate pair, the rational polynomial).
    pub fn generator(&self) -> RationalFunction {
        match self {
            ClosedPoint::Poly(p) => RationalFunction::from_factor(Factor::Poly(p.clone()), 1),
            ClosedPoint::Real(a) => RationalFunction::linear(a),
            ClosedPoint::Complex { poly, .. } => RationalFunction::from_factor(Factor::Poly(poly.clone()), 1),
        }
    }

    pub fn key(&self) -> String {
        match self {
            ClosedPoint::Poly(p) => p.display_var("t"),
            ClosedPoint::Real(a) => match a.as_rational() {
                Some(q) => Polynomial::linear_root(&q).display_var("t"),
                None => real_key(a),
            },
            ClosedPoint::Complex { poly, index } => format!("{}@c{index}", poly.display_var("t")),
        }
    }

    /// Parses a point key. Over the rationals a monic irreducible polynomial
    /// in `t`; over the real closure a linear polynomial, `poly@i` for the
    /// `i`-th real root of `poly`, or `poly@ci` for its `i`-th conjugate pair.
    pub fn parse(src: &str, base: Base) -> Result<ClosedPoint> {
        let (poly_src, sel) = match src.rsplit_once('@') {
            Some((p, s)) => (p, Some(s.trim())),
            None => (src, None),
        };
        let p = parse_polynomial(poly_src)?.monic();
        let irreducible = crate::arith::is_irreducible(&p);
        if !irreducible {
            return Err(Error::NotIrreducible(p.display_var("t")));
        }
        match (base, sel) {
            (Base::Q, None) => Ok(ClosedPoint::Poly(p)),
            (Base::Q, Some(_)) => Err(Error::Parse(format!("root selector needs the real closure: {src:?}"))),
            (Base::RealClosure, None) if p.deg() == 1 => {
                Ok(ClosedPoint::Real(RealAlgebraic::from_rational(&-p.coeff(0))))
            }
            (Base::RealClosure, None) if p.deg() == 2 && real_root_count(&p) == 0 => {
                Ok(ClosedPoint::Complex { poly: p, index: 0 })
            }
            (Base::RealClosure, None) => Err(Error::Parse(format!("point {src:?} needs a root selector @i or @ci"))),
            (Base::RealClosure, Some(s)) => {
                let bad = || Error::Parse(format!("bad root selector in {src:?}"));
                if let Some(c) = s.strip_prefix('c') {
                    let index: usize = c.parse().map_err(|_| bad())?;
                    let pairs = (p.deg() - real_root_count(&p)) / 2;
                    if index >= pairs {
                        return Err(bad());
                    }
                    Ok(ClosedPoint::Complex { poly: p, index })
                } else {
                    let i: usize = s.parse().map_err(|_| bad())?;
                    let roots = isolate_real_roots(&p)?;
                    roots.get(i).cloned().map(ClosedPoint::Real).ok_or_else(bad)
                }
            }
        }
    }
}

/// `m@i` for the `i`-th real root of the minimal polynomial `m`.
fn real_key(a: &RealAlgebraic) -> String {
    let factors = factor_over_q(a.defining()).map(|f| f.factors).unwrap_or_default();
    for (m, _) in factors {
        if a.sign_of(&m) == 0 {
            let roots = isolate_real_roots(&m).unwrap_or_default();
            if let Some(i) = roots.iter().position(|r| r.compare(a).is_eq()) {
                return format!("{}@{i}", m.display_var("t"));
            }
        }
    }
    format!("t - {a}")
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl fmt::Debug for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

/// A place of `k(t)` over `k`: a closed point of `A^1` or the point at infinity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Point(ClosedPoint),
    Infinity,
}

impl Place {
    pub fn key(&self) -> String {
        match self {
            Place::Point(p) => p.key(),
            Place::Infinity => "inf".into(),
        }
    }

    pub fn parse(src: &str, base: Base) -> Result<Place> {
        if src.trim().eq_ignore_ascii_case("inf") {
            Ok(Place::Infinity)
        } else {
            ClosedPoint::parse(src, base).map(Place::Point)
        }
    }

    pub fn residue_field(&self, base: Base) -> FieldDesc {
        match self {
            Place::Point(p) => p.residue_field(),
            Place::Infinity => base.field(),
        }
    }

    /// The canonical uniformizer: the monic generator, or `1/t` at infinity.
    pub fn uniformizer(&self) -> RationalFunction {
        match self {
            Place::Point(p) => p.generator(),
            Place::Infinity => RationalFunction::t().inv(),
        }
    }

    /// Number of orderings of the residue field.
    pub fn ordering_count(&self) -> usize {
        match self {
            Place::Point(p) => p.real_points().len(),
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.key())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn orders_and_leading_coefficients() {
        let f = rf("t*(t-1)");
        let zero = Place::Point(ClosedPoint::rational(&int(0)));
        assert_eq!(f.ord_at(&zero), 1);
        assert_eq!(f.ord_at(&Place::Infinity), -2);
        assert_eq!(f.lead_at(&zero, Base::Q), FieldElem::Rational(int(-1)));
        let g = rf("(t^2-2)/(t+1)");
        let p = Place::Point(ClosedPoint::Poly(Polynomial::from_i64(&[-2, 0, 1])));
        assert_eq!(g.ord_at(&p), 1);
        // 1/(x+1) = x - 1 in Q(sqrt 2)
        assert_eq!(g.lead_at(&p, Base::Q), FieldElem::Algebraic(Polynomial::from_i64(&[-1, 1])));
        assert_eq!(rf("3*t^2/(2*t^3+1)").lead_at(&Place::Infinity, Base::Q), FieldElem::Rational(rat(3, 2)));
    }

    #[test]
    fn real_closure_points() {
        let g = rf("(t^2-2)*(t^2+1)");
        let pts = g.support(Base::RealClosure);
        assert_eq!(pts.len(), 3);
        let r = isolate_real_roots(&Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        let at = Place::Point(ClosedPoint::Real(r[1].clone()));
        assert_eq!(g.ord_at(&at), 1);
        // (t + sqrt 2)(t^2 + 1) > 0 at sqrt 2
        assert_eq!(g.lead_at(&at, Base::RealClosure), FieldElem::RealSign(1));
        let at = Place::Point(ClosedPoint::Real(r[0].clone()));
        assert_eq!(g.lead_at(&at, Base::RealClosure), FieldElem::RealSign(-1));
    }

    #[test]
    fn signs() {
        let g = rf("-(t-1)^3/t^2");
        assert_eq!(g.sign_at_rational(&int(2)), -1);
        assert_eq!(g.sign_at_rational(&int(0)), 0);
        assert_eq!(g.sign_at_infinity(true), -1);
        assert_eq!(g.sign_at_infinity(false), 1);
        assert_eq!(g.real_roots(true).len(), 1);
        assert_eq!(g.real_roots(false).len(), 2);
    }

    #[test]
    fn display_round_trips() {
        for src in ["-(t-1)^3/t^2", "3/2*t*(t^2+1)/(t-2)", "5", "(t^2-2)^2/((t+1)*(t-3)^3)"] {
            let f = rf(src);
            assert_eq!(rf(&f.to_string()), f, "{src} -> {f}");
        }
    }

    #[test]
    fn parse_points() {
        assert_eq!(Place::parse("inf", Base::Q).unwrap(), Place::Infinity);
        assert!(ClosedPoint::parse("t^2-1", Base::Q).is_err());
        let p = ClosedPoint::parse("t^2-2@1", Base::RealClosure).unwrap();
        assert!(matches!(p, ClosedPoint::Real(ref a) if a.is_positive()));
        assert!(matches!(ClosedPoint::parse("t^2+1", Base::RealClosure).unwrap(), ClosedPoint::Complex { .. }));
        assert_eq!(ClosedPoint::parse("t-1/2", Base::RealClosure).unwrap().key(), "t - 1/2");
    }
}
