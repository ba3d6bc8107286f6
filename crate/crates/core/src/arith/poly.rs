//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, sign, Rational};
use crate::error::{Error, Result};

/// A polynomial with rational coefficients, lowest degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x - c`.
    pub fn linear_root(c: &Rational) -> Self {
        Self::new(vec![-c.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = 0`; only for bookkeeping where zero is excluded.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign(&self.eval(x))
    }

    /// Sign as `x -> +infinity`.
    pub fn sign_at_pos_inf(&self) -> i8 {
        self.leading().map_or(0, sign)
    }

    /// Sign as `x -> -infinity`.
    pub fn sign_at_neg_inf(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_pos_inf();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Polynomial) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = d.leading().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Polynomial) -> Polynomial {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.rem(self).is_zero()
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn exact_div(&self, d: &Polynomial) -> Polynomial {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Content-free integer coefficients with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        ints
    }

    /// The primitive integer polynomial proportional to `self`, as a rational polynomial.
    pub fn primitive(&self) -> Polynomial {
        Self::from_integers(&self.primitive_integer())
    }

    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.is_constant() || self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's algorithm: monic, pairwise coprime squarefree `s_i` with `self = lc * prod s_i^i`.
    /// Only factors of positive degree are returned.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Cauchy bound: every complex root has modulus strictly below the returned value.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().expect("root bound of zero polynomial").abs();
        let mut m = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = c.abs() / &lc;
            if r > m {
                m = r;
            }
        }
        m + Rational::one()
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else if mag.denom().is_one() {
                out.push_str(&format!("{}{mono}", format_rational(&mag)));
            } else {
                out.push_str(&format!("({}){mono}", format_rational(&mag)));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coeffs =
            v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        Ok(Polynomial::new(coeffs))
    }
}

/// Parses an expression in one variable (`x` or `t`) built from rationals,
/// `+ - * / ^` and parentheses, returning `(numerator, denominator)` with the
/// denominator nonzero. Division by a nonconstant is allowed.
pub fn parse_fraction(src: &str) -> Result<(Polynomial, Polynomial)> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(v)
}

/// Parses a polynomial expression; rejects division by nonconstants.
pub fn parse_polynomial(src: &str) -> Result<Polynomial> {
    let (n, d) = parse_fraction(src)?;
    if !d.is_constant() {
        return Err(Error::Parse(format!("{src:?} is not a polynomial")));
    }
    Ok(n.scale(&d.coeff(0).recip()))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var,
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[st..i].iter().collect();
            out.push(Tok::Num(s.parse().unwrap()));
        } else if c == 'x' || c == 't' {
            out.push(Tok::Var);
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

type Frac = (Polynomial, Polynomial);

fn frac_mul(a: &Frac, b: &Frac) -> Frac {
    (&a.0 * &b.0, &a.1 * &b.1)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc.0 = -&acc.0;
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = (&(&acc.0 * &t.1) + &(&t.0 * &acc.1), &acc.1 * &t.1);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = (&(&acc.0 * &t.1) - &(&t.0 * &acc.1), &acc.1 * &t.1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let f = self.power()?;
                acc = frac_mul(&acc, &f);
            } else if self.eat('/') {
                let f = self.power()?;
                if f.0.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = frac_mul(&acc, &(f.1, f.0));
            } else if matches!(self.peek(), Some(Tok::Var) | Some(Tok::Num(_)) | Some(Tok::Op('('))) {
                let f = self.power()?;
                acc = frac_mul(&acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.clone(),
                _ => return Err(Error::Parse("exponent must be a nonnegative integer".into())),
            };
            self.pos += 1;
            let e: u32 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            return Ok((base.0.pow(e), base.1.pow(e)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok((Polynomial::constant(Rational::from_integer(n)), Polynomial::one()))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok((Polynomial::x(), Polynomial::one()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, -1, 1, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[1, 0, 1]).rem(&b), p(&[2]));
    }

    #[test]
    fn gcds() {
        let a = &p(&[-2, 0, 1]) * &p(&[1, 1]);
        let b = &p(&[-2, 0, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-2, 0, 1]));
        let (g, s, t) = a.ext_gcd(&p(&[5, 0, 1]));
        assert!(g.is_constant());
        assert_eq!(&(&s * &a) + &(&t * &p(&[5, 0, 1])), Polynomial::one());
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^3 (x+2)^2 x
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2)) * &p(&[0, 1]);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[0, 1]), 1), (p(&[2, 1]), 2), (p(&[-1, 1]), 3)]);
        assert_eq!(f.squarefree_part(), &(&p(&[-1, 1]) * &p(&[2, 1])) * &p(&[0, 1]));
    }

    #[test]
    fn primitive_parts() {
        let f = Polynomial::new(vec![rat(-1, 2), rat(0, 1), rat(-3, 4)]);
        assert_eq!(f.primitive_integer(), vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_polynomial("x^2-2").unwrap(), p(&[-2, 0, 1]));
        assert_eq!(parse_polynomial("3t^2 - (t+1)*(t-1)").unwrap(), p(&[1, 0, 2]));
        assert_eq!(parse_polynomial("1/2 x").unwrap(), Polynomial::new(vec![rat(0, 1), rat(1, 2)]));
        let (n, d) = parse_fraction("(t-1)/(t^2+1)").unwrap();
        assert_eq!((n, d), (p(&[-1, 1]), p(&[1, 0, 1])));
        assert!(parse_polynomial("1/t").is_err());
        assert!(parse_polynomial("y+1").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(Polynomial::new(vec![rat(1, 2), rat(-1, 1)]).display_var("t"), "-t + 1/2");
        assert_eq!(parse_polynomial(&p(&[3, -1, 0, 2]).to_string()).unwrap(), p(&[3, -1, 0, 2]));
    }
}
