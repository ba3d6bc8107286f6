//! Supported fields and their elements.
//!
//! Over the real closure and over its quadratic closure only square classes
//! are stored: a nonzero real algebraic number is recorded by its sign, and
//! every nonzero complex number is a square.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::function::RationalFunction;
use crate::arith::rational::{format_rational, sign};
use crate::arith::{is_irreducible, parse_fraction, parse_polynomial, parse_rational, Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Q,
    RealClosure,
}

impl Base {
    pub fn name(self) -> &'static str {
        match self {
            Base::Q => "Q",
            Base::RealClosure => "Ralg",
        }
    }

    pub fn field(self) -> FieldDesc {
        match self {
            Base::Q => FieldDesc::Q,
            Base::RealClosure => FieldDesc::RealClosure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDesc {
    Q,
    RealClosure,
    FiniteExt { base: Base, modulus: Polynomial },
    FunctionField(Base),
}

impl FieldDesc {
    /// `base[x]/(modulus)`; the modulus is made monic and checked for irreducibility.
    pub fn finite_ext(base: Base, modulus: &Polynomial) -> Result<FieldDesc> {
        let m = modulus.monic();
        let ok = match base {
            Base::Q => is_irreducible(&m),
            Base::RealClosure => match m.degree() {
                Some(1) => true,
                Some(2) => crate::arith::real_root_count(&m) == 0,
                _ => false,
            },
        };
        if !ok {
            return Err(Error::NotIrreducible(format!("{m} over {}", base.name())));
        }
        Ok(FieldDesc::FiniteExt { base, modulus: m })
    }

    pub fn complex() -> FieldDesc {
        FieldDesc::FiniteExt { base: Base::RealClosure, modulus: Polynomial::from_i64(&[1, 0, 1]) }
    }

    pub fn base(&self) -> Base {
        match self {
            FieldDesc::Q => Base::Q,
            FieldDesc::RealClosure => Base::RealClosure,
            FieldDesc::FiniteExt { base, .. } | FieldDesc::FunctionField(base) => *base,
        }
    }

    /// Degree over the base, `None` for function fields.
    pub fn degree(&self) -> Option<usize> {
        match self {
            FieldDesc::Q | FieldDesc::RealClosure => Some(1),
            FieldDesc::FiniteExt { modulus, .. } => Some(modulus.deg()),
            FieldDesc::FunctionField(_) => None,
        }
    }

    /// Kind of element storage used for this field.
    fn kind(&self) -> Kind {
        match self {
            FieldDesc::Q => Kind::Rational,
            FieldDesc::RealClosure => Kind::RealSign,
            FieldDesc::FiniteExt { base: Base::Q, modulus } if modulus.deg() == 1 => Kind::Rational,
            FieldDesc::FiniteExt { base: Base::Q, .. } => Kind::NumberField,
            FieldDesc::FiniteExt { base: Base::RealClosure, modulus } if modulus.deg() == 1 => Kind::RealSign,
            FieldDesc::FiniteExt { base: Base::RealClosure, .. } => Kind::Complex,
            FieldDesc::FunctionField(_) => Kind::Function,
        }
    }

    pub fn one(&self) -> FieldElem {
        match self.kind() {
            Kind::Rational => FieldElem::Rational(Rational::one()),
            Kind::RealSign => FieldElem::RealSign(1),
            Kind::Complex => FieldElem::Complex,
            Kind::NumberField => FieldElem::Algebraic(Polynomial::one()),
            Kind::Function => FieldElem::Function(RationalFunction::one()),
        }
    }

    pub fn from_rational(&self, q: &Rational) -> Result<FieldElem> {
        if q.is_zero() {
            return Err(Error::SignOfZero);
        }
        Ok(match self.kind() {
            Kind::Rational => FieldElem::Rational(q.clone()),
            Kind::RealSign => FieldElem::RealSign(sign(q)),
            Kind::Complex => FieldElem::Complex,
            Kind::NumberField => FieldElem::Algebraic(Polynomial::constant(q.clone())),
            Kind::Function => FieldElem::Function(RationalFunction::constant(q.clone())?),
        })
    }

    /// Checks that `e` is a nonzero element stored in this field's representation.
    pub fn check(&self, e: &FieldElem) -> Result<()> {
        let ok = match (self.kind(), e) {
            (Kind::Rational, FieldElem::Rational(q)) => !q.is_zero(),
            (Kind::RealSign, FieldElem::RealSign(s)) => *s == 1 || *s == -1,
            (Kind::Complex, FieldElem::Complex) => true,
            (Kind::NumberField, FieldElem::Algebraic(p)) => {
                let FieldDesc::FiniteExt { modulus, .. } = self else { unreachable!() };
                !p.is_zero() && p.degree() < modulus.degree()
            }
            (Kind::Function, FieldElem::Function(f)) => f.base_compatible(self.base()),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{e} is not a nonzero element of {self}")))
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(match (a, b) {
            (FieldElem::Rational(x), FieldElem::Rational(y)) => FieldElem::Rational(x * y),
            (FieldElem::RealSign(x), FieldElem::RealSign(y)) => FieldElem::RealSign(x * y),
            (FieldElem::Complex, FieldElem::Complex) => FieldElem::Complex,
            (FieldElem::Algebraic(x), FieldElem::Algebraic(y)) => {
                let FieldDesc::FiniteExt { modulus, .. } = self else {
                    return Err(Error::FieldMismatch(self.to_string()));
                };
                FieldElem::Algebraic((x * y).rem(modulus))
            }
            (FieldElem::Function(x), FieldElem::Function(y)) => FieldElem::Function(x.mul(y)),
            _ => return Err(Error::FieldMismatch(format!("cannot multiply {a} and {b}"))),
        })
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        Ok(match a {
            FieldElem::Rational(x) => {
                if x.is_zero() {
                    return Err(Error::SignOfZero);
                }
                FieldElem::Rational(x.recip())
            }
            FieldElem::RealSign(s) => FieldElem::RealSign(*s),
            FieldElem::Complex => FieldElem::Complex,
            FieldElem::Algebraic(x) => {
                let FieldDesc::FiniteExt { modulus, .. } = self else {
                    return Err(Error::FieldMismatch(self.to_string()));
                };
                FieldElem::Algebraic(nf_inverse(x, modulus)?)
            }
            FieldElem::Function(f) => FieldElem::Function(f.inv()),
        })
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem> {
        let m = self.from_rational(&-Rational::one())?;
        self.mul(&m, a)
    }

    /// Parses an element written as a rational, a polynomial in `x` (finite
    /// extensions) or a quotient of polynomials in `t` (function fields).
    pub fn parse_elem(&self, src: &str) -> Result<FieldElem> {
        let e = match self.kind() {
            Kind::Rational | Kind::RealSign | Kind::Complex => self.from_rational(&parse_rational(src)?)?,
            Kind::NumberField => {
                let FieldDesc::FiniteExt { modulus, .. } = self else { unreachable!() };
                let p = parse_polynomial(src)?.rem(modulus);
                if p.is_zero() {
                    return Err(Error::SignOfZero);
                }
                FieldElem::Algebraic(p)
            }
            Kind::Function => {
                let (n, d) = parse_fraction(src)?;
                FieldElem::Function(RationalFunction::from_fraction(&n, &d)?)
            }
        };
        Ok(e)
    }

    /// Trace of `a` down to the base field, for number fields over the rationals.
    pub fn trace(&self, a: &Polynomial) -> Result<Rational> {
        match self {
            FieldDesc::FiniteExt { base: Base::Q, modulus } => Ok(nf_trace(a, modulus)),
            FieldDesc::Q => Ok(a.coeff(0)),
            _ => Err(Error::Unsupported(format!("trace on {self}"))),
        }
    }

    pub fn parse(src: &str) -> Result<FieldDesc> {
        let s = src.trim();
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "q" | "qq" | "rational" | "rationals" => return Ok(FieldDesc::Q),
            "r" | "ralg" | "realclosure" | "real_closure" => return Ok(FieldDesc::RealClosure),
            "q(t)" => return Ok(FieldDesc::FunctionField(Base::Q)),
            "ralg(t)" | "realclosure(t)" | "r(t)" => return Ok(FieldDesc::FunctionField(Base::RealClosure)),
            "c" | "calg" => return Ok(FieldDesc::complex()),
            _ => {}
        }
        for (prefix, base) in [("q[x]/(", Base::Q), ("ralg[x]/(", Base::RealClosure)] {
            if lower.starts_with(prefix) && s.ends_with(')') {
                let inner = &s[prefix.len()..s.len() - 1];
                return FieldDesc::finite_ext(base, &parse_polynomial(inner)?);
            }
        }
        Err(Error::Parse(format!("unknown field {src:?}")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Rational,
    RealSign,
    Complex,
    NumberField,
    Function,
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Q => f.write_str("Q"),
            FieldDesc::RealClosure => f.write_str("Ralg"),
            FieldDesc::FiniteExt { base, modulus } => write!(f, "{}[x]/({modulus})", base.name()),
            FieldDesc::FunctionField(base) => write!(f, "{}(t)", base.name()),
        }
    }
}

impl Serialize for FieldDesc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FieldDesc::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A nonzero element of a supported field.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldElem {
    Rational(Rational),
    /// Square class of a nonzero real algebraic number.
    RealSign(i8),
    /// The unique square class of the algebraic closure.
    Complex,
    /// Residue modulo the modulus, of degree below it.
    Algebraic(Polynomial),
    Function(RationalFunction),
}

impl FieldElem {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElem::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_function(&self) -> Option<&RationalFunction> {
        match self {
            FieldElem::Function(f) => Some(f),
            _ => None,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => f.write_str(&format_rational(q)),
            FieldElem::RealSign(s) => write!(f, "{}", if *s > 0 { "1" } else { "-1" }),
            FieldElem::Complex => f.write_str("1"),
            FieldElem::Algebraic(p) => f.write_str(&p.display_var("x")),
            FieldElem::Function(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn nf_inverse(a: &Polynomial, modulus: &Polynomial) -> Result<Polynomial> {
    let (g, s, _) = a.ext_gcd(modulus);
    if !g.is_one_poly() {
        return Err(Error::SignOfZero);
    }
    Ok(s.rem(modulus))
}

/// Trace of multiplication by `a` on `Q[x]/(m)` in the power basis.
pub fn nf_trace(a: &Polynomial, m: &Polynomial) -> Rational {
    let n = m.deg();
    let mut acc = Rational::zero();
    let mut basis = Polynomial::one();
    for i in 0..n {
        acc += (a * &basis).rem(m).coeff(i);
        basis = (&basis * &Polynomial::x()).rem(m);
    }
    acc
}

trait IsOne {
    fn is_one_poly(&self) -> bool;
}

impl IsOne for Polynomial {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}
