//! Sign functions twisted by a one-dimensional space with a named basis.
//!
//! A class is a body together with a basis token and a scale `u`, standing
//! for the body expressed in the basis `u * token`. Since `(body, u * b)` is
//! identified with `(zeta(u) * body, b)`, every class has a normal form with
//! scale one.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::field::{Base, FieldDesc, FieldElem};
use super::function::Place;
use super::sign::{zeta, Body};
use crate::error::{Error, Result};

/// Symbolic basis of a one-dimensional space: a tensor product of named
/// factors, together with the divisor of the rational section it names
/// (empty for fields and for trivial twists).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisToken {
    parts: Vec<String>,
    divisor: BTreeMap<Place, i64>,
}

impl BasisToken {
    pub fn unit() -> Self {
        BasisToken { parts: Vec::new(), divisor: BTreeMap::new() }
    }

    pub fn named(name: &str) -> Self {
        BasisToken { parts: vec![name.to_string()], divisor: BTreeMap::new() }
    }

    /// A rational section with the given divisor.
    pub fn section(name: &str, divisor: BTreeMap<Place, i64>) -> Self {
        let divisor = divisor.into_iter().filter(|(_, m)| *m != 0).collect();
        BasisToken { parts: vec![name.to_string()], divisor }
    }

    /// Dual of the class of the canonical uniformizer in the cotangent space at `place`.
    pub fn pi_star(place: &Place) -> Self {
        Self::named(&format!("π*@{}", place.key()))
    }

    /// `Hom_k(K, H)` trivialized by the trace, for `H` the unit twist.
    pub fn trace(ext: &FieldDesc, base: &FieldDesc) -> Self {
        Self::named(&trace_name(ext, base))
    }

    /// Parses the display form: `unit` or factors joined by ` ⊗ `, optionally
    /// followed by ` div m[key] + ...`.
    pub fn parse(src: &str, base: Base) -> Result<Self> {
        let (names, div) = match src.split_once(" div ") {
            Some((n, d)) => (n.trim(), Some(d)),
            None => (src.trim(), None),
        };
        let parts = match names {
            "" => return Err(Error::Parse("empty basis token".into())),
            "unit" => Vec::new(),
            n => n.split('⊗').map(|p| p.trim().to_string()).collect(),
        };
        let mut divisor = BTreeMap::new();
        for term in div.into_iter().flat_map(|d| d.split(" + ")) {
            let bad = || Error::Parse(format!("bad divisor term {term:?}"));
            let (m, rest) = term.trim().split_once('[').ok_or_else(bad)?;
            let key = rest.strip_suffix(']').ok_or_else(bad)?;
            let m: i64 = m.trim().parse().map_err(|_| bad())?;
            *divisor.entry(Place::parse(key, base)?).or_insert(0) += m;
        }
        divisor.retain(|_, m| *m != 0);
        Ok(BasisToken { parts, divisor })
    }

    pub fn name(&self) -> String {
        if self.parts.is_empty() {
            "unit".into()
        } else {
            self.parts.join(" ⊗ ")
        }
    }

    pub fn is_unit(&self) -> bool {
        self.parts.is_empty() && self.divisor.is_empty()
    }

    /// For a token `trace@K/k ⊗ H`, the token `H`.
    pub fn strip_trace(&self, ext: &FieldDesc, base: &FieldDesc) -> Result<BasisToken> {
        let want = trace_name(ext, base);
        if self.parts.first() == Some(&want) {
            Ok(BasisToken { parts: self.parts[1..].to_vec(), divisor: self.divisor.clone() })
        } else {
            Err(Error::BasisMismatch(self.name(), format!("{want} ⊗ H")))
        }
    }

    /// For a token `π*@P ⊗ H`, the token `H`.
    pub fn strip_pi_star(&self, place: &Place) -> Option<BasisToken> {
        let want = BasisToken::pi_star(place).parts.pop()?;
        (self.parts.first() == Some(&want))
            .then(|| BasisToken { parts: self.parts[1..].to_vec(), divisor: self.divisor.clone() })
    }

    /// Order of the named section at a place.
    pub fn order_at(&self, place: &Place) -> i64 {
        self.divisor.get(place).copied().unwrap_or(0)
    }

    pub fn divisor(&self) -> &BTreeMap<Place, i64> {
        &self.divisor
    }

    /// The fibre basis at `place`: the section divided by the `m`-th power of
    /// the canonical uniformizer, `m` being its order there.
    pub fn localized(&self, place: &Place) -> Self {
        let parts = if self.order_at(place) == 0 {
            self.parts.clone()
        } else {
            self.parts.iter().map(|p| format!("{p}@{}", place.key())).collect()
        };
        BasisToken { parts, divisor: BTreeMap::new() }
    }

    pub fn tensor(&self, other: &BasisToken) -> Self {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        let mut divisor = self.divisor.clone();
        for (p, m) in &other.divisor {
            *divisor.entry(p.clone()).or_insert(0) += m;
        }
        divisor.retain(|_, m| *m != 0);
        BasisToken { parts, divisor }
    }
}

fn trace_name(ext: &FieldDesc, base: &FieldDesc) -> String {
    format!("trace@{ext}/{base}")
}

impl fmt::Display for BasisToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())?;
        if !self.divisor.is_empty() {
            let parts: Vec<String> = self.divisor.iter().map(|(p, m)| format!("{m}[{}]", p.key())).collect();
            write!(f, " div {}", parts.join(" + "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BasisToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl Serialize for BasisToken {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An element of a twisted sign-function group.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct TwistedClass {
    pub field: FieldDesc,
    pub body: Body,
    pub basis: BasisToken,
    pub scale: FieldElem,
}

impl TwistedClass {
    pub fn new(field: FieldDesc, body: Body, basis: BasisToken) -> Self {
        let scale = field.one();
        TwistedClass { field, body, basis, scale }
    }

    pub fn zero(field: &FieldDesc, basis: BasisToken) -> Result<Self> {
        Ok(Self::new(field.clone(), Body::constant(field, 0)?, basis))
    }

    /// The same class written in the basis `u * (current basis)`.
    pub fn change_basis(&self, u: &FieldElem) -> Result<TwistedClass> {
        let z = zeta(&self.field, u)?;
        Ok(TwistedClass {
            field: self.field.clone(),
            body: self.body.mul(&z)?,
            basis: self.basis.clone(),
            scale: self.field.mul(&self.scale, u)?,
        })
    }

    /// Rewrites to scale one.
    pub fn normalize(&self) -> Result<TwistedClass> {
        let z = zeta(&self.field, &self.scale)?;
        Ok(TwistedClass::new(self.field.clone(), self.body.mul(&z)?, self.basis.clone()))
    }

    pub fn is_normal(&self) -> bool {
        self.scale == self.field.one()
    }

    /// Equality of classes: same field and token, equal bodies after normalization.
    pub fn same_class(&self, other: &TwistedClass) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis.to_string(), other.basis.to_string()));
        }
        Ok(self.normalize()?.body == other.normalize()?.body)
    }

    pub fn add(&self, other: &TwistedClass) -> Result<TwistedClass> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis.to_string(), other.basis.to_string()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        let (a, b) = (self.normalize()?, other.normalize()?);
        Ok(TwistedClass::new(self.field.clone(), a.body.add(&b.body)?, self.basis.clone()))
    }

    pub fn neg(&self) -> TwistedClass {
        TwistedClass { body: self.body.neg(), ..self.clone() }
    }

    pub fn scale_int(&self, c: i64) -> TwistedClass {
        TwistedClass { body: self.body.scale(c), ..self.clone() }
    }

    pub fn with_basis(&self, basis: BasisToken) -> TwistedClass {
        TwistedClass { basis, ..self.clone() }
    }
}

impl fmt::Debug for TwistedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊗ {}", self.body, self.basis)?;
        if !self.is_normal() {
            write!(f, " (scale {})", self.scale)?;
        }
        Ok(())
    }
}
