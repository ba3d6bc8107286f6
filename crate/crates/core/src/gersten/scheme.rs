//! The supported schemes and their dualizing data `O_X ⊗ L[shift]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{parse_polynomial, Polynomial};
use crate::error::{Error, Result};
use crate::spectrum::{Base, BasisToken, ClosedPoint, FieldDesc, Place};
use crate::witt::residue::Curve;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeSpec {
    SpecBase(Base),
    /// `Spec base[x]/(p)` with `p` irreducible over the base.
    SpecFiniteExt(Base, Polynomial),
    A1(Base),
    P1(Base),
}

impl SchemeSpec {
    pub fn spec_finite_ext(base: Base, p: &Polynomial) -> Result<Self> {
        FieldDesc::finite_ext(base, p)?;
        Ok(SchemeSpec::SpecFiniteExt(base, p.monic()))
    }

    /// `name` is one of `spec`, `A1`, `P1` (case-insensitive); `spec` with
    /// an extension polynomial gives `SpecFiniteExt`.
    pub fn parse(name: &str, base: Base, ext: Option<&str>) -> Result<Self> {
        let scheme = match (name.trim().to_ascii_lowercase().as_str(), ext) {
            ("spec", None) | ("point", None) => SchemeSpec::SpecBase(base),
            ("spec", Some(p)) | ("point", Some(p)) => Self::spec_finite_ext(base, &parse_polynomial(p)?)?,
            ("a1", None) => SchemeSpec::A1(base),
            ("p1", None) => SchemeSpec::P1(base),
            (other, Some(_)) if other == "a1" || other == "p1" => {
                return Err(Error::Invalid("--ext only applies to --scheme spec".into()))
            }
            (other, _) => return Err(Error::UnsupportedScheme(other.to_string())),
        };
        Ok(scheme)
    }

    pub fn base(&self) -> Base {
        match self {
            SchemeSpec::SpecBase(b) | SchemeSpec::SpecFiniteExt(b, _) | SchemeSpec::A1(b) | SchemeSpec::P1(b) => *b,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            SchemeSpec::SpecBase(_) | SchemeSpec::SpecFiniteExt(..) => 0,
            SchemeSpec::A1(_) | SchemeSpec::P1(_) => 1,
        }
    }

    pub fn curve(&self) -> Option<Curve> {
        match self {
            SchemeSpec::A1(_) => Some(Curve::A1),
            SchemeSpec::P1(_) => Some(Curve::P1),
            _ => None,
        }
    }

    /// The residue field at the generic point.
    pub fn generic_field(&self) -> FieldDesc {
        match self {
            SchemeSpec::SpecBase(b) => b.field(),
            SchemeSpec::SpecFiniteExt(b, p) => FieldDesc::FiniteExt { base: *b, modulus: p.clone() },
            SchemeSpec::A1(b) | SchemeSpec::P1(b) => FieldDesc::FunctionField(*b),
        }
    }

    /// Codimension of a point: 0 for the generic point, 1 for closed points of a curve.
    pub fn codimension(&self, place: Option<&Place>) -> usize {
        match place {
            None => 0,
            Some(_) => 1,
        }
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeSpec::SpecBase(b) => write!(f, "Spec {}", b.name()),
            SchemeSpec::SpecFiniteExt(..) => write!(f, "Spec {}", self.generic_field()),
            SchemeSpec::A1(b) => write!(f, "A1_{}", b.name()),
            SchemeSpec::P1(b) => write!(f, "P1_{}", b.name()),
        }
    }
}

impl Serialize for SchemeSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bundle {
    /// `O(n) = O(n [inf])`; on the affine line and on points it restricts to the trivial bundle.
    O(i64),
    /// `O(D)` for a divisor supported on finite closed points.
    Divisor(BTreeMap<ClosedPoint, i64>),
}

impl Bundle {
    /// `O(n)`, or a JSON object mapping point keys to multiplicities.
    pub fn parse(src: &str, base: Base) -> Result<Bundle> {
        let s = src.trim();
        if let Some(inner) = s.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
            let n = inner.trim().parse().map_err(|_| Error::Parse(format!("bad bundle {src:?}")))?;
            return Ok(Bundle::O(n));
        }
        let map: BTreeMap<String, i64> = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("bundle must be O(n) or a divisor object: {e}")))?;
        let mut div = BTreeMap::new();
        for (k, v) in map {
            if k.trim() == "inf" {
                return Err(Error::Invalid("use O(n) for multiples of the point at infinity".into()));
            }
            *div.entry(ClosedPoint::parse(&k, base)?).or_insert(0) += v;
        }
        Ok(Bundle::Divisor(div))
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bundle::O(n) => write!(f, "O({n})"),
            Bundle::Divisor(d) => {
                let parts: Vec<String> = d.iter().map(|(p, m)| format!("{m}[{p}]")).collect();
                write!(f, "O({})", parts.join(" + "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualizingData {
    pub bundle: Bundle,
    pub shift: i64,
}

impl DualizingData {
    pub fn trivial() -> Self {
        DualizingData { bundle: Bundle::O(0), shift: 0 }
    }

    pub fn o(n: i64) -> Self {
        DualizingData { bundle: Bundle::O(n), shift: 0 }
    }

    pub fn divisor_bundle(div: BTreeMap<ClosedPoint, i64>) -> Self {
        DualizingData { bundle: Bundle::Divisor(div), shift: 0 }
    }

    /// Divisor of the fixed rational section, as seen on `x`.
    pub fn divisor(&self, x: &SchemeSpec) -> Result<BTreeMap<Place, i64>> {
        let mut out = BTreeMap::new();
        match &self.bundle {
            Bundle::O(n) => {
                if let (SchemeSpec::P1(_), true) = (x, *n != 0) {
                    out.insert(Place::Infinity, *n);
                }
            }
            Bundle::Divisor(d) => {
                if x.dimension() == 0 && d.values().any(|m| *m != 0) {
                    return Err(Error::UnsupportedScheme(format!("a divisor on the point {x}")));
                }
                for (p, m) in d {
                    if p.base() != x.base() {
                        return Err(Error::FieldMismatch(format!("point {p} is not a point of {x}")));
                    }
                    if *m != 0 {
                        out.insert(Place::Point(p.clone()), *m);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Basis token of the fixed rational section.
    pub fn section_basis(&self, x: &SchemeSpec) -> Result<BasisToken> {
        let div = self.divisor(x)?;
        Ok(if div.is_empty() { BasisToken::unit() } else { BasisToken::section("L", div) })
    }
}

impl Serialize for DualizingData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DualizingData", 2)?;
        st.serialize_field("bundle", &self.bundle.to_string())?;
        st.serialize_field("shift", &self.shift)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_schemes() {
        assert_eq!(SchemeSpec::parse("P1", Base::RealClosure, None).unwrap(), SchemeSpec::P1(Base::RealClosure));
        let s = SchemeSpec::parse("spec", Base::Q, Some("x^2-2")).unwrap();
        assert_eq!(s.to_string(), "Spec Q[x]/(x^2 - 2)");
        assert!(SchemeSpec::parse("spec", Base::Q, Some("x^2-1")).is_err());
        assert!(SchemeSpec::parse("A2", Base::Q, None).is_err());
    }

    #[test]
    fn bundles() {
        let p1 = SchemeSpec::P1(Base::Q);
        let d = DualizingData { bundle: Bundle::parse("O(-3)", Base::Q).unwrap(), shift: 0 };
        assert_eq!(d.divisor(&p1).unwrap().get(&Place::Infinity), Some(&-3));
        assert!(d.divisor(&SchemeSpec::A1(Base::Q)).unwrap().is_empty());
        let b = Bundle::parse(r#"{"t^2-2": 1, "t": -1}"#, Base::Q).unwrap();
        let d = DualizingData { bundle: b, shift: 1 };
        assert_eq!(d.divisor(&p1).unwrap().len(), 2);
        assert_eq!(DualizingData::trivial().section_basis(&p1).unwrap(), BasisToken::unit());
        assert!(Bundle::parse("O(x)", Base::Q).is_err());
    }
}
