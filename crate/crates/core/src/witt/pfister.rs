//! Elements of the fundamental ideals as sums of scaled Pfister forms.

use std::fmt;

use serde::{Serialize, Serializer};

use super::form::QuadForm;
use crate::error::{Error, Result};
use crate::spectrum::{zeta, BasisToken, Body, FieldDesc, FieldElem, TwistedClass};

/// `sum scalar * <<a_1, ..., a_j>>` with `<<a>> = <1, -a>`.
#[derive(Clone, PartialEq, Eq)]
pub struct PfisterElement {
    pub field: FieldDesc,
    pub j: usize,
    pub terms: Vec<(FieldElem, Vec<FieldElem>)>,
}

impl PfisterElement {
    pub fn new(field: FieldDesc, j: usize, terms: Vec<(FieldElem, Vec<FieldElem>)>) -> Result<Self> {
        for (c, slots) in &terms {
            field.check(c)?;
            if slots.len() != j {
                return Err(Error::Invalid(format!("{j}-fold Pfister term with {} slots", slots.len())));
            }
            for a in slots {
                field.check(a)?;
            }
        }
        Ok(PfisterElement { field, j, terms })
    }

    pub fn zero(field: &FieldDesc, j: usize) -> Self {
        PfisterElement { field: field.clone(), j, terms: Vec::new() }
    }

    pub fn add(&self, other: &PfisterElement) -> Result<PfisterElement> {
        if self.field != other.field || self.j != other.j {
            return Err(Error::FieldMismatch(format!(
                "I^{} over {} vs I^{} over {}",
                self.j, self.field, other.j, other.field
            )));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(PfisterElement { field: self.field.clone(), j: self.j, terms })
    }

    /// The diagonal form `sum scalar * prod <1, -a_i>`.
    pub fn to_form(&self) -> Result<QuadForm> {
        let mut entries = Vec::new();
        for (c, slots) in &self.terms {
            let mut cur = vec![c.clone()];
            for a in slots {
                let na = self.field.neg(a)?;
                let mut next = Vec::with_capacity(cur.len() * 2);
                for x in &cur {
                    next.push(x.clone());
                    next.push(self.field.mul(x, &na)?);
                }
                cur = next;
            }
            entries.extend(cur);
        }
        QuadForm::new(self.field.clone(), entries)
    }
}

impl fmt::Debug for PfisterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, s)| {
                let slots: Vec<String> = s.iter().map(|a| a.to_string()).collect();
                format!("<{c}><<{}>>", slots.join(", "))
            })
            .collect();
        write!(f, "I^{}[{}] over {}", self.j, parts.join(" + "), self.field)
    }
}

impl Serialize for PfisterElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Term {
            scalar: String,
            slots: Vec<String>,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(c, sl)| Term { scalar: c.to_string(), slots: sl.iter().map(|a| a.to_string()).collect() })
            .collect();
        let mut st = s.serialize_struct("PfisterElement", 3)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("j", &self.j)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Pointwise `sign(scalar) * prod (1 - sign(a_i))`.
pub fn pfister_signature(e: &PfisterElement) -> Result<TwistedClass> {
    let one = Body::constant(&e.field, 1)?;
    let mut acc = Body::constant(&e.field, 0)?;
    for (c, slots) in &e.terms {
        let mut term = zeta(&e.field, c)?;
        for a in slots {
            term = term.mul(&one.add(&zeta(&e.field, a)?.neg())?)?;
        }
        acc = acc.add(&term)?;
    }
    Ok(TwistedClass::new(e.field.clone(), acc, BasisToken::unit()))
}

/// Multiplication by `<<-1>>`, the transition map of the colimit `I^infinity`.
pub fn shift_by_minus_one(e: &PfisterElement) -> Result<PfisterElement> {
    let m = e.field.from_rational(&crate::arith::int(-1))?;
    let terms = e
        .terms
        .iter()
        .map(|(c, s)| {
            let mut s = s.clone();
            s.push(m.clone());
            (c.clone(), s)
        })
        .collect();
    Ok(PfisterElement { field: e.field.clone(), j: e.j + 1, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::form::TwistedForm;
    use crate::witt::total_signature;

    fn q(s: &str) -> FieldElem {
        FieldDesc::Q.parse_elem(s).unwrap()
    }

    #[test]
    fn signature_examples() {
        let one = q("1");
        let e = PfisterElement::new(FieldDesc::Q, 1, vec![(one.clone(), vec![q("-1")])]).unwrap();
        assert_eq!(pfister_signature(&e).unwrap().body.as_sign().unwrap().entries, vec![2]);
        let h = PfisterElement::new(FieldDesc::Q, 1, vec![(one.clone(), vec![q("1")])]).unwrap();
        assert_eq!(pfister_signature(&h).unwrap().body.as_sign().unwrap().entries, vec![0]);
        let f = PfisterElement::new(FieldDesc::Q, 2, vec![(one, vec![q("-1"), q("-1")])]).unwrap();
        assert_eq!(pfister_signature(&f).unwrap().body.as_sign().unwrap().entries, vec![4]);
        assert_eq!(shift_by_minus_one(&e).unwrap(), f);
    }

    #[test]
    fn expansion_matches_signature() {
        let e = PfisterElement::new(FieldDesc::Q, 2, vec![(q("-3"), vec![q("-2"), q("5")])]).unwrap();
        let form = TwistedForm::untwisted(e.to_form().unwrap());
        assert_eq!(form.form.rank(), 4);
        assert_eq!(total_signature(&form).unwrap().body, pfister_signature(&e).unwrap().body);
    }
}
