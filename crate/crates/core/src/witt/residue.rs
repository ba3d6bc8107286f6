//! Milnor's second residue and the Rost–Schmid differential on `k(t)`.

use std::collections::BTreeMap;

use super::form::{QuadForm, TwistedForm};
use crate::error::{Error, Result};
use crate::spectrum::{Base, BasisToken, FieldDesc, FieldElem, Place, RationalFunction};

/// The curves over which the differential is assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curve {
    A1,
    P1,
}

pub fn function_field_base(field: &FieldDesc) -> Result<Base> {
    match field {
        FieldDesc::FunctionField(b) => Ok(*b),
        other => Err(Error::FieldMismatch(format!("{other} is not a rational function field"))),
    }
}

fn function_entries(q: &QuadForm) -> Result<Vec<&RationalFunction>> {
    q.entries
        .iter()
        .map(|e| e.as_function().ok_or_else(|| Error::FieldMismatch(format!("{e} is not in {}", q.field))))
        .collect()
}

pub fn check_uniformizer(place: &Place, pi: &RationalFunction) -> Result<()> {
    let v = pi.ord_at(place);
    if v == 1 {
        Ok(())
    } else {
        Err(Error::InvalidUniformizer(format!("{pi} has valuation {v} at {place}")))
    }
}

/// Reduction of `a / pi^e` at the place, `e` the valuation of `a`.
pub fn unit_part_residue(a: &RationalFunction, place: &Place, pi: &RationalFunction, base: Base) -> Result<FieldElem> {
    let e = a.ord_at(place);
    let u = a.mul(&pi.pow(-e));
    debug_assert_eq!(u.ord_at(place), 0);
    Ok(u.lead_at(place, base))
}

/// `<u pi^e>` goes to `<u bar>` when `e` is odd and to zero when `e` is even.
pub fn second_residue(q: &QuadForm, place: &Place, pi: &RationalFunction) -> Result<QuadForm> {
    let base = function_field_base(&q.field)?;
    check_uniformizer(place, pi)?;
    let residue_field = place.residue_field(base);
    let mut entries = Vec::new();
    for a in function_entries(q)? {
        if a.ord_at(place) % 2 != 0 {
            entries.push(unit_part_residue(a, place, pi, base)?);
        }
    }
    QuadForm::new(residue_field, entries)
}

/// Normalization hook for the local rings of the curve. All local rings of
/// `A^1` and `P^1` are discrete valuation rings, so each place is its own
/// normalization and the transfer along the fibre is the identity.
fn normalization_fibre(place: &Place) -> Vec<Place> {
    vec![place.clone()]
}

/// Places where some entry, or the twist, has odd order.
pub fn residue_support(q: &TwistedForm, curve: Curve) -> Result<Vec<Place>> {
    let base = function_field_base(q.field())?;
    let mut places: Vec<Place> = Vec::new();
    for a in function_entries(&q.form)? {
        places.extend(a.support(base).into_iter().map(Place::Point));
    }
    places.extend(q.basis.divisor().keys().filter(|p| !matches!(p, Place::Infinity)).cloned());
    if curve == Curve::P1 {
        places.push(Place::Infinity);
    }
    places.sort();
    places.dedup();
    Ok(places)
}

/// The twisted residue at one place with the canonical uniformizer; the twist
/// is first localized by the power of the uniformizer given by its divisor.
pub fn twisted_second_residue(q: &TwistedForm, place: &Place) -> Result<TwistedForm> {
    twisted_second_residue_with(q, place, &place.uniformizer())
}

/// The twisted residue computed with an arbitrary uniformizer `pi = u pi_0`,
/// written in the canonical basis `pi_0*`: since `pi* = u^-1 pi_0*`, the
/// residue form is scaled by the reduction of `u`.
pub fn twisted_second_residue_with(q: &TwistedForm, place: &Place, pi: &RationalFunction) -> Result<TwistedForm> {
    let base = function_field_base(q.field())?;
    let pi0 = place.uniformizer();
    let m = q.basis.order_at(place) as i32;
    let local = if m == 0 { q.form.clone() } else { q.form.scale(&FieldElem::Function(pi0.pow(m)))? };
    let mut r = second_residue(&local, place, pi)?;
    if pi != &pi0 {
        let u = unit_part_residue(&pi.mul(&pi0.inv()), place, &pi0, base)?;
        r = r.scale(&u)?;
    }
    Ok(TwistedForm::new(r, BasisToken::pi_star(place).tensor(&q.basis.localized(place))))
}

/// The field-level Rost–Schmid differential of an element of `W(k(t), H)`.
pub fn rost_schmid_differential(q: &TwistedForm, curve: Curve) -> Result<BTreeMap<Place, TwistedForm>> {
    let mut out = BTreeMap::new();
    for place in residue_support(q, curve)? {
        if curve == Curve::A1 && place == Place::Infinity {
            continue;
        }
        for p in normalization_fibre(&place) {
            let r = twisted_second_residue(q, &p)?;
            if r.form.rank() > 0 {
                out.insert(p, r);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Polynomial};
    use crate::spectrum::ClosedPoint;

    fn qt() -> FieldDesc {
        FieldDesc::FunctionField(Base::Q)
    }

    fn at(p: &[i64]) -> Place {
        Place::Point(ClosedPoint::Poly(Polynomial::from_i64(p)))
    }

    #[test]
    fn residue_examples() {
        let q = QuadForm::parse(&qt(), &["t"]).unwrap();
        let pi = RationalFunction::t();
        let r = second_residue(&q, &at(&[0, 1]), &pi).unwrap();
        assert_eq!(r, QuadForm::from_rationals(&[int(1)]).unwrap());
        let u = QuadForm::parse(&qt(), &["t+1"]).unwrap();
        assert_eq!(second_residue(&u, &at(&[0, 1]), &pi).unwrap().rank(), 0);
        let w = QuadForm::parse(&qt(), &["t*(t-1)"]).unwrap();
        assert_eq!(second_residue(&w, &at(&[0, 1]), &pi).unwrap(), QuadForm::from_rationals(&[int(-1)]).unwrap());
        assert!(second_residue(&q, &at(&[0, 1]), &RationalFunction::parse("t^2").unwrap()).is_err());
    }

    #[test]
    fn differential_examples() {
        let q = TwistedForm::untwisted(QuadForm::parse(&qt(), &["t"]).unwrap());
        let d = rost_schmid_differential(&q, Curve::A1).unwrap();
        assert_eq!(d.len(), 1);
        let r = &d[&at(&[0, 1])];
        assert_eq!(r.form, QuadForm::from_rationals(&[int(1)]).unwrap());
        assert_eq!(r.basis.name(), "π*@t");
        let q = TwistedForm::untwisted(QuadForm::parse(&qt(), &["t^2-2"]).unwrap());
        let d = rost_schmid_differential(&q, Curve::A1).unwrap();
        let r = &d[&at(&[-2, 0, 1])];
        assert_eq!(r.form.field.degree(), Some(2));
        assert_eq!(r.form.rank(), 1);
        let one = TwistedForm::untwisted(QuadForm::parse(&qt(), &["1"]).unwrap());
        assert!(rost_schmid_differential(&one, Curve::P1).unwrap().is_empty());
        // <t> on P^1 also has a residue at infinity
        let q = TwistedForm::untwisted(QuadForm::parse(&qt(), &["t"]).unwrap());
        assert_eq!(rost_schmid_differential(&q, Curve::P1).unwrap().len(), 2);
    }
}
