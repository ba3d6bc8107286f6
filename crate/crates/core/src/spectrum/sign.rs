//! Sign vectors over fields with finitely many orderings, and the sign map.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Base, FieldDesc, FieldElem};
use super::function::RationalFunction;
use super::step::StepFunction;
use crate::arith::rational::sign;
use crate::arith::{int, isolate_real_roots, sign_at, RealAlgebraic};
use crate::error::{Error, Result};

/// An integer function on the finite set of orderings of a field.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignVector {
    pub field: FieldDesc,
    pub entries: Vec<i64>,
}

impl SignVector {
    pub fn new(field: FieldDesc, entries: Vec<i64>) -> Result<Self> {
        let n = orderings_of(&field)?.len();
        if entries.len() != n {
            return Err(Error::Invalid(format!("{field} has {n} orderings, got {} entries", entries.len())));
        }
        Ok(SignVector { field, entries })
    }

    pub fn constant(field: &FieldDesc, c: i64) -> Result<Self> {
        let n = orderings_of(field)?.len();
        Ok(SignVector { field: field.clone(), entries: vec![c; n] })
    }

    pub fn zero(field: &FieldDesc) -> Result<Self> {
        Self::constant(field, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn zip(&self, other: &SignVector, f: impl Fn(i64, i64) -> i64) -> Result<SignVector> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(SignVector {
            field: self.field.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &SignVector) -> Result<SignVector> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SignVector) -> Result<SignVector> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &SignVector) -> Result<SignVector> {
        self.zip(other, |a, b| a * b)
    }

    pub fn neg(&self) -> SignVector {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> SignVector {
        SignVector { field: self.field.clone(), entries: self.entries.iter().map(|e| c * e).collect() }
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over {}", self.entries, self.field)
    }
}

/// The orderings of a field with finitely many of them, as the sorted real
/// roots of its modulus. The base fields count as `Q[x]/(x)` and `Ralg[x]/(x)`.
pub fn orderings_of(field: &FieldDesc) -> Result<Vec<RealAlgebraic>> {
    match field {
        FieldDesc::Q | FieldDesc::RealClosure => Ok(vec![RealAlgebraic::from_rational(&int(0))]),
        FieldDesc::FiniteExt { modulus, .. } => isolate_real_roots(modulus),
        FieldDesc::FunctionField(_) => Err(Error::FunctionFieldOrderings),
    }
}

/// Value of an integer function on the real spectrum of some field.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Body {
    Sign(SignVector),
    Step(StepFunction),
}

impl Body {
    pub fn constant(field: &FieldDesc, c: i64) -> Result<Body> {
        match field {
            FieldDesc::FunctionField(_) => Ok(Body::Step(StepFunction::constant(c))),
            _ => Ok(Body::Sign(SignVector::constant(field, c)?)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Body::Sign(v) => v.is_zero(),
            Body::Step(s) => s.is_zero(),
        }
    }

    pub fn add(&self, other: &Body) -> Result<Body> {
        match (self, other) {
            (Body::Sign(a), Body::Sign(b)) => Ok(Body::Sign(a.add(b)?)),
            (Body::Step(a), Body::Step(b)) => Ok(Body::Step(a.add(b))),
            _ => Err(Error::FieldMismatch("sign vector vs step function".into())),
        }
    }

    pub fn mul(&self, other: &Body) -> Result<Body> {
        match (self, other) {
            (Body::Sign(a), Body::Sign(b)) => Ok(Body::Sign(a.mul(b)?)),
            (Body::Step(a), Body::Step(b)) => Ok(Body::Step(a.mul(b))),
            _ => Err(Error::FieldMismatch("sign vector vs step function".into())),
        }
    }

    pub fn neg(&self) -> Body {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> Body {
        match self {
            Body::Sign(a) => Body::Sign(a.scale(c)),
            Body::Step(a) => Body::Step(a.scale(c)),
        }
    }

    pub fn as_sign(&self) -> Option<&SignVector> {
        match self {
            Body::Sign(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_step(&self) -> Option<&StepFunction> {
        match self {
            Body::Step(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Debug for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Sign(v) => write!(f, "{v:?}"),
            Body::Step(s) => write!(f, "{s:?}"),
        }
    }
}

/// The sign map: the function sending each ordering to the sign of `f` there.
pub fn zeta(field: &FieldDesc, f: &FieldElem) -> Result<Body> {
    field.check(f).map_err(|e| match f {
        FieldElem::Rational(q) if num_traits::Zero::is_zero(q) => Error::SignOfZero,
        _ => e,
    })?;
    Ok(match f {
        FieldElem::Rational(q) => Body::Sign(SignVector { field: field.clone(), entries: vec![sign(q) as i64] }),
        FieldElem::RealSign(s) => Body::Sign(SignVector { field: field.clone(), entries: vec![*s as i64] }),
        FieldElem::Complex => Body::Sign(SignVector { field: field.clone(), entries: Vec::new() }),
        FieldElem::Algebraic(p) => Body::Sign(SignVector {
            field: field.clone(),
            entries: orderings_of(field)?.iter().map(|a| sign_at(p, a) as i64).collect(),
        }),
        FieldElem::Function(r) => Body::Step(zeta_function(r)),
    })
}

/// The sign map on `k(t)`: breakpoints at the real zeros and poles of odd order.
pub fn zeta_function(f: &RationalFunction) -> StepFunction {
    let all = f.real_roots(false);
    if all.is_empty() {
        return StepFunction::constant(f.sign_at_infinity(true) as i64);
    }
    let mut values = Vec::with_capacity(all.len() + 1);
    values.push(f.sign_at_rational(&all[0].rational_below()) as i64);
    for w in all.windows(2) {
        values.push(f.sign_at_rational(&w[0].rational_between(&w[1])) as i64);
    }
    values.push(f.sign_at_rational(&all.last().unwrap().rational_above()) as i64);
    StepFunction::normalized(all, values)
}

/// The sign map for an element given over a base field.
pub fn zeta_base(base: Base, f: &FieldElem) -> Result<Body> {
    zeta(&base.field(), f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Polynomial};
    use crate::spectrum::step::Cut;

    #[test]
    fn ordering_sets() {
        assert_eq!(orderings_of(&FieldDesc::Q).unwrap().len(), 1);
        let k = FieldDesc::finite_ext(Base::Q, &Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(orderings_of(&k).unwrap().len(), 2);
        let i = FieldDesc::finite_ext(Base::Q, &Polynomial::from_i64(&[1, 0, 1])).unwrap();
        assert!(orderings_of(&i).unwrap().is_empty());
        assert_eq!(orderings_of(&FieldDesc::FunctionField(Base::Q)).unwrap_err(), Error::FunctionFieldOrderings);
    }

    #[test]
    fn sign_map_examples() {
        let z = zeta(&FieldDesc::Q, &FieldElem::Rational(rat(-3, 1))).unwrap();
        assert_eq!(z.as_sign().unwrap().entries, vec![-1]);
        let qt = FieldDesc::FunctionField(Base::Q);
        let t = qt.parse_elem("t").unwrap();
        let s = zeta(&qt, &t).unwrap();
        let s = s.as_step().unwrap();
        assert_eq!(s.values(), &[-1, 1]);
        assert_eq!(s.evaluate(&Cut::Above(RealAlgebraic::from_rational(&rat(0, 1)))), 1);
        let s = zeta(&qt, &qt.parse_elem("t^2-2").unwrap()).unwrap();
        assert_eq!(s.as_step().unwrap().values(), &[1, -1, 1]);
        let s = zeta(&qt, &qt.parse_elem("(t-1)^2").unwrap()).unwrap();
        assert_eq!(s.as_step().unwrap(), &StepFunction::constant(1));
        let k = FieldDesc::finite_ext(Base::Q, &Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        let z = zeta(&k, &k.parse_elem("x").unwrap()).unwrap();
        assert_eq!(z.as_sign().unwrap().entries, vec![-1, 1]);
        assert_eq!(zeta(&FieldDesc::Q, &FieldElem::Rational(rat(0, 1))).unwrap_err(), Error::SignOfZero);
    }
}
