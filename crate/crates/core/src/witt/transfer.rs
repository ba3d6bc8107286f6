//! Trace forms and the Scharlau transfer along finite extensions.

use super::form::{diagonalize, QuadForm, TwistedForm};
use crate::arith::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::spectrum::field::nf_trace;
use crate::spectrum::{Base, FieldDesc, FieldElem};

/// The base of a finite extension (a base field is its own base).
pub fn base_of(field: &FieldDesc) -> Result<FieldDesc> {
    match field {
        FieldDesc::Q | FieldDesc::FiniteExt { base: Base::Q, .. } => Ok(FieldDesc::Q),
        FieldDesc::RealClosure | FieldDesc::FiniteExt { base: Base::RealClosure, .. } => Ok(FieldDesc::RealClosure),
        FieldDesc::FunctionField(_) => Err(Error::Unsupported("transfer from a function field".into())),
    }
}

/// `Tr(a x^i x^j)` in the power basis of `Q[x]/(m)`.
pub fn trace_gram(a: &Polynomial, m: &Polynomial) -> Vec<Vec<Rational>> {
    let n = m.deg();
    let mut powers = vec![Polynomial::one()];
    for _ in 1..2 * n {
        let next = (powers.last().unwrap() * &Polynomial::x()).rem(m);
        powers.push(next);
    }
    let traces: Vec<Rational> = powers.iter().map(|p| nf_trace(&(a * p).rem(m), m)).collect();
    (0..n).map(|i| (0..n).map(|j| traces[i + j].clone()).collect()).collect()
}

/// The transfer of the one-dimensional form `<a>`.
fn transfer_entry(field: &FieldDesc, a: &FieldElem) -> Result<QuadForm> {
    let base = base_of(field)?;
    match (field, a) {
        (FieldDesc::FiniteExt { base: Base::Q, modulus }, FieldElem::Algebraic(p)) => {
            diagonalize(&trace_gram(p, modulus))
        }
        (FieldDesc::FiniteExt { base: Base::Q, .. }, FieldElem::Rational(q)) => {
            // degree-one extension stored with rational elements
            QuadForm::new(base, vec![FieldElem::Rational(q.clone())])
        }
        (FieldDesc::Q | FieldDesc::RealClosure, e) => QuadForm::new(base, vec![e.clone()]),
        (FieldDesc::FiniteExt { base: Base::RealClosure, modulus }, e) if modulus.deg() == 1 => {
            QuadForm::new(base, vec![e.clone()])
        }
        (FieldDesc::FiniteExt { base: Base::RealClosure, .. }, FieldElem::Complex) => {
            // every complex number is a square, and the trace form of C/R is <2, -2>
            QuadForm::new(base, vec![FieldElem::RealSign(1), FieldElem::RealSign(-1)])
        }
        _ => Err(Error::FieldMismatch(format!("{a} in {field}"))),
    }
}

/// The trace form of `K` over its base.
pub fn trace_form(field: &FieldDesc) -> Result<QuadForm> {
    transfer_entry(field, &field.one())
}

/// Scharlau transfer along the trace; the twist `trace@K/k ⊗ H` becomes `H`.
pub fn scharlau_transfer(q: &TwistedForm) -> Result<TwistedForm> {
    let field = q.field();
    let base = base_of(field)?;
    let basis = q.basis.strip_trace(field, &base)?;
    let mut entries = Vec::new();
    for a in &q.form.entries {
        entries.extend(transfer_entry(field, a)?.entries);
    }
    Ok(TwistedForm::new(QuadForm::new(base, entries)?, basis))
}
