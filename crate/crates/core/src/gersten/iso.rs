//! The complex of Witt-side generators mapped through the total signature,
//! compared with the complex of sign functions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::complex::{assemble, cohomology, default_support, Assembly};
use super::realize::realize_sign_pattern;
use super::scheme::{DualizingData, SchemeSpec};
use crate::abelian::{FPAbGroup, IntMatrix, Lattice};
use crate::arith::{Polynomial, Rational, RealAlgebraic};
use crate::error::{Error, Result};
use crate::spectrum::{orderings_of, Base, ClosedPoint, Factor, FieldElem, Place, RationalFunction, SignVector};
use crate::witt::residue::rost_schmid_differential;
use crate::witt::{pfister_signature, total_signature, PfisterElement, TwistedForm};

#[derive(Clone, Debug, Serialize)]
pub struct SignIsoReport {
    pub scheme: SchemeSpec,
    pub sign_side: (FPAbGroup, FPAbGroup),
    pub witt_side: (FPAbGroup, FPAbGroup),
    /// The Witt-side matrix agrees entrywise with the sign-side one (curves only).
    pub matrices_agree: bool,
    pub ok: bool,
}

fn linear(base: Base, c: &Rational) -> RationalFunction {
    // t - c
    match base {
        Base::Q => RationalFunction::from_factor(Factor::Poly(Polynomial::linear_root(c)), 1),
        Base::RealClosure => RationalFunction::linear(&RealAlgebraic::from_rational(c)),
    }
}

fn rational_point(base: Base, c: &Rational) -> Place {
    match base {
        Base::Q => Place::Point(ClosedPoint::rational(c)),
        Base::RealClosure => Place::Point(ClosedPoint::Real(RealAlgebraic::from_rational(c))),
    }
}

/// The support refined by rational points `c_a < a < d_a` around every real
/// point `a`, with no other real point of the support in `[c_a, d_a]`.
/// Returns the refined support and for every real point `(a, q_a, c_a, d_a)`.
#[allow(clippy::type_complexity)]
fn refine(
    x: &SchemeSpec,
    d: &DualizingData,
) -> Result<(Vec<Place>, Vec<(RealAlgebraic, RationalFunction, Rational, Rational)>)> {
    let base = x.base();
    let coarse = assemble(x, d, &default_support(x, d)?)?;
    let mut owners: Vec<(RealAlgebraic, RationalFunction)> = Vec::new();
    for p in &coarse.support {
        if let Place::Point(cp) = p {
            for a in cp.real_points() {
                owners.push((a, cp.generator()));
            }
        }
    }
    owners.sort_by(|a, b| a.0.cmp(&b.0));
    let n = owners.len();
    let mut marks = Vec::with_capacity(n);
    let mut support = coarse.support.clone();
    for i in 0..n {
        let a = &owners[i].0;
        let c = match i {
            0 => a.rational_below(),
            _ => {
                let m = RealAlgebraic::from_rational(&owners[i - 1].0.rational_between(a));
                m.rational_between(a)
            }
        };
        let dd = match i + 1 < n {
            false => a.rational_above(),
            true => {
                let m = RealAlgebraic::from_rational(&a.rational_between(&owners[i + 1].0));
                a.rational_between(&m)
            }
        };
        support.push(rational_point(base, &c));
        support.push(rational_point(base, &dd));
        marks.push((a.clone(), owners[i].1.clone(), c, dd));
    }
    Ok((support, marks))
}

/// 3-fold Pfister forms over `k(t)` whose signatures are 8 times the interval
/// indicators of the refined subdivision, in increasing order.
fn interval_generators(
    base: Base,
    marks: &[(RealAlgebraic, RationalFunction, Rational, Rational)],
) -> Vec<[RationalFunction; 3]> {
    let minus = RationalFunction::constant(crate::arith::int(-1)).expect("nonzero");
    let tc = |c: &Rational| linear(base, c);
    let ct = |c: &Rational| linear(base, c).scale(&crate::arith::int(-1));
    if marks.is_empty() {
        return vec![[minus.clone(), minus.clone(), minus]];
    }
    let mut out = Vec::new();
    // <<a>> has signature 2 [a < 0]
    out.push([tc(&marks[0].2), minus.clone(), minus.clone()]);
    for (i, (_, q, c, d)) in marks.iter().enumerate() {
        let left = q.sign_at_rational(c) as i64;
        let right = q.sign_at_rational(d) as i64;
        out.push([ct(c), tc(d), q.scale(&crate::arith::int(-left))]);
        out.push([ct(c), tc(d), q.scale(&crate::arith::int(-right))]);
        match marks.get(i + 1) {
            Some((_, _, c2, _)) => out.push([ct(d), tc(c2), minus.clone()]),
            None => out.push([ct(d), minus.clone(), minus.clone()]),
        }
    }
    out
}

fn witt_side_matrix(
    x: &SchemeSpec,
    d: &DualizingData,
    a: &Assembly,
    gens: &[[RationalFunction; 3]],
) -> Result<IntMatrix> {
    let curve = x.curve().expect("curve");
    let field = x.generic_field();
    let basis = d.section_basis(x)?;
    let index: BTreeMap<(Place, usize), usize> = a.rows.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut m = vec![vec![BigInt::from(0); gens.len()]; a.rows.len()];
    for (k, g) in gens.iter().enumerate() {
        let slots = g.iter().cloned().map(FieldElem::Function).collect();
        let form = PfisterElement::new(field.clone(), 3, vec![(field.one(), slots)])?.to_form()?;
        let q = TwistedForm::new(form, basis.clone());
        for (place, r) in rost_schmid_differential(&q, curve)? {
            let s = total_signature(&r)?.normalize()?;
            let v = s.body.as_sign().ok_or_else(|| Error::FieldMismatch("expected a sign vector".into()))?;
            for (i, e) in v.entries.iter().enumerate() {
                if e % 4 != 0 {
                    return Err(Error::Invalid(format!("signature {e} of a residue of I^3 is not in 4Z")));
                }
                let row = index
                    .get(&(place.clone(), i))
                    .ok_or_else(|| Error::Invalid(format!("Witt residue leaves the support at {place}")))?;
                m[*row][k] = BigInt::from(e / 4);
            }
        }
    }
    Ok(m)
}

/// Computes the cohomology of the complex spanned by Witt-side generators
/// (Pfister forms over the generic point, residues through `total_signature`,
/// normalized by `2^j`) and compares it with the sign-function complex.
pub fn sign_iso_check(x: &SchemeSpec, d: &DualizingData) -> Result<SignIsoReport> {
    let sign_side = cohomology(x, d)?;
    if x.dimension() == 0 {
        let f = x.generic_field();
        let n = orderings_of(&f)?.len();
        let mut gens: IntMatrix = Vec::new();
        for i in 0..n {
            let w = SignVector::new(f.clone(), (0..n).map(|k| if k == i { 2 } else { 0 }).collect())?;
            let e = realize_sign_pattern(&f, &w)?;
            let s = pfister_signature(&e)?;
            let v = s.body.as_sign().expect("finite field of orderings");
            gens.push(v.entries.iter().map(|x| BigInt::from(x / 2)).collect());
        }
        let lattice = Lattice::from_generators(n, gens);
        let witt_side = (FPAbGroup::free(lattice.rank()), FPAbGroup::zero());
        let ok = lattice == Lattice::full(n) && witt_side == sign_side;
        return Ok(SignIsoReport { scheme: x.clone(), sign_side, witt_side, matrices_agree: ok, ok });
    }
    let (support, marks) = refine(x, d)?;
    let a = assemble(x, d, &support)?;
    let gens = interval_generators(x.base(), &marks);
    if gens.len() != a.cols() {
        return Err(Error::Invalid(format!("{} generators for {} intervals", gens.len(), a.cols())));
    }
    let m = witt_side_matrix(x, d, &a, &gens)?;
    let witt_side = (FPAbGroup::free(Lattice::kernel(a.cols(), &m).rank()), FPAbGroup::cokernel(a.rows.len(), &m));
    let matrices_agree = m == a.matrix;
    let ok = matrices_agree && witt_side == sign_side && (a.h0(), a.h1()) == sign_side;
    Ok(SignIsoReport { scheme: x.clone(), sign_side, witt_side, matrices_agree, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_sample() {
        for x in [SchemeSpec::A1(Base::Q), SchemeSpec::P1(Base::RealClosure), SchemeSpec::P1(Base::Q)] {
            for n in [-1, 0, 2] {
                let r = sign_iso_check(&x, &DualizingData::o(n)).unwrap();
                assert!(r.ok, "{x} O({n}): {r:?}");
            }
        }
        let k = SchemeSpec::spec_finite_ext(Base::Q, &Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        assert!(sign_iso_check(&k, &DualizingData::trivial()).unwrap().ok);
    }
}
