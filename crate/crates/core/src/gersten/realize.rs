//! Realizing integer functions on a finite real spectrum as signatures of Pfister elements.

use crate::arith::{int, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::spectrum::{orderings_of, zeta, Body, FieldDesc, FieldElem, SignVector};
use crate::witt::PfisterElement;

pub const DEFAULT_HEIGHT_BOUND: u64 = 50;

/// The search bound, overridable through `REAL_GERSTEN_HEIGHT_BOUND`.
pub fn height_bound() -> u64 {
    std::env::var("REAL_GERSTEN_HEIGHT_BOUND")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_HEIGHT_BOUND)
}

fn signs_of(field: &FieldDesc, a: &FieldElem) -> Result<Vec<i64>> {
    match zeta(field, a)? {
        Body::Sign(v) => Ok(v.entries),
        Body::Step(_) => Err(Error::FunctionFieldOrderings),
    }
}

/// Calls `visit` on every integer vector of length `n` with sup norm exactly `h`,
/// in lexicographic order, until it returns `Some`.
fn shell<T>(n: usize, h: i64, visit: &mut impl FnMut(&[i64]) -> Option<T>) -> Option<T> {
    let mut v = vec![-h; n];
    loop {
        if v.iter().any(|c| c.abs() == h) {
            if let Some(t) = visit(&v) {
                return Some(t);
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if v[i] < h {
                v[i] += 1;
                break;
            }
            v[i] = -h;
        }
    }
}

/// An element negative at ordering `i` and positive at every other ordering,
/// of least height in the power basis.
pub fn sign_pattern_element(field: &FieldDesc, i: usize, bound: u64) -> Result<FieldElem> {
    let count = orderings_of(field)?.len();
    if i >= count {
        return Err(Error::Invalid(format!("{field} has {count} orderings, no ordering {i}")));
    }
    let modulus = match field {
        FieldDesc::Q | FieldDesc::RealClosure => return field.from_rational(&int(-1)),
        FieldDesc::FiniteExt { modulus, .. } => modulus,
        FieldDesc::FunctionField(_) => return Err(Error::FunctionFieldOrderings),
    };
    let want: Vec<i64> = (0..count).map(|k| if k == i { -1 } else { 1 }).collect();
    for h in 1..=bound as i64 {
        let found = shell(modulus.deg(), h, &mut |c| {
            let a =
                FieldElem::Algebraic(Polynomial::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect()));
            match signs_of(field, &a) {
                Ok(s) if s == want => Some(a),
                _ => None,
            }
        });
        if let Some(a) = found {
            return Ok(a);
        }
    }
    Err(Error::SearchExhausted(bound))
}

fn two_adic(n: i64) -> u32 {
    n.unsigned_abs().trailing_zeros()
}

/// `I^j` element whose signature is `w`, `w` in the image of `Sign` on `W(F)`:
/// all entries have one parity. For odd entries `j = 0` and the element is a
/// sum of rank-one forms; otherwise `j` is the least 2-adic valuation of the
/// entries and the terms are `<±1><<a_i, -1, ..., -1>>` with `a_i` negative exactly at ordering `i`.
pub fn realize_sign_pattern(field: &FieldDesc, w: &SignVector) -> Result<PfisterElement> {
    realize_with_bound(field, w, height_bound())
}

pub fn realize_with_bound(field: &FieldDesc, w: &SignVector, bound: u64) -> Result<PfisterElement> {
    if &w.field != field {
        return Err(Error::FieldMismatch(format!("{} vs {field}", w.field)));
    }
    let n = orderings_of(field)?.len();
    if w.entries.len() != n {
        return Err(Error::Invalid(format!("{} entries for {n} orderings", w.entries.len())));
    }
    if w.is_zero() {
        return Ok(PfisterElement::zero(field, 0));
    }
    let odd = w.entries[0] % 2 != 0;
    if w.entries.iter().any(|e| (e % 2 != 0) != odd) {
        return Err(Error::Invalid(format!(
            "{:?} mixes parities; use realize_in_colimit for the I^infinity normalization",
            w.entries
        )));
    }
    let one = field.one();
    let minus_one = field.from_rational(&int(-1))?;
    let elems: Vec<FieldElem> = (0..n).map(|i| sign_pattern_element(field, i, bound)).collect::<Result<_>>()?;
    let mut terms = Vec::new();
    if odd {
        // w = sig<1> + sum (w_i - 1)/2 * sig(<1> + <-a_i>)
        terms.push((one.clone(), Vec::new()));
        for (i, a) in elems.iter().enumerate() {
            let k = (w.entries[i] - 1) / 2;
            let c = if k >= 0 { one.clone() } else { minus_one.clone() };
            let na = field.neg(a)?;
            for _ in 0..k.unsigned_abs() {
                terms.push((c.clone(), Vec::new()));
                terms.push((field.mul(&c, &na)?, Vec::new()));
            }
        }
        return PfisterElement::new(field.clone(), 0, terms);
    }
    let j = w.entries.iter().filter(|e| **e != 0).map(|e| two_adic(*e)).min().expect("nonzero entry") as usize;
    let unit = 1i64 << j;
    for (i, a) in elems.iter().enumerate() {
        let k = w.entries[i] / unit;
        let c = if k >= 0 { one.clone() } else { minus_one.clone() };
        let mut slots = vec![a.clone()];
        slots.extend(std::iter::repeat_n(minus_one.clone(), j - 1));
        for _ in 0..k.unsigned_abs() {
            terms.push((c.clone(), slots.clone()));
        }
    }
    PfisterElement::new(field.clone(), j, terms)
}

/// An element of `I^j`, `j >= 1`, with signature `2w`, representing `w` in the colimit
/// `I^infinity` normalized by `Sign / 2^j`.
pub fn realize_in_colimit(field: &FieldDesc, w: &SignVector) -> Result<PfisterElement> {
    let doubled = w.scale(2);
    let e = realize_with_bound(field, &doubled, height_bound())?;
    if e.terms.is_empty() {
        return Ok(PfisterElement::zero(field, 1));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::Base;
    use crate::witt::pfister_signature;

    fn sig(e: &PfisterElement) -> Vec<i64> {
        pfister_signature(e).unwrap().body.as_sign().unwrap().entries.clone()
    }

    #[test]
    fn examples() {
        let e = realize_sign_pattern(&FieldDesc::Q, &SignVector::new(FieldDesc::Q, vec![2]).unwrap()).unwrap();
        assert_eq!(e.j, 1);
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].1, vec![FieldDesc::Q.parse_elem("-1").unwrap()]);
        let k = FieldDesc::finite_ext(Base::Q, &Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        let w = SignVector::new(k.clone(), vec![2, -2]).unwrap();
        let e = realize_sign_pattern(&k, &w).unwrap();
        assert_eq!(sig(&e), vec![2, -2]);
        let e = realize_sign_pattern(&k, &SignVector::zero(&k).unwrap()).unwrap();
        assert!(e.terms.is_empty());
        let w = SignVector::new(k.clone(), vec![3, -5]).unwrap();
        assert_eq!(sig(&realize_sign_pattern(&k, &w).unwrap()), vec![3, -5]);
        let w = SignVector::new(k.clone(), vec![4, 12]).unwrap();
        let e = realize_sign_pattern(&k, &w).unwrap();
        assert_eq!((e.j, sig(&e)), (2, vec![4, 12]));
        assert!(realize_sign_pattern(&k, &SignVector::new(k.clone(), vec![1, 2]).unwrap()).is_err());
        let e = realize_in_colimit(&k, &SignVector::new(k.clone(), vec![1, 2]).unwrap()).unwrap();
        assert_eq!(sig(&e), vec![2, 4]);
    }

    #[test]
    fn cubic_patterns() {
        let k = FieldDesc::finite_ext(Base::Q, &Polynomial::from_i64(&[-1, -3, 0, 1])).unwrap();
        for i in 0..3 {
            let a = sign_pattern_element(&k, i, 50).unwrap();
            let s = signs_of(&k, &a).unwrap();
            assert_eq!(s.iter().filter(|x| **x < 0).count(), 1);
            assert_eq!(s[i], -1);
        }
        assert!(matches!(sign_pattern_element(&k, 0, 0), Err(Error::SearchExhausted(0))));
    }
}
