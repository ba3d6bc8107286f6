//! Local and global invariants of rational quadratic forms.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::form::QuadForm;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// A place of the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum QPlace {
    Prime(u64),
    Infinity,
}

/// Squarefree integer in the square class of a nonzero rational.
pub fn squarefree_class(q: &Rational) -> BigInt {
    let n = q.numer() * q.denom();
    let mut s = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factor_integer(&n.abs()) {
        if e % 2 == 1 {
            s *= BigInt::from(p);
        }
    }
    s
}

/// Trial-division factorization.
pub fn factor_integer(n: &BigInt) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            let mut e = 0;
            while (&n % &bp).is_zero() {
                n /= &bp;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n.to_u64().expect("prime factor fits in u64"), 1));
    }
    out
}

fn valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &bp).is_zero() {
        n /= &bp;
        v += 1;
    }
    (v, n)
}

fn legendre(u: &BigInt, p: u64) -> i8 {
    let bp = BigInt::from(p);
    let r = u.mod_floor(&bp);
    if r.is_zero() {
        return 0;
    }
    let e = r.modpow(&BigInt::from((p - 1) / 2), &bp);
    if e.is_one() {
        1
    } else {
        -1
    }
}

/// `(a, b)_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: QPlace) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::SignOfZero);
    }
    let (a, b) = (squarefree_class(a), squarefree_class(b));
    Ok(match place {
        QPlace::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        QPlace::Prime(2) => {
            let (alpha, u) = valuation(&a, 2);
            let (beta, v) = valuation(&b, 2);
            let eps = |x: &BigInt| -> u32 { ((x - 1i32) / 2i32).mod_floor(&BigInt::from(2)).to_u32().unwrap() };
            let omega = |x: &BigInt| -> u32 { ((x * x - 1i32) / 8i32).mod_floor(&BigInt::from(2)).to_u32().unwrap() };
            let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        QPlace::Prime(p) => {
            let (alpha, u) = valuation(&a, p);
            let (beta, v) = valuation(&b, p);
            let mut s: i8 = if (alpha * beta) % 2 == 1 && (p - 1) / 2 % 2 == 1 { -1 } else { 1 };
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    })
}

fn entries(q: &QuadForm) -> Result<Vec<Rational>> {
    q.rationals().ok_or_else(|| Error::FieldMismatch(format!("{} is not Q", q.field)))
}

/// `prod_{i<j} (a_i, a_j)_v`.
pub fn hasse_invariant(q: &QuadForm, place: QPlace) -> Result<i8> {
    let a = entries(q)?;
    let mut s = 1;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            s *= hilbert_symbol(&a[i], &a[j], place)?;
        }
    }
    Ok(s)
}

pub fn discriminant(q: &QuadForm) -> Result<Rational> {
    Ok(entries(q)?.iter().fold(Rational::one(), |acc, x| acc * x))
}

/// Places at which the form can fail to be locally hyperbolic-trivial: the
/// infinite place, 2, and the primes dividing some entry.
pub fn relevant_places(q: &QuadForm) -> Result<Vec<QPlace>> {
    let mut primes = BTreeSet::new();
    primes.insert(2u64);
    for a in entries(q)? {
        for (p, _) in factor_integer(&(a.numer() * a.denom())) {
            primes.insert(p);
        }
    }
    let mut out: Vec<QPlace> = primes.into_iter().map(QPlace::Prime).collect();
    out.push(QPlace::Infinity);
    Ok(out)
}

fn is_local_square(d: &Rational, place: QPlace) -> bool {
    let s = squarefree_class(d);
    match place {
        QPlace::Infinity => s.is_positive(),
        QPlace::Prime(2) => {
            let (v, u) = valuation(&s, 2);
            v % 2 == 0 && u.mod_floor(&BigInt::from(8)) == BigInt::one()
        }
        QPlace::Prime(p) => {
            let (v, u) = valuation(&s, p);
            v % 2 == 0 && legendre(&u, p) == 1
        }
    }
}

/// Local isotropy over the completion at `place`.
pub fn is_isotropic_at(q: &QuadForm, place: QPlace) -> Result<bool> {
    let n = q.rank();
    if place == QPlace::Infinity {
        let a = entries(q)?;
        return Ok(a.iter().any(|x| x.is_positive()) && a.iter().any(|x| x.is_negative()));
    }
    let d = discriminant(q)?;
    let minus_one = Rational::from_integer((-1).into());
    Ok(match n {
        0 | 1 => false,
        2 => is_local_square(&-d, place),
        3 => hilbert_symbol(&minus_one, &-d, place)? == hasse_invariant(q, place)?,
        4 => {
            !is_local_square(&d, place) || hasse_invariant(q, place)? == hilbert_symbol(&minus_one, &minus_one, place)?
        }
        _ => true,
    })
}

/// Isotropy over the rationals by the local-global principle.
pub fn is_isotropic_q(q: &QuadForm) -> Result<bool> {
    let n = q.rank();
    if n <= 1 {
        return Ok(false);
    }
    if n == 2 {
        let d = discriminant(q)?;
        return Ok(squarefree_class(&-d).is_one());
    }
    for place in relevant_places(q)? {
        if !is_isotropic_at(q, place)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn signature_q(q: &QuadForm) -> Result<i64> {
    Ok(entries(q)?.iter().map(|a| if a.is_positive() { 1 } else { -1 }).sum())
}

/// Isometry of rational forms by rank, discriminant, signature and Hasse invariants.
pub fn isometric_q(a: &QuadForm, b: &QuadForm) -> Result<bool> {
    if a.rank() != b.rank() {
        return Ok(false);
    }
    if a.rank() == 0 {
        return Ok(true);
    }
    if squarefree_class(&discriminant(a)?) != squarefree_class(&discriminant(b)?) {
        return Ok(false);
    }
    if signature_q(a)? != signature_q(b)? {
        return Ok(false);
    }
    let mut places = relevant_places(a)?;
    places.extend(relevant_places(b)?);
    places.sort();
    places.dedup();
    for p in places {
        if hasse_invariant(a, p)? != hasse_invariant(b, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn hyperbolic(k: usize) -> QuadForm {
    let mut entries = Vec::new();
    for _ in 0..k {
        entries.push(Rational::one());
        entries.push(-Rational::one());
    }
    QuadForm::from_rationals(&entries).expect("nonzero")
}

/// Witt equivalence of rational forms.
pub fn witt_equivalent_q(a: &QuadForm, b: &QuadForm) -> Result<bool> {
    let (ra, rb) = (a.rank(), b.rank());
    if ra % 2 != rb % 2 {
        return Ok(false);
    }
    let pad = |q: &QuadForm, k: usize| super::form::witt_sum(q, &hyperbolic(k));
    if ra < rb {
        isometric_q(&pad(a, (rb - ra) / 2)?, b)
    } else {
        isometric_q(a, &pad(b, (ra - rb) / 2)?)
    }
}

/// Bound on `|t|` when searching a value `t` represented by `<a0, aj>` with `-t` represented by the rest.
pub const GLUE_SEARCH_BOUND: u64 = 1_000_000;

fn form_of(a: &[BigInt]) -> Result<QuadForm> {
    QuadForm::from_rationals(&a.iter().cloned().map(Rational::from_integer).collect::<Vec<_>>())
}

fn class(n: BigInt) -> BigInt {
    squarefree_class(&Rational::from_integer(n))
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Representatives of the square classes at a place, indexed as by `local_class`.
fn class_representatives(place: QPlace) -> Vec<BigInt> {
    match place {
        QPlace::Infinity => vec![BigInt::one(), -BigInt::one()],
        QPlace::Prime(2) => [1, 2].iter().flat_map(|&v| [1, 3, 5, 7].map(|u| BigInt::from(u * v))).collect(),
        QPlace::Prime(p) => {
            let nr = (2..).find(|&n| legendre(&BigInt::from(n), p) == -1).unwrap();
            let (p, nr) = (BigInt::from(p), BigInt::from(nr));
            vec![BigInt::one(), nr.clone(), p.clone(), nr * p]
        }
    }
}

/// Square class of a nonzero integer at a place.
fn local_class(t: i64, place: QPlace) -> usize {
    match place {
        QPlace::Infinity => usize::from(t < 0),
        QPlace::Prime(p) => {
            let p = p as i128;
            let (mut u, mut v) = (t as i128, 0);
            while u % p == 0 {
                u /= p;
                v ^= 1;
            }
            if p == 2 {
                v * 4 + (u.rem_euclid(8) / 2) as usize
            } else {
                let l = pow_mod(u.rem_euclid(p) as u128, (p as u128 - 1) / 2, p as u128);
                v * 2 + usize::from(l != 1)
            }
        }
    }
}

/// `(<a0, aj, -t>, rest + <t>)`.
fn glue_halves(head: &[BigInt], rest: &[BigInt], t: &BigInt) -> Result<(QuadForm, QuadForm)> {
    let left = form_of(&[head[0].clone(), head[1].clone(), -t])?;
    let right = form_of(&rest.iter().cloned().chain([t.clone()]).collect::<Vec<_>>())?;
    Ok((left, right))
}

/// Squarefree entries of `q'` with `q = H + q'`, for isotropic diagonal `q`.
fn hyperbolic_complement(a: &[BigInt]) -> Result<Vec<BigInt>> {
    match a.len() {
        0 | 1 => Err(Error::Invalid("no hyperbolic plane in rank below two".into())),
        2 => Ok(Vec::new()),
        3 => Ok(vec![class(-(&a[0] * &a[1] * &a[2]))]),
        n => {
            let mut a = a.to_vec();
            a.sort_by_key(|x| x.abs());
            let pairs: Vec<(Vec<BigInt>, Vec<BigInt>)> = (1..n)
                .map(|j| (vec![a[0].clone(), a[j].clone()], (1..n).filter(|&i| i != j).map(|i| a[i].clone()).collect()))
                .collect();
            for (head, rest) in &pairs {
                if is_isotropic_q(&form_of(head)?)? {
                    return Ok(rest.clone());
                }
                if is_isotropic_q(&form_of(rest)?)? {
                    return Ok(head.iter().cloned().chain(hyperbolic_complement(rest)?).collect());
                }
            }
            // <a0, aj> = <t, a0 aj t> and rest = <-t> + q''; first filter t by its classes at the bad places
            let places = relevant_places(&form_of(&a)?)?;
            let mut tables = Vec::new();
            for (head, rest) in &pairs {
                let mut per_place = Vec::new();
                for &v in &places {
                    let mut ok = Vec::new();
                    for t in class_representatives(v) {
                        let (left, right) = glue_halves(head, rest, &t)?;
                        ok.push(is_isotropic_at(&left, v)? && is_isotropic_at(&right, v)?);
                    }
                    per_place.push(ok);
                }
                tables.push(per_place);
            }
            for m in 1..=GLUE_SEARCH_BOUND as i64 {
                for t in [m, -m] {
                    let classes: Vec<usize> = places.iter().map(|&v| local_class(t, v)).collect();
                    for ((head, rest), table) in pairs.iter().zip(&tables) {
                        if !classes.iter().zip(table).all(|(&c, ok)| ok[c]) {
                            continue;
                        }
                        let t = BigInt::from(t);
                        let (left, right) = glue_halves(head, rest, &t)?;
                        if is_isotropic_q(&left)? && is_isotropic_q(&right)? {
                            let first = class(&head[0] * &head[1] * &t);
                            let tail = hyperbolic_complement(&rest.iter().cloned().chain([t]).collect::<Vec<_>>())?;
                            return Ok([first].into_iter().chain(tail).collect());
                        }
                    }
                }
            }
            Err(Error::SearchExhausted(GLUE_SEARCH_BOUND))
        }
    }
}

/// Splits off hyperbolic planes until the form is anisotropic.
pub fn anisotropic_part_q(q: &QuadForm) -> Result<QuadForm> {
    let mut cur = QuadForm::from_rationals(
        &entries(q)?.iter().map(|a| Rational::from_integer(squarefree_class(a))).collect::<Vec<_>>(),
    )?;
    while is_isotropic_q(&cur)? {
        cur = split_hyperbolic_plane(&cur)?;
    }
    let mut e = entries(&cur)?;
    e.sort();
    QuadForm::from_rationals(&e)
}

/// For isotropic `q`, a diagonal `q'` with `q = H + q'`.
fn split_hyperbolic_plane(q: &QuadForm) -> Result<QuadForm> {
    let a: Vec<BigInt> = entries(q)?.iter().map(squarefree_class).collect();
    let n = a.len();
    // an isotropic subform of rank <= 5 always exists; take the smallest
    let sub = (2..=n.min(5))
        .flat_map(|k| subsets(n, k))
        .find_map(|sub| {
            let sq: Vec<BigInt> = sub.iter().map(|&i| a[i].clone()).collect();
            match form_of(&sq).and_then(|f| is_isotropic_q(&f)) {
                Ok(true) => Some(Ok(sub)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .ok_or_else(|| Error::Invalid(format!("{:?} is anisotropic", q.entries)))??;
    let picked: Vec<BigInt> = sub.iter().map(|&i| a[i].clone()).collect();
    let kept = (0..n).filter(|i| !sub.contains(i)).map(|i| a[i].clone());
    form_of(&kept.chain(hyperbolic_complement(&picked)?).collect::<Vec<_>>())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn qf(e: &[i64]) -> QuadForm {
        QuadForm::from_rationals(&e.iter().map(|&x| int(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&int(-1), &int(-1), QPlace::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol(&int(2), &int(3), QPlace::Prime(5)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&int(-1), &int(-1), QPlace::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&int(5), &int(3), QPlace::Prime(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&int(2), &int(5), QPlace::Prime(2)).unwrap(), -1);
    }

    #[test]
    fn product_formula() {
        for a in [-7i64, -3, -2, -1, 2, 3, 5, 6, 10, 15] {
            for b in [-5i64, -1, 2, 3, 7, 14] {
                let mut places: Vec<QPlace> =
                    factor_integer(&BigInt::from(a * b)).into_iter().map(|(p, _)| QPlace::Prime(p)).collect();
                places.push(QPlace::Prime(2));
                places.sort();
                places.dedup();
                places.push(QPlace::Infinity);
                let prod: i8 = places.iter().map(|&v| hilbert_symbol(&int(a), &int(b), v).unwrap()).product();
                assert_eq!(prod, 1, "({a}, {b})");
            }
        }
    }

    #[test]
    fn isotropy_examples() {
        assert!(is_isotropic_q(&qf(&[1, 1, 1, 1, -7])).unwrap());
        assert!(!is_isotropic_q(&qf(&[-5, -1, -4, -6, -6])).unwrap());
        assert!(!is_isotropic_q(&qf(&[1, 2, 3, 5, 7, 11])).unwrap());
        assert!(!is_isotropic_q(&qf(&[1, 1, 1, -7])).unwrap());
        assert!(is_isotropic_q(&qf(&[1, -1])).unwrap());
        assert!(!is_isotropic_q(&qf(&[1, 1, 1])).unwrap());
        assert!(is_isotropic_q(&qf(&[1, 1, -2])).unwrap());
        assert!(!is_isotropic_q(&qf(&[1, 1, -3])).unwrap());
    }

    #[test]
    fn anisotropic_parts() {
        let q = qf(&[1, 1, 1, 1, -7]);
        let a = anisotropic_part_q(&q).unwrap();
        assert!(!is_isotropic_q(&a).unwrap());
        assert!(witt_equivalent_q(&a, &q).unwrap());
        assert_eq!(anisotropic_part_q(&qf(&[1, -1, 3, -3])).unwrap().rank(), 0);
        let b = anisotropic_part_q(&qf(&[2, 3, -5, 7])).unwrap();
        assert!(witt_equivalent_q(&b, &qf(&[2, 3, -5, 7])).unwrap());
    }
}
