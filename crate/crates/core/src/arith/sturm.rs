//! Sturm sequences and real-root counting.

use num_traits::{Signed, Zero};

use super::poly::Polynomial;
use super::rational::{sign, Rational};
use crate::error::{Error, Result};

/// Sturm chain `p, p', -rem(p, p'), ...`, each term rescaled by a positive constant.
pub fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.clone()];
    if p.is_constant() {
        return chain;
    }
    chain.push(p.derivative());
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let lc = r.leading().unwrap().abs();
        chain.push(r.scale(&-lc.recip()));
    }
    chain
}

fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

pub fn variations_at(chain: &[Polynomial], x: &Rational) -> usize {
    count_changes(chain.iter().map(|q| sign(&q.eval(x))))
}

pub fn variations_at_pos_inf(chain: &[Polynomial]) -> usize {
    count_changes(chain.iter().map(|q| q.sign_at_pos_inf()))
}

pub fn variations_at_neg_inf(chain: &[Polynomial]) -> usize {
    count_changes(chain.iter().map(|q| q.sign_at_neg_inf()))
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_count(p: &Polynomial, lo: &Rational, hi: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    if p.eval(lo).is_zero() || p.eval(hi).is_zero() {
        return Err(Error::EndpointRoot);
    }
    let chain = sturm_chain(p);
    Ok(count_in(&chain, lo, hi))
}

/// Same as [`sturm_count`] with a precomputed chain and unchecked endpoints.
pub(crate) fn count_in(chain: &[Polynomial], lo: &Rational, hi: &Rational) -> usize {
    variations_at(chain, lo).saturating_sub(variations_at(chain, hi))
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn real_root_count(p: &Polynomial) -> usize {
    let chain = sturm_chain(p);
    variations_at_neg_inf(&chain).saturating_sub(variations_at_pos_inf(&chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn counts_from_the_examples() {
        let p = Polynomial::from_i64(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &int(0), &int(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &int(-2), &int(2)).unwrap(), 2);
        let q = &p * &Polynomial::from_i64(&[-3, 0, 1]);
        assert_eq!(sturm_count(&q, &int(1), &int(2)).unwrap(), 2);
    }

    #[test]
    fn endpoint_root_is_an_error() {
        let p = Polynomial::from_i64(&[-1, 0, 1]);
        assert_eq!(sturm_count(&p, &int(1), &int(3)), Err(Error::EndpointRoot));
        assert_eq!(sturm_count(&p, &int(3), &int(2)), Err(Error::EmptyInterval));
        assert_eq!(sturm_count(&Polynomial::zero(), &int(0), &int(1)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn total_counts() {
        assert_eq!(real_root_count(&Polynomial::from_i64(&[0, -2, 0, 1])), 3);
        assert_eq!(real_root_count(&Polynomial::from_i64(&[1, 0, 1])), 0);
        assert_eq!(real_root_count(&Polynomial::from_i64(&[-1, -3, 0, 1])), 3);
    }
}
