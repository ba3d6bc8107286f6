//! Arbitrary-precision rationals and their `"p/q"` string encoding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// `"p/q"` (or `"p"` for integers), decimal-free.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter for a single rational as a string.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Largest `k` with `2^k | n` for nonzero `n`.
pub fn two_adic_valuation(n: i64) -> u32 {
    debug_assert!(n != 0);
    n.trailing_zeros()
}

/// Simplest rational (smallest denominator, then smallest numerator magnitude)
/// in the open interval `(lo, hi)`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "simplest_between needs lo < hi");
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !lo.is_negative() {
        simplest_positive(lo, hi)
    } else {
        -simplest_positive(&-hi, &-lo)
    }
}

// Stern-Brocot descent on 0 <= lo < hi.
fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    let next = fl.clone() + Rational::one();
    if &next < hi {
        return next;
    }
    let a = lo - &fl;
    let b = hi - &fl;
    if a.is_zero() {
        let m = b.recip().floor() + Rational::one();
        return fl + m.recip();
    }
    fl + simplest_positive(&b.recip(), &a.recip()).recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 3)), int(0));
        assert_eq!(simplest_between(&rat(14, 10), &rat(15, 10)), rat(10, 7));
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&int(2), &int(3)), rat(5, 2));
        assert_eq!(simplest_between(&rat(-3, 2), &rat(-1, 2)), int(-1));
        assert_eq!(simplest_between(&int(1), &rat(7, 2)), int(2));
    }
}
