//! Independent reference computations used by the substrate battery.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{int, Polynomial, Rational};

fn sign_variations(p: &Polynomial) -> usize {
    let signs: Vec<bool> = p.coeffs().iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(1 + y)^n p((a + b y) / (1 + y))`, whose positive roots correspond to the roots of `p` in `(a, b)`.
fn moebius(p: &Polynomial, a: &Rational, b: &Rational) -> Polynomial {
    let n = p.deg();
    let num = Polynomial::new(vec![a.clone(), b.clone()]);
    let den = Polynomial::new(vec![int(1), int(1)]);
    let mut acc = Polynomial::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        let term = &num.pow(k as u32) * &den.pow((n - k) as u32);
        acc = &acc + &term.scale(c);
    }
    acc
}

/// Number of distinct real roots of `p` in the open interval `(a, b)` by
/// Descartes' rule of signs with bisection.
pub fn descartes_count(p: &Polynomial, a: &Rational, b: &Rational) -> usize {
    let p = p.squarefree_part();
    if p.deg() == 0 || a >= b {
        return 0;
    }
    let mut count = 0;
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        match sign_variations(&moebius(&p, &lo, &hi)) {
            0 => {}
            1 => count += 1,
            _ => {
                let mid = (&lo + &hi) / int(2);
                if p.eval(&mid).is_zero() {
                    count += 1;
                }
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    count
}

/// All real roots: Descartes count on `(-B, B)` with the Cauchy bound `B`.
pub fn descartes_real_roots(p: &Polynomial) -> usize {
    let p = p.squarefree_part();
    if p.deg() == 0 {
        return 0;
    }
    let lead = p.leading().expect("nonzero").abs();
    let bound = int(1) + p.coeffs().iter().map(|c| c.abs() / &lead).fold(int(0), |m, c| if c > m { c } else { m });
    descartes_count(&p, &-bound.clone(), &bound)
}

fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// A nonzero integer vector with `sum a_i x_i^2 = 0` and `|x_i| <= bound` for
/// all but the last coordinate, which is solved for exactly.
pub fn isotropic_search(a: &[i64], bound: i64) -> Option<Vec<i64>> {
    let n = a.len();
    if n < 2 {
        return None;
    }
    let mut x = vec![-bound; n - 1];
    loop {
        let s: i64 = x.iter().zip(a).map(|(xi, ai)| ai * xi * xi).sum();
        let last = a[n - 1];
        if s == 0 && x.iter().any(|v| *v != 0) {
            let mut v = x.clone();
            v.push(0);
            return Some(v);
        }
        if s != 0 && (-s) % last == 0 {
            if let Some(r) = is_square(&BigInt::from(-s / last)) {
                let mut v = x.clone();
                v.push(i64::try_from(r).expect("small"));
                return Some(v);
            }
        }
        let mut i = n - 1;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if x[i] < bound {
                x[i] += 1;
                break;
            }
            x[i] = -bound;
        }
    }
}

/// Rational roots of an integer polynomial by the rational root test.
pub fn has_rational_root(p: &Polynomial) -> bool {
    let c = p.primitive_integer();
    if c[0].is_zero() {
        return true;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let mut out = Vec::new();
        let mut d = BigInt::from(1);
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                out.push(d.clone());
                out.push(&n / &d);
            }
            d += 1;
        }
        out
    };
    for num in divisors(&c[0]) {
        for den in divisors(c.last().expect("nonzero")) {
            for s in [1, -1] {
                let q = Rational::new(BigInt::from(s) * &num, den.clone());
                if p.eval(&q).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles() {
        let p = Polynomial::from_i64(&[-2, 0, 1]);
        assert_eq!(descartes_real_roots(&p), 2);
        assert_eq!(descartes_count(&p, &int(0), &int(2)), 1);
        assert_eq!(descartes_real_roots(&Polynomial::from_i64(&[-1, -3, 0, 1])), 3);
        assert_eq!(descartes_real_roots(&Polynomial::from_i64(&[1, 0, 1])), 0);
        assert_eq!(descartes_count(&Polynomial::from_i64(&[0, -1, 0, 1]), &int(-2), &int(2)), 3);
        assert!(isotropic_search(&[1, 1, -2], 5).is_some());
        assert!(isotropic_search(&[1, 1, 1], 10).is_none());
        assert!(has_rational_root(&Polynomial::from_i64(&[-1, 0, 4])));
        assert!(!has_rational_root(&Polynomial::from_i64(&[-2, 0, 1])));
    }
}
