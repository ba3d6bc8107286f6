//! Factorization of rational polynomials into monic irreducibles.
//!
//! Squarefree decomposition (Yun), then for each squarefree part a
//! Zassenhaus-style factorization: factor modulo a small prime, Hensel-lift
//! to a power exceeding the Mignotte bound and recombine lifted factors by
//! trial division over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;

use super::modp::{Fp, PolyP};
use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Leading coefficient of the input.
    pub content: Rational,
    /// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.content.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

pub fn factor_over_q(p: &Polynomial) -> Result<Factorization> {
    let content = p.leading().cloned().ok_or(Error::ZeroPolynomial)?;
    let mut factors = Vec::new();
    for (s, e) in p.squarefree_decomposition() {
        for f in factor_squarefree(&s) {
            factors.push((f, e));
        }
    }
    factors.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.cmp(&b.0)));
    Ok(Factorization { content, factors })
}

pub fn is_irreducible(p: &Polynomial) -> bool {
    match p.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => factor_over_q(p).is_ok_and(|f| f.factors.len() == 1 && f.factors[0].1 == 1),
    }
}

type ZPoly = Vec<BigInt>;

fn trim_z(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn mul_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(out)
}

fn modulo(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim_z(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim_z(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_z(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn to_p(fp: &Fp, a: &[BigInt]) -> PolyP {
    fp.trim(a.iter().map(|c| fp.reduce_i(c)).collect())
}

fn factor_squarefree(s: &Polynomial) -> Vec<Polynomial> {
    match s.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![s.monic()],
        _ => {}
    }
    let f = s.primitive_integer();
    zassenhaus(&f).into_iter().map(|g| Polynomial::from_integers(&g).monic()).collect()
}

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Irreducible primitive factors of a primitive squarefree integer polynomial of degree >= 2.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    let mut best: Option<(Fp, Vec<PolyP>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let fp = Fp::new(p);
        if fp.reduce_i(&lc) == 0 {
            continue;
        }
        let fbar = to_p(&fp, f);
        if fp.gcd(&fbar, &fp.derivative(&fbar)).len() != 1 {
            continue;
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(p);
        let facs = fp.factor_squarefree(&fp.monic(&fbar), &mut rng);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((fp, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (fp, facs) = best.expect("no good prime among the first forty");

    // Mignotte-style bound on coefficients of lc * (any factor)
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + BigInt::one();
    let bound = (BigInt::one() << n) * norm2 * lc.abs();
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut m = p.clone();
    while m <= &bound * 2 {
        m *= &p;
        k += 1;
    }
    let lifted = multi_lift(&fp, f, &facs, k);
    recombine(f, lifted, &m)
}

/// Lifts `f = lc * prod facs (mod p)` to monic factors modulo `p^k`.
fn multi_lift(fp: &Fp, f: &[BigInt], facs: &[PolyP], k: u32) -> Vec<ZPoly> {
    let lc = f.last().unwrap().clone();
    let p = BigInt::from(fp.p);
    let m = p.pow(k);
    if facs.len() == 1 {
        let inv = lc.modinv(&m).expect("leading coefficient invertible mod p^k");
        return vec![modulo(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &m)];
    }
    let (a, b) = facs.split_at(facs.len() / 2);
    let g0 = a.iter().fold(vec![1u64], |acc, x| fp.mul(&acc, x));
    let h0 = fp.scale(&b.iter().fold(vec![1u64], |acc, x| fp.mul(&acc, x)), fp.reduce_i(&lc));
    let (g, h) = hensel_pair(fp, f, &g0, &h0, k);
    let mut out = multi_lift(fp, &g, a, k);
    out.extend(multi_lift(fp, &h, b, k));
    out
}

/// Given `f = g0 h0 (mod p)` with `g0` monic and coprime to `h0`, returns
/// `(g, h)` with `f = g h (mod p^k)`, `g` monic, `g = g0` and `h = h0` mod `p`.
fn hensel_pair(fp: &Fp, f: &[BigInt], g0: &[u64], h0: &[u64], k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = fp.ext_gcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(fp.p);
    let mut g = to_z(g0);
    let mut h = to_z(h0);
    let mut m = p.clone();
    for _ in 1..k {
        let gh = mul_z(&g, &h);
        let n = f.len().max(gh.len());
        let e: ZPoly = (0..n)
            .map(|i| {
                let d = f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
                debug_assert!((&d % &m).is_zero());
                d / &m
            })
            .collect();
        let ebar = to_p(fp, &e);
        let (q, r) = fp.divrem(&fp.mul(&ebar, &t), g0);
        let dh = fp.add(&fp.mul(&ebar, &s), &fp.mul(&q, h0));
        let next = &m * &p;
        g = modulo(
            &(0..g.len().max(r.len()))
                .map(|i| g.get(i).cloned().unwrap_or_default() + &m * BigInt::from(*r.get(i).unwrap_or(&0)))
                .collect::<Vec<_>>(),
            &next,
        );
        h = modulo(
            &(0..h.len().max(dh.len()))
                .map(|i| h.get(i).cloned().unwrap_or_default() + &m * BigInt::from(*dh.get(i).unwrap_or(&0)))
                .collect::<Vec<_>>(),
            &next,
        );
        m = next;
    }
    (g, h)
}

fn primitive_z(a: &[BigInt]) -> ZPoly {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// Exact quotient `a / b` over the integers, if it exists.
fn div_exact_z(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim_z(q))
    } else {
        None
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn recombine(f: &[BigInt], mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut d = 1;
    while 2 * d <= lifted.len() {
        let mut found = false;
        for subset in combinations(lifted.len(), d) {
            let lc = rest.last().unwrap().clone();
            let mut g = vec![lc];
            for &i in &subset {
                g = modulo(&mul_z(&g, &lifted[i]), m);
            }
            let g = primitive_z(&symmetric(&g, m));
            if !rest[0].is_zero() && !g[0].is_zero() && !(&rest[0] % &g[0]).is_zero() {
                continue;
            }
            if let Some(q) = div_exact_z(&rest, &g) {
                out.push(g);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            d += 1;
        }
    }
    if rest.len() > 1 {
        out.push(primitive_z(&rest));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn examples() {
        let f = factor_over_q(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let f = factor_over_q(&p(&[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[1, 0, 1]), 1)]);
        let f = factor_over_q(&p(&[6, 0, -5, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-3, 0, 1]), 1), (p(&[-2, 0, 1]), 1)]);
        assert_eq!(f.expand(), p(&[6, 0, -5, 0, 1]));
    }

    #[test]
    fn swinnerton_dyer_like_and_multiplicities() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])));
        let g = &(&p(&[1, 0, -10, 0, 1]) * &p(&[-3, 2]).pow(2)) * &p(&[5, 0, 0, 7]);
        let f = factor_over_q(&g).unwrap();
        assert_eq!(f.expand(), g);
        assert_eq!(f.factors.len(), 3);
        assert!(f.factors.iter().all(|(h, _)| is_irreducible(h)));
    }

    #[test]
    fn combination_enumeration() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 1).len(), 5);
    }

    #[test]
    fn zero_is_an_error() {
        assert_eq!(factor_over_q(&Polynomial::zero()).unwrap_err(), Error::ZeroPolynomial);
    }
}
