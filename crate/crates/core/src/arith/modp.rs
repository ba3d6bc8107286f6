//! Dense polynomials over a small prime field, used by the factorizer.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

/// Coefficients modulo `p`, lowest degree first, no trailing zeros.
pub type PolyP = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31), "odd prime below 2^31 expected");
        Fp { p }
    }

    pub fn reduce_i(&self, c: &num_bigint::BigInt) -> u64 {
        let m = num_bigint::BigInt::from(self.p);
        let r = ((c % &m) + &m) % &m;
        r.try_into().unwrap()
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulm(acc, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn trim(&self, mut a: PolyP) -> PolyP {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let v = (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p).collect();
        self.trim(v)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        self.trim(v)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mulm(x, y)) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn scale(&self, a: &[u64], c: u64) -> PolyP {
        self.trim(a.iter().map(|&x| self.mulm(x, c % self.p)).collect())
    }

    pub fn monic(&self, a: &[u64]) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let db = b.len() - 1;
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), self.trim(r));
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mulm(r[k + db], inv);
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - self.mulm(c, bj)) % self.p;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> PolyP {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> PolyP {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("ext_gcd of zeros"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &[u64]) -> PolyP {
        self.trim(a.iter().enumerate().skip(1).map(|(i, &c)| self.mulm(c, i as u64 % self.p)).collect())
    }

    pub fn powmod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> PolyP {
        let mut acc: PolyP = vec![1];
        let mut b = self.rem(base, m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
            if i + 1 < bits {
                b = self.rem(&self.mul(&b, &b), m);
            }
        }
        self.rem(&acc, m)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x: PolyP = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        let pe = BigUint::from(self.p);
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest, deg));
                break;
            }
            h = self.powmod(&h, &pe, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                out.push((g.clone(), d));
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
            }
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
    pub fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<PolyP> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
        loop {
            let a: PolyP = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.powmod(&a, &e, f);
            let g = self.gcd(&self.sub(&b, &[1]), f);
            if g.len() > 1 && g.len() < f.len() {
                let q = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&q), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<PolyP> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out
    }

    pub fn is_zero_poly(a: &[u64]) -> bool {
        a.iter().all(|c| c.is_zero())
    }
}
