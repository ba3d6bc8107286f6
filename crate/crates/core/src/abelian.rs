//! Finitely presented abelian groups, integer lattices and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn matrix_from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FPAbGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl FPAbGroup {
    pub fn zero() -> Self {
        FPAbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FPAbGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::zero(),
            _ => FPAbGroup { rank: 0, torsion: vec![n] },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// The group `Z^generators / (row span of relations)`.
    pub fn presented(generators: usize, relations: &IntMatrix) -> Self {
        let diag = smith_diagonal(relations);
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion = diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(|d| d.to_u64().expect("invariant factor fits in u64"))
            .collect();
        FPAbGroup { rank: generators - nonzero, torsion }
    }

    /// Cokernel of `m: Z^cols -> Z^rows`.
    pub fn cokernel(rows: usize, m: &IntMatrix) -> Self {
        Subquotient::new(Lattice::full(rows), Lattice::image(rows, m)).group()
    }

    /// Direct sum.
    pub fn sum(&self, other: &FPAbGroup) -> Self {
        let mut rels: IntMatrix = Vec::new();
        let n = self.rank + self.torsion.len() + other.rank + other.torsion.len();
        let mut col = 0;
        for g in [self, other] {
            col += g.rank;
            for &d in &g.torsion {
                let mut r = vec![BigInt::zero(); n];
                r[col] = BigInt::from(d);
                rels.push(r);
                col += 1;
            }
        }
        Self::presented(n, &rels)
    }
}

impl fmt::Display for FPAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for FPAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn compare_groups(a: &FPAbGroup, b: &FPAbGroup) -> bool {
    a.rank == b.rank && a.torsion == b.torsion
}

/// Invariant factors of an integer matrix, as a diagonal including zeros,
/// of length `min(rows, cols)`.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a = m.clone();
    let n = rows.min(cols);
    for t in 0..n {
        // pivot: smallest nonzero absolute value in the trailing block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_diagonal(&a, n);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &q * &a[i][t];
                        a[i][j] -= v;
                    }
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any entry not divisible by the pivot into row t
            let mut bad = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &p).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    finish_diagonal(&a, n)
}

fn finish_diagonal(a: &IntMatrix, n: usize) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = (0..n).map(|i| a[i][i].abs()).collect();
    // the elimination above already yields a divisibility chain on the nonzero part;
    // zeros are moved to the end
    d.sort_by(|x, y| match (x.is_zero(), y.is_zero()) {
        (true, true) => std::cmp::Ordering::Equal,
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        _ => x.cmp(y),
    });
    d
}

/// Row-style Hermite normal form: echelon rows with positive pivots, entries
/// above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hnf_rows(mut rows: IntMatrix, width: usize) -> IntMatrix {
    let mut out: IntMatrix = Vec::new();
    let mut col = 0;
    while col < width && !rows.is_empty() {
        // gcd-combine all rows with a nonzero entry in this column into one pivot row
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let pi = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let pivot_row = rows[pi].clone();
            for &i in &nz {
                if i != pi {
                    let q = rows[i][col].div_floor(&pivot_row[col]);
                    for j in col..width {
                        let v = &q * &pivot_row[j];
                        rows[i][j] -= v;
                    }
                }
            }
        }
        if let Some(pi) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            let mut r = rows.swap_remove(pi);
            if r[col].is_negative() {
                for x in r.iter_mut() {
                    *x = -&*x;
                }
            }
            out.push(r);
        }
        col += 1;
    }
    // reduce above pivots
    for k in 0..out.len() {
        let pc = (0..width).find(|&j| !out[k][j].is_zero()).unwrap();
        for i in 0..k {
            let q = out[i][pc].div_floor(&out[k][pc]);
            if !q.is_zero() {
                for j in 0..width {
                    let v = &q * &out[k][j];
                    out[i][j] -= v;
                }
            }
        }
    }
    out
}

/// A sublattice of `Z^n`, stored by its Hermite basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    pub n: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn from_generators(n: usize, gens: IntMatrix) -> Self {
        Lattice { n, basis: hnf_rows(gens, n) }
    }

    pub fn zero(n: usize) -> Self {
        Lattice { n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        let id =
            (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        Lattice { n, basis: id }
    }

    /// Column span of `m` (`rows x cols`), a lattice in `Z^rows`.
    pub fn image(rows: usize, m: &IntMatrix) -> Self {
        let cols = m.first().map_or(0, |r| r.len());
        let gens = (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect();
        Self::from_generators(rows, gens)
    }

    /// `{x in Z^cols : m x = 0}`.
    pub fn kernel(cols: usize, m: &IntMatrix) -> Self {
        let rows = m.len();
        // rows of [m^T | I]; unimodular row reduction on the left block
        let aug: IntMatrix = (0..cols)
            .map(|j| {
                let mut r: Vec<BigInt> = (0..rows).map(|i| m[i][j].clone()).collect();
                r.extend((0..cols).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
                r
            })
            .collect();
        let h = hnf_rows(aug, rows + cols);
        let gens =
            h.into_iter().filter(|r| r[..rows].iter().all(|x| x.is_zero())).map(|r| r[rows..].to_vec()).collect();
        Self::from_generators(cols, gens)
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut r = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let pc = (0..self.n).find(|&j| !b[j].is_zero()).unwrap();
            let (q, rem) = r[pc].div_rem(&b[pc]);
            if !rem.is_zero() {
                return None;
            }
            for j in 0..self.n {
                let x = &q * &b[j];
                r[j] -= x;
            }
            coords.push(q);
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Self::from_generators(self.n, gens)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        // x = A a = B b  <=>  [A^T | -B^T] (a, b) = 0
        let (ka, kb) = (self.rank(), other.rank());
        let m: IntMatrix = (0..self.n)
            .map(|i| {
                let mut row: Vec<BigInt> = self.basis.iter().map(|v| v[i].clone()).collect();
                row.extend(other.basis.iter().map(|v| -&v[i]));
                row
            })
            .collect();
        let k = Lattice::kernel(ka + kb, &m);
        let gens = k
            .basis
            .iter()
            .map(|c| {
                let mut x = vec![BigInt::zero(); self.n];
                for (coef, v) in c[..ka].iter().zip(&self.basis) {
                    for j in 0..self.n {
                        x[j] += coef * &v[j];
                    }
                }
                x
            })
            .collect();
        Self::from_generators(self.n, gens)
    }

    /// Image under `m: Z^n -> Z^rows`.
    pub fn map(&self, rows: usize, m: &IntMatrix) -> Lattice {
        let gens = self.basis.iter().map(|v| apply(m, v)).collect();
        Self::from_generators(rows, gens)
    }

    /// `{x in Z^cols : m x in target}`.
    pub fn preimage(cols: usize, m: &IntMatrix, target: &Lattice) -> Lattice {
        // m x = T c  <=>  [m | -T^T] (x, c) = 0
        let rows = m.len();
        let kt = target.rank();
        let big: IntMatrix = (0..rows)
            .map(|i| {
                let mut row = m[i].clone();
                row.extend(target.basis.iter().map(|v| -&v[i]));
                row
            })
            .collect();
        let k = Lattice::kernel(cols + kt, &big);
        let gens = k.basis.iter().map(|c| c[..cols].to_vec()).collect();
        Self::from_generators(cols, gens)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(n={}, {:?})", self.n, self.basis)
    }
}

pub fn apply(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// `cycles / boundaries` inside a common ambient `Z^n`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub cycles: Lattice,
    pub boundaries: Lattice,
}

impl Subquotient {
    pub fn new(cycles: Lattice, boundaries: Lattice) -> Self {
        debug_assert!(cycles.contains_lattice(&boundaries));
        Subquotient { cycles, boundaries }
    }

    /// Homology at the middle of `Z^a --f--> Z^b --g--> Z^c`.
    pub fn homology(b: usize, f: &IntMatrix, g: &IntMatrix) -> Self {
        Subquotient::new(Lattice::kernel(b, g), Lattice::image(b, f))
    }

    pub fn group(&self) -> FPAbGroup {
        let k = self.cycles.rank();
        let rels: IntMatrix =
            self.boundaries.basis().iter().map(|v| self.cycles.coordinates(v).expect("boundary is a cycle")).collect();
        FPAbGroup::presented(k, &rels)
    }
}

/// Exactness of `h1 --f--> h2 --g--> h3` where the maps are induced by the
/// ambient matrices `f` and `g`.
pub fn exact_at(h1: &Subquotient, f: &IntMatrix, h2: &Subquotient, g: &IntMatrix, h3: &Subquotient) -> bool {
    let n2 = h2.cycles.n;
    let ker_g = Lattice::preimage(n2, g, &h3.boundaries).intersect(&h2.cycles);
    let im_f = h1.cycles.map(n2, f).sum(&h2.boundaries);
    ker_g == im_f
}

/// An induced map is well defined when it sends cycles to cycles and boundaries to boundaries.
pub fn well_defined(h1: &Subquotient, f: &IntMatrix, h2: &Subquotient) -> bool {
    let n2 = h2.cycles.n;
    h2.cycles.contains_lattice(&h1.cycles.map(n2, f)) && h2.boundaries.contains_lattice(&h1.boundaries.map(n2, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_examples() {
        let d = smith_diagonal(&matrix_from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = smith_diagonal(&matrix_from_i64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(FPAbGroup::presented(2, &matrix_from_i64(&[vec![2, 0], vec![0, 3]])), FPAbGroup::cyclic(6));
    }

    #[test]
    fn cokernels() {
        assert_eq!(FPAbGroup::cokernel(1, &matrix_from_i64(&[vec![2]])), FPAbGroup::cyclic(2));
        assert_eq!(FPAbGroup::cokernel(2, &matrix_from_i64(&[vec![1], vec![-1]])), FPAbGroup::free(1));
        assert_eq!(FPAbGroup::cokernel(1, &matrix_from_i64(&[vec![0]])), FPAbGroup::free(1));
        assert_eq!(FPAbGroup::cokernel(0, &Vec::new()), FPAbGroup::zero());
    }

    #[test]
    fn kernels_and_lattices() {
        let m = matrix_from_i64(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let k = Lattice::kernel(3, &m);
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&[1.into(), (-1).into(), 1.into()]));
        let a = Lattice::from_generators(2, matrix_from_i64(&[vec![2, 0], vec![0, 3]]));
        let b = Lattice::from_generators(2, matrix_from_i64(&[vec![3, 0], vec![0, 2]]));
        let i = a.intersect(&b);
        assert_eq!(i, Lattice::from_generators(2, matrix_from_i64(&[vec![6, 0], vec![0, 6]])));
        assert_eq!(a.sum(&b), Lattice::full(2));
        let p = Lattice::preimage(
            1,
            &matrix_from_i64(&[vec![3]]),
            &Lattice::from_generators(1, matrix_from_i64(&[vec![2]])),
        );
        assert_eq!(p, Lattice::from_generators(1, matrix_from_i64(&[vec![2]])));
    }

    #[test]
    fn homology_of_twisted_circle() {
        // one vertex, one edge, boundary 2
        let f = matrix_from_i64(&[vec![2]]);
        let h0 = Subquotient::homology(1, &f, &Vec::new());
        assert_eq!(h0.group(), FPAbGroup::cyclic(2));
        let z: IntMatrix = vec![vec![]];
        let h1 = Subquotient::homology(1, &z, &f);
        assert_eq!(h1.group(), FPAbGroup::zero());
    }

    #[test]
    fn direct_sums() {
        let g = FPAbGroup::cyclic(2).sum(&FPAbGroup::cyclic(3));
        assert_eq!(g, FPAbGroup::cyclic(6));
        assert!(compare_groups(&FPAbGroup::free(1), &FPAbGroup::free(1)));
        assert!(!compare_groups(&FPAbGroup::free(1), &FPAbGroup::free(1).sum(&FPAbGroup::cyclic(2))));
    }
}
