//! Cohomology with supports in a finite set of closed points and the localization sequence.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::complex::{assemble, default_support};
use super::scheme::{DualizingData, SchemeSpec};
use crate::abelian::{exact_at, FPAbGroup, IntMatrix, Lattice, Subquotient};
use crate::error::{Error, Result};
use crate::spectrum::{ClosedPoint, Place};

#[derive(Clone, Debug, Serialize)]
pub struct SupportCohomology {
    pub h0_z: FPAbGroup,
    pub h1_z: FPAbGroup,
    pub h0_x: FPAbGroup,
    pub h1_x: FPAbGroup,
    pub h0_u: FPAbGroup,
    pub h1_u: FPAbGroup,
    /// `⊕_z Z^{orderings of k(z)}`.
    pub devissage: FPAbGroup,
    /// Exactness at `H0_Z, H0(X), H0(U), H1_Z, H1(X), H1(U)`.
    pub exact: Vec<(String, bool)>,
}

impl SupportCohomology {
    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|(_, ok)| *ok)
    }

    pub fn devissage_holds(&self) -> bool {
        self.h0_z.is_zero() && self.h1_z == self.devissage
    }
}

fn zeros(rows: usize, cols: usize) -> IntMatrix {
    vec![vec![BigInt::from(0); cols]; rows]
}

fn select_rows(m: &IntMatrix, rows: &[usize]) -> IntMatrix {
    rows.iter().map(|&i| m[i].clone()).collect()
}

/// `target x source` matrix sending basis vector `j` to `e_{picks[j]}`.
fn injection(target: usize, picks: &[usize]) -> IntMatrix {
    let mut m = zeros(target, picks.len());
    for (j, &i) in picks.iter().enumerate() {
        m[i][j] = BigInt::from(1);
    }
    m
}

fn transpose(m: &IntMatrix, cols: usize) -> IntMatrix {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Cohomology of the cochains supported on `z`, with the six-term sequence
/// `0 → H0_Z → H0(X) → H0(U) → H1_Z → H1(X) → H1(U) → 0` checked for exactness
/// on the complexes truncated to a finite support set containing `z`.
pub fn support_cohomology(x: &SchemeSpec, z: &[ClosedPoint], d: &DualizingData) -> Result<SupportCohomology> {
    if x.dimension() != 1 {
        return Err(Error::UnsupportedScheme(format!("support cohomology needs a curve, got {x}")));
    }
    for p in z {
        if p.base() != x.base() {
            return Err(Error::FieldMismatch(format!("point {p} is not a point of {x}")));
        }
    }
    let zset: BTreeSet<Place> = z.iter().cloned().map(Place::Point).collect();
    let mut support = default_support(x, d)?;
    support.extend(zset.iter().cloned());
    let a = assemble(x, d, &support)?;
    let (r, c) = (a.rows.len(), a.cols());
    let zr = a.rows_at(&zset);
    let ur: Vec<usize> = (0..r).filter(|i| !zr.contains(i)).collect();
    let m_u = select_rows(&a.matrix, &ur);
    let m_z = select_rows(&a.matrix, &zr);

    let zero0 = Subquotient::new(Lattice::zero(0), Lattice::zero(0));
    let h0z = Subquotient::new(Lattice::zero(0), Lattice::zero(0));
    let h0x = Subquotient::new(Lattice::kernel(c, &a.matrix), Lattice::zero(c));
    let h0u = Subquotient::new(Lattice::kernel(c, &m_u), Lattice::zero(c));
    let h1z = Subquotient::new(Lattice::full(zr.len()), Lattice::zero(zr.len()));
    let h1x = Subquotient::new(Lattice::full(r), Lattice::image(r, &a.matrix));
    let h1u = Subquotient::new(Lattice::full(ur.len()), Lattice::image(ur.len(), &m_u));

    let into_x = injection(r, &zr);
    let onto_u = transpose(&injection(r, &ur), ur.len());
    let identity = injection(c, &(0..c).collect::<Vec<_>>());
    let spots = [
        ("H0_Z", exact_at(&zero0, &zeros(0, 0), &h0z, &zeros(c, 0), &h0x)),
        ("H0(X)", exact_at(&h0z, &zeros(c, 0), &h0x, &identity, &h0u)),
        ("H0(U)", exact_at(&h0x, &identity, &h0u, &m_z, &h1z)),
        ("H1_Z", exact_at(&h0u, &m_z, &h1z, &into_x, &h1x)),
        ("H1(X)", exact_at(&h1z, &into_x, &h1x, &onto_u, &h1u)),
        ("H1(U)", exact_at(&h1x, &onto_u, &h1u, &zeros(0, ur.len()), &zero0)),
    ];
    let devissage = zset.iter().fold(FPAbGroup::zero(), |acc, p| match p {
        Place::Point(p) => acc.sum(&FPAbGroup::free(p.real_points().len())),
        Place::Infinity => acc,
    });
    Ok(SupportCohomology {
        h0_z: h0z.group(),
        h1_z: h1z.group(),
        h0_x: h0x.group(),
        h1_x: h1x.group(),
        h0_u: h0u.group(),
        h1_u: h1u.group(),
        devissage,
        exact: spots.iter().map(|(n, ok)| (n.to_string(), *ok)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::Base;

    #[test]
    fn examples() {
        let a1 = SchemeSpec::A1(Base::RealClosure);
        let triv = DualizingData::trivial();
        let s = support_cohomology(&a1, &[ClosedPoint::parse("t", Base::RealClosure).unwrap()], &triv).unwrap();
        assert!(s.h0_z.is_zero());
        assert_eq!(s.h1_z, FPAbGroup::free(1));
        assert!(s.is_exact() && s.devissage_holds());
        let s = support_cohomology(&a1, &[], &triv).unwrap();
        assert!(s.h0_z.is_zero() && s.h1_z.is_zero() && s.is_exact());
        let a1q = SchemeSpec::A1(Base::Q);
        let s = support_cohomology(&a1q, &[ClosedPoint::parse("t^2-2", Base::Q).unwrap()], &triv).unwrap();
        assert_eq!(s.h1_z, FPAbGroup::free(2));
        assert!(s.is_exact());
        // U = A^1 minus two points has H0 = Z^3
        let z = [ClosedPoint::parse("t^2-2", Base::Q).unwrap(), ClosedPoint::parse("t^2+1", Base::Q).unwrap()];
        let s = support_cohomology(&a1q, &z, &triv).unwrap();
        assert_eq!(s.h0_u, FPAbGroup::free(3));
        assert!(s.is_exact() && s.devissage_holds());
        let twice = [z[0].clone(), z[0].clone()];
        assert!(support_cohomology(&a1q, &twice, &triv).unwrap().devissage_holds());
        let p1 = SchemeSpec::P1(Base::Q);
        let s = support_cohomology(&p1, &z, &DualizingData::o(1)).unwrap();
        assert!(s.is_exact() && s.devissage_holds());
        assert!(support_cohomology(&SchemeSpec::SpecBase(Base::Q), &[], &triv).is_err());
    }
}
