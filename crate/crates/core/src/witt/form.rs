//! Diagonal quadratic forms and their signatures.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::spectrum::{zeta, BasisToken, Body, FieldDesc, FieldElem, TwistedClass};

/// The diagonal form `<a_1, ..., a_n>`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadForm {
    pub field: FieldDesc,
    pub entries: Vec<FieldElem>,
}

impl QuadForm {
    pub fn new(field: FieldDesc, entries: Vec<FieldElem>) -> Result<Self> {
        for e in &entries {
            field.check(e)?;
        }
        Ok(QuadForm { field, entries })
    }

    pub fn zero(field: &FieldDesc) -> Self {
        QuadForm { field: field.clone(), entries: Vec::new() }
    }

    /// Parses entries written as in [`FieldDesc::parse_elem`].
    pub fn parse(field: &FieldDesc, entries: &[&str]) -> Result<Self> {
        let entries = entries.iter().map(|s| field.parse_elem(s)).collect::<Result<Vec<_>>>()?;
        Ok(QuadForm { field: field.clone(), entries })
    }

    pub fn from_rationals(entries: &[Rational]) -> Result<Self> {
        let f = FieldDesc::Q;
        Ok(QuadForm { entries: entries.iter().map(|q| f.from_rational(q)).collect::<Result<_>>()?, field: f })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn rationals(&self) -> Option<Vec<Rational>> {
        self.entries.iter().map(|e| e.as_rational().cloned()).collect()
    }

    pub fn scale(&self, c: &FieldElem) -> Result<QuadForm> {
        let entries = self.entries.iter().map(|e| self.field.mul(e, c)).collect::<Result<_>>()?;
        Ok(QuadForm { field: self.field.clone(), entries })
    }

    pub fn neg(&self) -> Result<QuadForm> {
        let m = self.field.from_rational(&Rational::from_integer((-1).into()))?;
        self.scale(&m)
    }

    /// Sum of the sign maps of the entries.
    pub fn signature(&self) -> Result<Body> {
        let mut acc = Body::constant(&self.field, 0)?;
        for e in &self.entries {
            acc = acc.add(&zeta(&self.field, e)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "<{}> over {}", parts.join(", "), self.field)
    }
}

impl Serialize for QuadForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadForm", 2)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("entries", &self.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>())?;
        st.end()
    }
}

/// A form with values in a one-dimensional twist `H`.
#[derive(Clone, PartialEq, Eq)]
pub struct TwistedForm {
    pub form: QuadForm,
    pub basis: BasisToken,
}

impl TwistedForm {
    pub fn new(form: QuadForm, basis: BasisToken) -> Self {
        TwistedForm { form, basis }
    }

    pub fn untwisted(form: QuadForm) -> Self {
        TwistedForm { form, basis: BasisToken::unit() }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.form.field
    }
}

impl fmt::Debug for TwistedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊗ {}", self.form, self.basis)
    }
}

impl Serialize for TwistedForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TwistedForm", 3)?;
        st.serialize_field("field", &self.form.field)?;
        st.serialize_field("entries", &self.form.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>())?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}

pub fn witt_sum(a: &QuadForm, b: &QuadForm) -> Result<QuadForm> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field, b.field)));
    }
    let mut entries = a.entries.clone();
    entries.extend(b.entries.iter().cloned());
    Ok(QuadForm { field: a.field.clone(), entries })
}

pub fn witt_product(a: &QuadForm, b: &QuadForm) -> Result<QuadForm> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field, b.field)));
    }
    let mut entries = Vec::with_capacity(a.rank() * b.rank());
    for x in &a.entries {
        for y in &b.entries {
            entries.push(a.field.mul(x, y)?);
        }
    }
    Ok(QuadForm { field: a.field.clone(), entries })
}

/// Signature with the basis token of the form.
pub fn total_signature(q: &TwistedForm) -> Result<TwistedClass> {
    Ok(TwistedClass::new(q.form.field.clone(), q.form.signature()?, q.basis.clone()))
}

/// Symmetric elimination over the rationals.
///
/// Returns the diagonal `d` and an invertible `p` (columns are the new basis)
/// with `p^T g p = diag(d)`.
pub fn diagonalize_with_basis(gram: &[Vec<Rational>]) -> Result<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let n = gram.len();
    if gram.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("Gram matrix must be square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if gram[i][j] != gram[j][i] {
                return Err(Error::Invalid("Gram matrix must be symmetric".into()));
            }
        }
    }
    let mut g: Vec<Vec<Rational>> = gram.to_vec();
    let mut p: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
        .collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if g[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !g[i][i].is_zero()) {
                swap_basis(&mut g, &mut p, k, i);
            } else if let Some(j) = (k + 1..n).find(|&j| !g[k][j].is_zero()) {
                add_basis(&mut g, &mut p, k, j, &Rational::from_integer(1.into()));
            } else if let Some((i, j)) =
                (k + 1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !g[i][j].is_zero())
            {
                add_basis(&mut g, &mut p, i, j, &Rational::from_integer(1.into()));
                swap_basis(&mut g, &mut p, k, i);
            } else {
                return Err(Error::DegenerateForm);
            }
        }
        let pivot = g[k][k].clone();
        if pivot.is_zero() {
            return Err(Error::DegenerateForm);
        }
        for j in k + 1..n {
            if !g[k][j].is_zero() {
                let c = -&g[k][j] / &pivot;
                add_basis(&mut g, &mut p, j, k, &c);
            }
        }
        diag.push(pivot);
    }
    Ok((diag, p))
}

/// `e_i <- e_i + c e_j`, as a congruence on `g`.
fn add_basis(g: &mut [Vec<Rational>], p: &mut [Vec<Rational>], i: usize, j: usize, c: &Rational) {
    let n = g.len();
    for r in 0..n {
        let v = c * &g[r][j];
        g[r][i] += v;
    }
    for r in 0..n {
        let v = c * &g[j][r];
        g[i][r] += v;
    }
    for r in 0..n {
        let v = c * &p[r][j];
        p[r][i] += v;
    }
}

fn swap_basis(g: &mut [Vec<Rational>], p: &mut [Vec<Rational>], i: usize, j: usize) {
    g.swap(i, j);
    for row in g.iter_mut() {
        row.swap(i, j);
    }
    for row in p.iter_mut() {
        row.swap(i, j);
    }
}

/// The diagonal form congruent to a nondegenerate symmetric rational matrix.
pub fn diagonalize(gram: &[Vec<Rational>]) -> Result<QuadForm> {
    let (d, _) = diagonalize_with_basis(gram)?;
    QuadForm::from_rationals(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::spectrum::Base;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn sums_and_products() {
        let a = QuadForm::parse(&FieldDesc::Q, &["1", "2"]).unwrap();
        let b = QuadForm::parse(&FieldDesc::Q, &["1", "3"]).unwrap();
        let p = witt_product(&a, &b).unwrap();
        assert_eq!(p, QuadForm::parse(&FieldDesc::Q, &["1", "3", "2", "6"]).unwrap());
        assert_eq!(witt_sum(&a, &b).unwrap().rank(), 4);
        let c = QuadForm::parse(&FieldDesc::FunctionField(Base::Q), &["t"]).unwrap();
        assert!(witt_sum(&a, &c).is_err());
    }

    #[test]
    fn diagonalization() {
        let (d, p) = diagonalize_with_basis(&m(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d[0].clone() * &d[1] < Rational::zero());
        assert_eq!(p.len(), 2);
        assert_eq!(diagonalize(&m(&[&[2, 0], &[0, 3]])).unwrap(), QuadForm::from_rationals(&[int(2), int(3)]).unwrap());
        assert_eq!(diagonalize(&m(&[&[1, 1], &[1, 1]])).unwrap_err(), Error::DegenerateForm);
        assert_eq!(diagonalize(&m(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]])).unwrap_err(), Error::DegenerateForm);
        let d = diagonalize(&m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap();
        assert_eq!(d.rank(), 3);
    }

    #[test]
    fn signatures() {
        let q = TwistedForm::untwisted(QuadForm::parse(&FieldDesc::Q, &["1", "1"]).unwrap());
        assert_eq!(total_signature(&q).unwrap().body.as_sign().unwrap().entries, vec![2]);
        let h = TwistedForm::untwisted(QuadForm::parse(&FieldDesc::Q, &["1", "-1"]).unwrap());
        assert_eq!(total_signature(&h).unwrap().body.as_sign().unwrap().entries, vec![0]);
        let qt = FieldDesc::FunctionField(Base::Q);
        let t = TwistedForm::untwisted(QuadForm::parse(&qt, &["t"]).unwrap());
        assert_eq!(total_signature(&t).unwrap().body.as_step().unwrap().values(), &[-1, 1]);
    }
}
